#include <doctest.h>

#include <cmath>
#include <string>

#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"
#include "sepvol/state_io.hpp"

using namespace sepvol;

namespace {

std::string fixture(const std::string& name) { return std::string(SEPVOL_FIXTURE_DIR) + "/" + name; }

ErrorCode read_error(const std::string& name) {
  try {
    io::read_density_matrix(fixture(name));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(name) != std::string::npos);
    return e.code();
  }
  FAIL("expected an error for " << name);
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("reads the singlet fixture") {
  const auto rho = io::read_density_matrix(fixture("singlet.json"));
  CHECK(rho.dims() == Dims{2, 2});
  CHECK(rho.matrix()(1, 2).real() == doctest::Approx(-0.5));
  CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.5));
  const auto psi = io::read_pure_state(fixture("singlet_pure.json"));
  CHECK(psi.vector.size() == 4);
  CHECK(psi.vector[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("rejects malformed states and names the file") {
  CHECK(read_error("non_hermitian.json") == ErrorCode::InvalidState);
  CHECK(read_error("bad_trace.json") == ErrorCode::InvalidState);
  CHECK(read_error("truncated.json") == ErrorCode::InvalidState);
  CHECK(read_error("does_not_exist.json") == ErrorCode::Io);
  CHECK_THROWS_AS(io::parse_density_matrix("{\"dims\": [2], \"matrix\": []}"), Error);
  CHECK_THROWS_AS(io::parse_density_matrix("not json"), Error);
  CHECK_THROWS_AS(io::parse_pure_state("{\"dims\": [2, 2], \"vector\": [[1,0],[1,0],[0,0],[0,0]]}"), Error);
}

TEST_CASE("density matrices round-trip bit-exactly") {
  rng::SeededStream s(51, 0);
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const auto rho = rng::sample_density_matrix(d, s);
    const auto back = io::parse_density_matrix(io::format_density_matrix(rho));
    CHECK(back.dims() == d);
    CHECK(back.matrix() == rho.matrix());
  }
  const io::PureState psi{{2, 2}, quantum::singlet()};
  const auto back = io::parse_pure_state(io::format_pure_state(psi));
  CHECK(back.vector == psi.vector);
}
