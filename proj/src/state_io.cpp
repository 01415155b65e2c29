#include "sepvol/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sepvol/error.hpp"

namespace sepvol::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidState, std::string("malformed JSON: ") + e.what());
  }
}

Dims parse_dims(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2 ||
      !doc["dims"][0].is_number_integer() || !doc["dims"][1].is_number_integer()) {
    throw Error(ErrorCode::InvalidState, "\"dims\" must be an array of two integers");
  }
  Dims dims{doc["dims"][0].get<int>(), doc["dims"][1].get<int>()};
  validate_dims(dims, static_cast<int>(mat::kMaxDimension));
  return dims;
}

mat::ComplexVector parse_entries(const json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::InvalidState, std::string("missing array \"") + key + "\"");
  }
  const json& arr = doc[key];
  if (arr.size() != expected) {
    throw Error(ErrorCode::InvalidState, std::string("\"") + key + "\" has " + std::to_string(arr.size()) +
                                             " entries, expected " + std::to_string(expected));
  }
  mat::ComplexVector out;
  out.reserve(expected);
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::InvalidState, std::string("entries of \"") + key + "\" must be [re, im] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json entries_to_json(std::span<const mat::complex> entries) {
  json arr = json::array();
  for (const mat::complex& z : entries) arr.push_back({z.real(), z.imag()});
  return arr;
}

}  // namespace

DensityMatrix parse_density_matrix(const std::string& text) {
  const json doc = parse_json(text);
  const Dims dims = parse_dims(doc);
  const auto n = static_cast<std::size_t>(dims.total());
  return DensityMatrix::validated(dims, mat::ComplexMatrix(n, n, parse_entries(doc, "matrix", n * n)));
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_density_matrix(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

PureState parse_pure_state(const std::string& text) {
  const json doc = parse_json(text);
  const Dims dims = parse_dims(doc);
  PureState state{dims, parse_entries(doc, "vector", static_cast<std::size_t>(dims.total()))};
  if (std::abs(mat::norm(state.vector) - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized, "pure state vector must have unit norm");
  }
  return state;
}

PureState read_pure_state(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_pure_state(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::string format_density_matrix(const DensityMatrix& rho) {
  json doc;
  doc["dims"] = {rho.dims().first, rho.dims().second};
  doc["matrix"] = entries_to_json(rho.matrix().entries());
  return doc.dump() + "\n";
}

std::string format_pure_state(const PureState& state) {
  json doc;
  doc["dims"] = {state.dims.first, state.dims.second};
  doc["vector"] = entries_to_json(state.vector);
  return doc.dump() + "\n";
}

}  // namespace sepvol::io
