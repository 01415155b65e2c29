#include "sepvol/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "sepvol/bounds.hpp"
#include "sepvol/error.hpp"
#include "sepvol/experiments.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/report.hpp"
#include "sepvol/state_io.hpp"

#ifndef SEPVOL_VERSION
#define SEPVOL_VERSION "0.0.0"
#endif

namespace sepvol::cli {

namespace {

using report::Cell;
using report::Table;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string dims_text = "2x2";
  std::vector<std::string> dims_list;
  std::uint64_t samples = 0;
  std::string seed_text;
  int workers = 1;
  int bins = 0;
  std::vector<double> q_list{1.0, 2.0, 3.0, 10.0};
  std::string output_path;
  std::string format = "csv";
  std::optional<double> mix;
  bool fit = false;
  std::string input_path;
  std::string pure_path;
};

struct Resolved {
  Dims dims;
  std::optional<std::uint64_t> seed;
  RunOptions run() const { return RunOptions{seed.value_or(0), workers}; }
  int workers = 1;
};

std::uint64_t require_seed(const Resolved& r, const std::string& command) {
  if (!r.seed) throw UsageError(command + ": --seed is required");
  return *r.seed;
}

Cell empty() { return std::string{}; }

Cell dims_cell(Dims d) { return d.to_string(); }

Table estimate_table(const std::vector<experiments::VolumeEstimate>& estimates) {
  Table t{{"dims", "N", "n", "hits", "p_hat", "stderr", "label"}, {}};
  for (const auto& e : estimates) {
    t.add_row({dims_cell(e.dims), std::int64_t{e.dims.total()}, e.n, e.hits, e.p_hat, e.std_error,
               std::string(e.label())});
  }
  return t;
}

Table cmd_estimate(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  experiments::VolumeOptions opt;
  opt.identity_mixture = c.mix;
  return estimate_table({experiments::estimate_ppt_volume(r.dims, c.samples, r.run(), opt)});
}

Table cmd_scan(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  std::vector<Dims> dims;
  for (const auto& text : c.dims_list) dims.push_back(parse_dims(text));
  const auto estimates = experiments::scan_dimensions(dims, c.samples, r.run());

  Table t{{"record", "dims", "N", "n", "hits", "p_hat", "stderr", "label", "prefactor", "rate", "rss"}, {}};
  for (const auto& e : estimates) {
    t.add_row({std::string("estimate"), dims_cell(e.dims), std::int64_t{e.dims.total()}, e.n, e.hits, e.p_hat,
               e.std_error, std::string(e.label()), empty(), empty(), empty()});
  }
  if (c.fit) {
    const auto f = experiments::fit_exponential(estimates);
    t.add_row({std::string("fit"), empty(), empty(), empty(), empty(), empty(), empty(), empty(), f.prefactor,
               f.rate, f.rss});
  }
  return t;
}

Table conditional_table(const std::string& stat, const experiments::BinnedConditional& b) {
  Table t{{stat + "_lo", stat + "_hi", "count", "ppt_count", "ppt_fraction", "mean_t"}, {}};
  for (const auto& bin : b.bins) {
    t.add_row({bin.lo, bin.hi, bin.count, bin.ppt_count, bin.ppt_fraction(), bin.mean_t()});
  }
  return t;
}

Table cmd_conditional_r(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  const int bins = c.bins > 0 ? c.bins : experiments::default_participation_bins(r.dims);
  return conditional_table("r", experiments::conditional_by_participation(r.dims, c.samples, bins, r.run()));
}

Table cmd_dist_r(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  const int bins = c.bins > 0 ? c.bins : experiments::default_participation_bins(r.dims);
  const auto h = experiments::distribution_of_participation(r.dims, c.samples, bins, r.run());
  Table t{{"r_lo", "r_hi", "count", "density", "analytic_density"}, {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    Cell analytic = empty();
    if (r.dims.total() == 4 && h.edges[i] >= 3.0 - 1e-12) {
      const double lo = std::max(3.0, h.edges[i]);
      analytic = bounds::participation_mass_n4(lo, h.edges[i + 1]) / h.width(i);
    }
    t.add_row({h.edges[i], h.edges[i + 1], h.counts[i], h.density(i), analytic});
  }
  return t;
}

Table cmd_conditional_h(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  const int bins = c.bins > 0 ? c.bins : experiments::kEntropyBins;
  const auto tables = experiments::conditional_by_entropy(r.dims, c.q_list, c.samples, bins, r.run());
  Table t{{"record", "q", "h_lo", "h_hi", "count", "ppt_count", "ppt_fraction", "mean_t", "cumulative"}, {}};
  for (const auto& ec : tables) {
    for (std::size_t i = 0; i < ec.table.bins.size(); ++i) {
      const auto& bin = ec.table.bins[i];
      t.add_row({std::string("bin"), ec.table.q, bin.lo, bin.hi, bin.count, bin.ppt_count, bin.ppt_fraction(),
                 bin.mean_t(), ec.cumulative[i]});
    }
    if (ec.threshold_found) {
      t.add_row({std::string("threshold"), ec.table.q, ec.threshold_h, empty(), empty(), empty(), empty(), empty(),
                 ec.cumulative_at_threshold});
    }
  }
  return t;
}

Table cmd_mean_t(const Config& c, const Resolved& r) {
  require_seed(r, c.command);
  const auto m = experiments::mean_t(r.dims, c.samples, r.run());
  Table t{{"dims", "n", "mean_t", "stderr"}, {}};
  t.add_row({dims_cell(r.dims), m.n, m.mean, m.std_error});
  return t;
}

Table bounds_table() { return Table{{"name", "dims", "value", "stderr", "kind"}, {}}; }

void add_bound(Table& t, const bounds::BoundReport& b, Dims dims) {
  t.add_row({b.name, dims_cell(b.dims.value_or(dims)), b.value, b.std_error, std::string(bounds::to_string(b.kind))});
}

Table cmd_bounds(const Config& c, const Resolved& r) {
  Table t = bounds_table();
  const int n = r.dims.total();
  add_bound(t, bounds::tau_lower_bound(n), r.dims);
  t.add_row({std::string("epsilon_ball"), dims_cell(r.dims), bounds::epsilon_ball(n), 0.0,
             std::string("mixing_weight")});
  add_bound(t, bounds::corner_bound(r.dims), r.dims);
  if (r.dims == Dims{2, 2}) {
    add_bound(t, bounds::upper_bound_mc_2x2(c.samples, RunOptions{r.seed.value_or(kBoundsDefaultSeed), r.workers}),
              r.dims);
  }
  return t;
}

Table cmd_upper_bound_mc(const Config& c, const Resolved& r) {
  Table t = bounds_table();
  add_bound(t, bounds::upper_bound_mc_2x2(c.samples, RunOptions{require_seed(r, c.command), r.workers}), Dims{2, 2});
  return t;
}

Table cmd_check(const Config& c, const Resolved&) {
  const DensityMatrix rho = io::read_density_matrix(c.input_path);
  const auto v = quantum::ppt_check(rho);
  const bool exact = quantum::ppt_implies_separable(rho.dims());
  const std::string verdict = !v.is_ppt ? "entangled" : (exact ? "separable" : "ppt");
  Table t{{"dims", "ppt", "verdict", "min_pt_eig", "t", "participation_ratio"}, {}};
  t.add_row({dims_cell(rho.dims()), v.is_ppt, verdict, v.min_pt_eigenvalue, quantum::t_statistic(v),
             quantum::participation_ratio(rho)});
  return t;
}

Table cmd_witness(const Config& c, const Resolved&) {
  const DensityMatrix rho = io::read_density_matrix(c.input_path);
  Table t{{"witness", "fired", "value", "threshold"}, {}};
  t.add_row({std::string("eigenvector_scan"), quantum::witness_eigenvector_scan(rho), empty(), empty()});
  if (!c.pure_path.empty()) {
    const io::PureState psi = io::read_pure_state(c.pure_path);
    if (!(psi.dims == rho.dims())) {
      throw Error(ErrorCode::DimensionMismatch, c.pure_path + ": pure state dims " + psi.dims.to_string() +
                                                    " do not match density matrix dims " + rho.dims().to_string());
    }
    const auto w4 = quantum::witness_lemma4(rho, psi.vector);
    const auto w6 = quantum::witness_lemma6(rho, psi.vector);
    t.add_row({std::string("lemma4"), w4.fired, w4.value, w4.threshold});
    t.add_row({std::string("lemma6"), w6.fired, w6.value, w6.threshold});
  }
  return t;
}

struct Command {
  std::string name;
  std::string help;
  std::uint64_t default_samples;
  std::function<Table(const Config&, const Resolved&)> fn;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InsufficientSamples:
    case ErrorCode::DegenerateFit:
    case ErrorCode::OutOfDomain:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

json manifest(const Config& c, const Resolved& r, double wall_time) {
  json m;
  m["command"] = c.command;
  m["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  m["samples"] = c.samples;
  m["workers"] = r.workers;
  if (c.command == "scan") m["dims"] = c.dims_list;
  else m["dims"] = {r.dims.first, r.dims.second};
  m["bins"] = c.bins;
  if (c.command == "conditional-h") m["q"] = c.q_list;
  m["output"] = c.output_path.empty() ? json("-") : json(c.output_path);
  m["format"] = c.format;
  m["versions"] = {{"sepvol", SEPVOL_VERSION},
                   {"rng", "philox4x32-10"},
                   {"stream_layout", "chunk-" + std::to_string(kChunkSize)},
                   {"eigensolver", "cyclic-jacobi"}};
  m["wall_time_s"] = wall_time;
  return m;
}

}  // namespace

Dims parse_dims(const std::string& text) {
  const auto x = text.find('x');
  const auto bad = [&] { return Error(ErrorCode::InvalidArgument, "invalid dims '" + text + "', expected N1xN2"); };
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) throw bad();
  Dims d;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto r1 = std::from_chars(begin, begin + x, d.first);
  auto r2 = std::from_chars(begin + x + 1, end, d.second);
  if (r1.ec != std::errc{} || r1.ptr != begin + x || r2.ec != std::errc{} || r2.ptr != end) throw bad();
  validate_dims(d);
  return d;
}

std::uint64_t parse_seed(const std::string& text) {
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* begin = text.data() + (hex ? 2 : 0);
  const char* end = text.data() + text.size();
  std::uint64_t value = 0;
  const auto res = std::from_chars(begin, end, value, hex ? 16 : 10);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw Error(ErrorCode::InvalidArgument, "invalid seed '" + text + "', expected decimal or 0x-hex 64-bit integer");
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::vector<Command> commands{
      {"estimate", "PPT volume estimate for one bipartition", 1'000'000, cmd_estimate},
      {"scan", "PPT volume over several bipartitions", 100'000, cmd_scan},
      {"conditional-r", "PPT fraction and mean t binned by participation ratio", 1'000'000, cmd_conditional_r},
      {"dist-r", "histogram of the participation ratio", 1'000'000, cmd_dist_r},
      {"conditional-h", "PPT fraction binned by Renyi entropy", 1'000'000, cmd_conditional_h},
      {"mean-t", "mean negativity statistic t", 1'000'000, cmd_mean_t},
      {"bounds", "analytic bounds (plus the Monte Carlo ceiling for 2x2)", 10'000'000, cmd_bounds},
      {"upper-bound-mc", "Monte Carlo ceiling on the 2x2 separable volume", 10'000'000, cmd_upper_bound_mc},
      {"check", "PPT test of a density matrix file", 0, cmd_check},
      {"witness", "inseparability witnesses on a density matrix file", 0, cmd_witness},
  };

  Config cfg;
  CLI::App app{"Monte Carlo volumes of separable states"};
  app.name("sepvol");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", SEPVOL_VERSION);

  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->callback([&cfg, name = cmd.name] { cfg.command = name; });
    const bool file_based = cmd.name == "check" || cmd.name == "witness";
    if (file_based) {
      sub->add_option("--input", cfg.input_path, "density matrix JSON file")->required();
      if (cmd.name == "witness") sub->add_option("--pure", cfg.pure_path, "pure state JSON file for Lemma 4/6");
    } else {
      if (cmd.name == "scan") {
        sub->add_option("--dims", cfg.dims_list, "bipartitions N1xN2 (repeat or comma-separate)")
            ->delimiter(',')
            ->default_str("2x2,2x3,2x4,3x3,2x6,3x4,4x4");
        sub->add_flag("--fit", cfg.fit, "append an exponential fit row");
      } else if (cmd.name != "upper-bound-mc") {
        sub->add_option("--dims", cfg.dims_text, "bipartition N1xN2")->capture_default_str();
      }
      sub->add_option("--samples", cfg.samples, "number of Monte Carlo samples")
          ->default_val(cmd.default_samples)
          ->check(CLI::PositiveNumber);
      sub->add_option("--seed", cfg.seed_text, "64-bit seed, decimal or 0x-hex");
      sub->add_option("--workers", cfg.workers, "OpenMP worker count")->default_val(1)->check(CLI::PositiveNumber);
      if (cmd.name == "conditional-r" || cmd.name == "dist-r" || cmd.name == "conditional-h") {
        sub->add_option("--bins", cfg.bins, "bin count (default: width 0.05 in R, ln(N)/60 in H)")
            ->check(CLI::PositiveNumber);
      }
      if (cmd.name == "conditional-h") {
        sub->add_option("--q", cfg.q_list, "Renyi orders")->delimiter(',')->default_str("1,2,3,10");
      }
      if (cmd.name == "estimate") {
        sub->add_option("--mix", cfg.mix, "replace each sample by (1-p) I/N + p rho");
      }
    }
    sub->add_option("--output", cfg.output_path, "output file (default: standard output)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto it = std::find_if(commands.begin(), commands.end(), [&](const Command& c) { return c.name == cfg.command; });
  Resolved res;
  res.workers = cfg.workers;
  const auto start = std::chrono::steady_clock::now();
  try {
    try {
      if (cfg.command != "check" && cfg.command != "witness") {
        if (cfg.command != "scan" && cfg.command != "upper-bound-mc") res.dims = parse_dims(cfg.dims_text);
        if (cfg.command == "scan" && cfg.dims_list.empty()) cfg.dims_list = {"2x2", "2x3", "2x4", "3x3", "2x6", "3x4", "4x4"};
        if (cfg.command == "upper-bound-mc") res.dims = Dims{2, 2};
        if (!cfg.seed_text.empty()) res.seed = parse_seed(cfg.seed_text);
        if (cfg.command == "bounds" && !res.seed) res.seed = kBoundsDefaultSeed;
      }
    } catch (const Error& e) {
      throw UsageError(e.detail());
    }

    const Table table = it->fn(cfg, res);
    std::ostringstream buffer;
    report::write(buffer, table, cfg.format == "json" ? report::Format::Json : report::Format::Csv);

    if (cfg.output_path.empty()) {
      out << buffer.str();
      out.flush();
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw Error(ErrorCode::Io, cfg.output_path + ": cannot open for writing");
      file << buffer.str();
      if (!file.flush()) throw Error(ErrorCode::Io, cfg.output_path + ": write failed");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << manifest(cfg, res, wall).dump() << "\n";
  return kExitOk;
}

}  // namespace sepvol::cli
