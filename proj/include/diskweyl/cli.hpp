#pragma once

// Batch front end behind the `diskweyl` executable. Argument parsing uses
// CLI11 and JSON output nlohmann::json; both are vendored single headers and
// only this header pulls them in.
//
// Exit status: 0 success, 1 invariant violation, 2 argument error,
// 3 numerical failure. Errors are written to the diagnostic stream as one
// JSON object per line.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskweyl/asymptotics.hpp"
#include "diskweyl/bessel_zeros.hpp"
#include "diskweyl/detail/parallel.hpp"
#include "diskweyl/errors.hpp"
#include "diskweyl/lattice_count.hpp"
#include "diskweyl/spectral_count.hpp"
#include "diskweyl/verify.hpp"

namespace diskweyl::cli {

enum class Command { zeros, count, scan, fit, verify, mollify };

enum ExitCode : int { kSuccess = 0, kViolation = 1, kArgumentError = 2, kNumericalFailure = 3 };

struct RunConfig {
  Command command = Command::count;
  double mu = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  double step = 0.0;
  int n_max = 0;
  std::string in;
  std::string out;  ///< empty: standard output
  int block = kDefaultBlockSize;
  EnvelopeField field = EnvelopeField::remainder;
  verify::Suite suite = verify::Suite::special;
  std::vector<double> suite_mu;
  double eps_exp = 1.0 / 3.0;
  int quad_cells = 64;
  unsigned threads = 0;
  std::uint64_t seed = 20240611;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    switch (command) {
      case Command::zeros:
        detail::require(n_max >= 0, "--n-max must be nonnegative");
        detail::require(positive(mu), "--mu must be positive");
        break;
      case Command::count:
        detail::require(positive(mu), "--mu must be positive");
        break;
      case Command::scan:
        detail::require(positive(mu_min) && mu_min < mu_max, "need 0 < --mu-min < --mu-max");
        detail::require(positive(step), "--step must be positive");
        break;
      case Command::fit:
        detail::require(!in.empty(), "--in is required");
        detail::require(block >= 1, "--block must be positive");
        break;
      case Command::verify:
        break;
      case Command::mollify:
        detail::require(positive(mu), "--mu must be positive");
        detail::require(positive(eps_exp), "--eps-exp must be positive");
        detail::require(quad_cells >= 4, "--quad-cells must be >= 4");
        break;
    }
  }
};

namespace detail {

inline std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void error_record(std::ostream& err, const char* kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

// Writes to the --out file, or to `fallback` if no path was given. The file is
// opened in binary mode so line endings stay LF.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      diskweyl::detail::require(file_.is_open(), "cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    diskweyl::detail::require(!stream_->fail(), "write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline nlohmann::json to_json(const CountSample& s) {
  return {{"mu", s.mu},           {"n_disk", s.n_disk},       {"n_lattice", s.n_lattice},
          {"weyl2", s.weyl2},     {"remainder", s.remainder}, {"diff", s.diff}};
}

inline nlohmann::json to_json(const FitResult& f) {
  return {{"exponent", f.exponent},       {"log_constant", f.log_constant},
          {"r_squared", f.r_squared},     {"sample_count", f.sample_count},
          {"block_size", f.block_size}};
}

inline nlohmann::json to_json(const SandwichResult& r) {
  return {{"mu", r.mu},         {"epsilon", r.epsilon}, {"n_minus", r.n_minus},
          {"n_exact", r.n_exact}, {"n_plus", r.n_plus},   {"lattice_points", r.lattice_points},
          {"ordered", r.ordered()}};
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Reads (mu, value) pairs from a CSV with a header row naming the columns.
inline std::vector<PowerLawPoint> read_envelope_csv(const std::string& path, EnvelopeField field) {
  std::ifstream in(path, std::ios::binary);
  diskweyl::detail::require(in.is_open(), "cannot open input file " + path);
  std::string line;
  diskweyl::detail::require(static_cast<bool>(std::getline(in, line)), path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  const std::string want = field == EnvelopeField::remainder ? "remainder" : "diff";
  int mu_col = -1, value_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "mu") mu_col = static_cast<int>(i);
    if (header[i] == want) value_col = static_cast<int>(i);
  }
  diskweyl::detail::require(mu_col >= 0 && value_col >= 0,
                            path + ": header needs columns mu and " + want);
  std::vector<PowerLawPoint> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    diskweyl::detail::require(cells.size() == header.size(),
                              path + ":" + std::to_string(row) + ": wrong number of columns");
    try {
      std::size_t used_mu = 0, used_value = 0;
      const double mu = std::stod(cells[mu_col], &used_mu);
      const double value = std::stod(cells[value_col], &used_value);
      diskweyl::detail::require(used_mu == cells[mu_col].size() &&
                                    used_value == cells[value_col].size(),
                                "trailing characters");
      out.push_back({mu, value});
    } catch (const std::logic_error&) {
      throw invalid_input(path + ":" + std::to_string(row) + ": malformed number");
    }
  }
  return out;
}

inline int run_zeros(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::vector<BesselZero>> per_order(static_cast<std::size_t>(cfg.n_max) + 1);
  diskweyl::detail::parallel_for(per_order.size(), cfg.threads, [&](std::size_t n) {
    per_order[n] = zeros_up_to(static_cast<int>(n), cfg.mu);
  });
  Sink sink(cfg.out, out);
  *sink << "n,k,x,residual\n";
  for (const auto& zs : per_order) {
    for (const BesselZero& z : zs) {
      *sink << z.n << ',' << z.k << ',' << g17(z.x) << ',' << g17(z.residual) << '\n';
    }
  }
  sink.finish();
  return kSuccess;
}

inline int run_scan(const RunConfig& cfg, std::ostream& out) {
  const auto samples = scan_remainder(cfg.mu_min, cfg.mu_max, cfg.step, cfg.threads);
  Sink sink(cfg.out, out);
  *sink << "mu,n_disk,n_lattice,weyl2,remainder,diff\n";
  for (const CountSample& s : samples) {
    *sink << g17(s.mu) << ',' << s.n_disk << ',' << s.n_lattice << ',' << g17(s.weyl2) << ','
          << g17(s.remainder) << ',' << s.diff << '\n';
  }
  sink.finish();
  return kSuccess;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  verify::SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  opt.mu = cfg.suite_mu;
  opt.mollify.eps_exponent = cfg.eps_exp;
  opt.mollify.quad_cells = cfg.quad_cells;
  const auto checks = verify::run_suite(cfg.suite, opt);
  int failed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << verify::to_string(cfg.suite) << '.' << c.name << ": "
        << c.detail << '\n';
    if (!c.passed) ++failed;
  }
  out << verify::to_string(cfg.suite) << ": " << checks.size() - failed << '/' << checks.size()
      << " passed\n";
  return failed == 0 ? kSuccess : kViolation;
}

}  // namespace detail

/// Executes a validated configuration.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::zeros: return detail::run_zeros(cfg, out);
      case Command::count: {
        out << detail::to_json(count_sample(cfg.mu, cfg.threads)).dump() << '\n';
        return kSuccess;
      }
      case Command::scan: return detail::run_scan(cfg, out);
      case Command::fit: {
        const auto points = detail::read_envelope_csv(cfg.in, cfg.field);
        const FitResult fit = fit_envelope(std::span<const PowerLawPoint>(points), cfg.block);
        detail::Sink sink(cfg.out, out);
        *sink << detail::to_json(fit).dump() << '\n';
        sink.finish();
        return kSuccess;
      }
      case Command::verify: return detail::run_verify(cfg, out);
      case Command::mollify: {
        MollifyConfig m;
        m.eps_exponent = cfg.eps_exp;
        m.quad_cells = cfg.quad_cells;
        const SandwichResult r = sandwich_check(cfg.mu, m);
        detail::Sink sink(cfg.out, out);
        *sink << detail::to_json(r).dump() << '\n';
        sink.finish();
        return r.ordered() ? kSuccess : kViolation;
      }
    }
  } catch (const invalid_input& e) {
    detail::error_record(err, e.kind(), e.what());
    return kArgumentError;
  } catch (const numerical_failure& e) {
    detail::error_record(err, e.kind(), e.what());
    return kNumericalFailure;
  }
  return kArgumentError;
}

/// Parses argv into a RunConfig and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  CLI::App app{"Dirichlet spectrum of the unit disk against lattice counts in a cusped domain"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string suite_name = "special";
  std::string field_name = "remainder";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for randomized cross-checks");
    sub->add_option("--threads", cfg.threads, "Worker threads (0: DISKWEYL_THREADS or hardware)");
  };

  auto* zeros = app.add_subcommand("zeros", "Bessel zeros as CSV: n,k,x,residual");
  zeros->add_option("--n-max", cfg.n_max, "Largest order")->required();
  zeros->add_option("--mu", cfg.mu, "Upper bound for the zeros")->required();
  zeros->add_option("--out", cfg.out, "Output CSV (default: stdout)");
  common(zeros);

  auto* count = app.add_subcommand("count", "N_disk, N_D and the Weyl remainder at mu as JSON");
  count->add_option("--mu", cfg.mu, "Spectral parameter")->required();
  common(count);

  auto* scan = app.add_subcommand("scan", "CountSample CSV over a mu grid");
  scan->add_option("--mu-min", cfg.mu_min)->required();
  scan->add_option("--mu-max", cfg.mu_max)->required();
  scan->add_option("--step", cfg.step)->required();
  scan->add_option("--out", cfg.out, "Output CSV (default: stdout)");
  common(scan);

  auto* fit = app.add_subcommand("fit", "Block-maxima envelope exponent of a scan CSV");
  fit->add_option("--in", cfg.in, "CSV with columns mu and remainder (or diff)")->required();
  fit->add_option("--block", cfg.block, "Samples per block");
  fit->add_option("--field", field_name, "Column to fit")
      ->check(CLI::IsMember({"remainder", "diff"}));
  fit->add_option("--out", cfg.out, "Output JSON (default: stdout)");
  common(fit);

  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite");
  verify_cmd->add_option("--suite", suite_name)
      ->required()
      ->check(CLI::IsMember({"special", "geometry", "lattice", "sandwich", "appendix"}));
  verify_cmd->add_option("--mu", cfg.suite_mu, "mu values for the lattice or sandwich suite");
  verify_cmd->add_option("--eps-exp", cfg.eps_exp, "eps = mu^-eps_exp (sandwich)");
  verify_cmd->add_option("--quad-cells", cfg.quad_cells, "Midpoint cells per eps (sandwich)");
  common(verify_cmd);

  auto* mollify = app.add_subcommand("mollify", "Mollified sandwich over the right cusp as JSON");
  mollify->add_option("--mu", cfg.mu)->required();
  mollify->add_option("--eps-exp", cfg.eps_exp, "eps = mu^-eps_exp");
  mollify->add_option("--quad-cells", cfg.quad_cells, "Midpoint cells per eps");
  mollify->add_option("--out", cfg.out, "Output JSON (default: stdout)");
  common(mollify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    detail::error_record(err, "argument_error", e.what());
    return kArgumentError;
  }

  const std::map<CLI::App*, Command> commands{{zeros, Command::zeros},  {count, Command::count},
                                              {scan, Command::scan},    {fit, Command::fit},
                                              {verify_cmd, Command::verify},
                                              {mollify, Command::mollify}};
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) cfg.command = cmd;
  }
  static const std::map<std::string, verify::Suite> suites{
      {"special", verify::Suite::special},   {"geometry", verify::Suite::geometry},
      {"lattice", verify::Suite::lattice},   {"sandwich", verify::Suite::sandwich},
      {"appendix", verify::Suite::appendix}};
  cfg.suite = suites.at(suite_name);
  cfg.field = field_name == "diff" ? EnvelopeField::diff : EnvelopeField::remainder;
  return run(cfg, out, err);
}

}  // namespace diskweyl::cli
