// eofb: bounds on the entanglement of formation of two-mode Gaussian states.
//
//   eofb analyze --input state.json [--output report.json]
//   eofb scan [--input scan.json] [--output scan.csv] [--i1-min 1 ...]
//
// Exit codes: 0 success, 2 parse error, 3 unphysical input, 4 GeoF budget
// exhausted (output is still written).

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "eofb/error.hpp"
#include "eofb/report.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitBudget = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw eofb::Error(eofb::ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("EOFB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric EOFB_SEED\n";
    }
  }
  return eofb::GeofOptions{}.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of formation bounds for two-mode Gaussian states"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  double tol_psd = eofb::kDefaultPsdTol;
  double tol_bound = 1e-9;
  double geof_tol = 1e-6;
  long geof_budget = 100000;
  std::uint64_t seed = default_seed();
  std::string units = "nats";
  bool no_geof = false;
  int search_steps = 64;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Output path (default: stdout)");
    sub->add_option("--tol-psd", tol_psd, "Tolerance on minimum eigenvalues")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-bound", tol_bound, "Tolerance for bound comparisons")->check(CLI::NonNegativeNumber);
    sub->add_option("--geof-tol", geof_tol, "GeoF convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--geof-budget", geof_budget, "GeoF evaluation budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed for the GeoF multistart (env EOFB_SEED)");
    sub->add_option("--units", units, "Entanglement units")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_flag("--no-geof", no_geof, "Skip the GeoF optimization");
    sub->add_option("--search-steps", search_steps, "Grid size of the searched upper bound")->check(CLI::PositiveNumber);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Bound report for a single state");
  analyze_cmd->add_option("--input", input, "State document (JSON)")->required();
  add_common(analyze_cmd);

  eofb::ScanSpec spec;
  std::string i4_text = "rule";
  int threads = 1;
  auto* scan_cmd = app.add_subcommand("scan", "CSV scan over the invariants I1, I2");
  scan_cmd->add_option("--input", input, "Scan document (JSON); overrides the grid flags");
  scan_cmd->add_option("--i1-min", spec.i1.min);
  scan_cmd->add_option("--i1-max", spec.i1.max);
  scan_cmd->add_option("--i1-steps", spec.i1.steps);
  scan_cmd->add_option("--i2-min", spec.i2.min);
  scan_cmd->add_option("--i2-max", spec.i2.max);
  scan_cmd->add_option("--i2-steps", spec.i2.steps);
  scan_cmd->add_option("--i3", spec.i3);
  scan_cmd->add_option("--i4", i4_text, "Number, or 'rule' for 2|I3|sqrt(I1 I2)");
  scan_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  add_common(scan_cmd);

  CLI11_PARSE(app, argc, argv);

  eofb::AnalyzeOptions opts;
  opts.units = units == "bits" ? eofb::Units::bits : eofb::Units::nats;
  opts.bounds.psd_tol = tol_psd;
  opts.bounds.bound_tol = tol_bound;
  opts.bounds.compute_geof = !no_geof;
  opts.bounds.search_steps = search_steps;
  opts.bounds.geof.tol = geof_tol;
  opts.bounds.geof.budget = geof_budget;
  opts.bounds.geof.psd_tol = tol_psd;
  opts.bounds.geof.seed = seed;

  try {
    if (*analyze_cmd) {
      const eofb::CovMat v = eofb::parse_state_text(read_file(input), tol_psd);
      const auto report = eofb::analyze(v, opts);
      write_output(output, report.dump(2) + "\n");
      const auto& detail = report.at("geof_detail");
      if (!detail.is_null() && !detail.at("converged").get<bool>()) return kExitBudget;
      return 0;
    }

    if (!input.empty()) {
      spec = eofb::parse_scan_document(nlohmann::json::parse(read_file(input)));
    } else if (i4_text != "rule") {
      try {
        spec.i4 = std::stod(i4_text);
      } catch (const std::exception&) {
        throw eofb::Error(eofb::ErrorCode::ParseError, "--i4 must be a number or 'rule'");
      }
    }
    const auto rows = eofb::scan(spec, opts, threads);
    write_output(output, eofb::format_scan_csv(rows, opts.units));
    for (const auto& r : rows) {
      if (r.status == eofb::RowStatus::budget_exhausted) return kExitBudget;
    }
    return 0;
  } catch (const eofb::Error& e) {
    std::cerr << "error [" << eofb::to_string(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case eofb::ErrorCode::ParseError: return kExitParse;
      case eofb::ErrorCode::NonPhysicalState:
      case eofb::ErrorCode::NonPositiveMatrix:
      case eofb::ErrorCode::DegenerateInvariants: return kExitUnphysical;
      default: return 1;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [ParseError]: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
