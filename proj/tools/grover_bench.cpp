// grover-bench: experiment runner for the Grover search drivers.
//
//   grover-bench run     --qubits 4,8,16,20 --algo GS,DFGS,BDGS --trials 5
//   grover-bench search  --qubits 20 --algo BDGS --target 12345
//   grover-bench predict --qubits 20 --algo BDGS,DFGS,GS
//
// Exit codes: 0 success, 1 a cell or search failed, 2 invalid plan/arguments.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsearch/errors.hpp"
#include "gsearch/harness.hpp"
#include "gsearch/predictors.hpp"
#include "gsearch/search.hpp"
#include "gsearch/seed.hpp"

namespace fs = std::filesystem;
using namespace gsearch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCellFailed = 1;
constexpr int kExitInvalid = 2;

constexpr const char* kOutputDirEnv = "GSEARCH_OUTPUT_DIR";

struct InvalidPlan : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::vector<int> qubits;
  std::vector<std::string> algos;
  int trials = 5;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  int block_size = 4;
  std::optional<BasisIndex> target;
  std::string format;
  std::string out;
  int jobs = 1;
  bool series = false;
};

fs::path output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return fs::current_path();
}

fs::path resolve_output(const std::string& out) {
  fs::path p(out);
  return p.is_absolute() ? p : output_dir() / p;
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  const fs::path path = resolve_output(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> algos;
  for (const auto& name : names) {
    const auto a = parse_algorithm(name);
    if (!a) throw InvalidPlan("unknown algorithm '" + name + "'");
    algos.push_back(*a);
  }
  return algos;
}

void add_common(CLI::App* cmd, Options& o, bool multi) {
  if (multi) {
    cmd->add_option("--qubits", o.qubits, "Qubit counts (comma separated)")->delimiter(',');
    cmd->add_option("--algo", o.algos, "Algorithms: GS, GRK, DFGS, BDGS")->delimiter(',');
  } else {
    cmd->add_option("--qubits", o.qubits, "Qubit count")->expected(1)->required();
    cmd->add_option("--algo", o.algos, "Algorithm: GS, GRK, DFGS, BDGS")->expected(1);
  }
  cmd->add_option("--block-size", o.block_size, "Branching factor b = 2^k")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "Output format");
  cmd->add_option("--out", o.out,
                  std::string("Output file; relative paths resolve against $") +
                      kOutputDirEnv + " when set");
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--shots", o.shots, "Measurement shots per trial")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  cmd->add_option("--target", o.target, "Marked index (random per trial when omitted)");
}

int cmd_run(const Options& o) {
  ExperimentPlan plan;
  if (!o.qubits.empty()) plan.qubits = o.qubits;
  if (!o.algos.empty()) plan.algorithms = parse_algorithms(o.algos);
  plan.trials = o.trials;
  plan.shots = o.shots;
  plan.base_seed = o.seed;
  plan.block_size = o.block_size;
  plan.jobs = o.jobs;
  if (o.target) {
    plan.target_policy = TargetPolicy::fixed;
    plan.target = o.target;
  }
  const auto format = parse_table_format(o.format.empty() ? "markdown" : o.format);
  if (!format) throw InvalidPlan("unknown format '" + o.format + "'");
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidPlan(e.what());
  }

  const auto table = run_plan(plan);
  write_output(o.out, emit_table(table, *format));

  if (o.series) {
    std::set<int> distinct(plan.qubits.begin(), plan.qubits.end());
    if (distinct.size() < 2) throw InvalidPlan("--series needs at least two qubit counts");
    const auto series = emit_scaling_series(table, plan.block_size);
    write_output("runtime_vs_qubits.json", series.runtime.dump(2));
    write_output("layers_vs_qubits.json", series.layers.dump(2));
  }

  for (const auto& row : table.rows) {
    if (row.error) {
      std::cerr << "cell r=" << row.qubits << ' ' << to_string(row.algorithm) << " trial "
                << row.trial << " failed: " << *row.error << '\n';
    }
  }
  return table.has_errors() ? kExitCellFailed : kExitOk;
}

std::string search_text(const SearchOutcome& out) {
  std::ostringstream os;
  os << to_string(out.algorithm) << " r=" << out.r << " target=" << out.target << " ("
     << to_bitstring(out.target, out.r) << ")\n"
     << "measured " << out.measured_index << " (" << to_bitstring(out.measured_index, out.r)
     << ")\n"
     << "accuracy " << out.success_fraction * 100.0 << "% (" << out.target_hits << '/'
     << out.shots << " shots)\n"
     << "final probability " << out.final_probability << '\n'
     << "layers " << out.layers << ", oracle calls " << out.oracle_calls << '\n'
     << "wall time " << out.wall_time << " s\n";
  return os.str();
}

int cmd_search(const Options& o) {
  const int r = o.qubits.at(0);
  const auto algos = parse_algorithms(o.algos.empty() ? std::vector<std::string>{"BDGS"}
                                                      : o.algos);
  const std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt != "text" && fmt != "json") throw InvalidPlan("unknown format '" + fmt + "'");

  SearchConfig cfg;
  try {
    check_qubit_count(r);
    const BasisIndex target =
        o.target ? *o.target
                 : std::mt19937_64(derive_seed(o.seed, 0x7A26E7))() & full_mask(r);
    cfg = SearchConfig::make(algos.at(0), r, target, o.block_size, o.shots, o.seed);
  } catch (const std::exception& e) {
    throw InvalidPlan(e.what());
  }

  SearchOutcome out;
  try {
    out = run_search(cfg);
  } catch (const std::exception& e) {
    std::cerr << "search failed: " << e.what() << '\n';
    return kExitCellFailed;
  }
  write_output(o.out, fmt == "json" ? to_json(out).dump(2) : search_text(out));
  return verify_outcome(out, cfg) ? kExitOk : kExitCellFailed;
}

int cmd_predict(const Options& o) {
  const auto qubits = o.qubits.empty() ? std::vector<int>{4, 8, 16, 20} : o.qubits;
  const auto algos = parse_algorithms(
      o.algos.empty() ? std::vector<std::string>{"GS", "GRK", "DFGS", "BDGS"} : o.algos);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  if (fmt != "json" && fmt != "csv") throw InvalidPlan("unknown format '" + fmt + "'");

  nlohmann::json entries = nlohmann::json::array();
  std::ostringstream csv;
  csv << "algorithm,r,b,k,layers,oracle_calls_bound\n";
  for (int r : qubits) {
    for (auto algo : algos) {
      PredictedCost c;
      try {
        c = predict_cost(algo, r, o.block_size);
      } catch (const std::exception& e) {
        throw InvalidPlan(e.what());
      }
      entries.push_back({{"algorithm", std::string(to_string(c.algorithm))},
                         {"r", c.r},
                         {"b", c.b},
                         {"k", c.k},
                         {"layers", c.layers},
                         {"oracle_calls_bound", c.oracle_calls}});
      csv << to_string(c.algorithm) << ',' << c.r << ',' << c.b << ',' << c.k << ','
          << c.layers << ',' << c.oracle_calls << '\n';
    }
  }
  if (fmt == "csv") {
    write_output(o.out, csv.str());
  } else {
    write_output(o.out, entries.size() == 1 ? entries[0].dump(2) : entries.dump(2));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search benchmark: GS, GRK, DFGS and BDGS on a statevector simulator"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run a trials x shots experiment plan");
  add_common(run, o, true);
  add_sampling(run, o);
  run->add_option("--trials", o.trials, "Trials per (qubits, algorithm) cell")
      ->capture_default_str();
  run->add_option("--jobs", o.jobs, "Concurrent cells")->capture_default_str();
  run->add_flag("--series", o.series,
                "Also write runtime_vs_qubits.json and layers_vs_qubits.json");

  auto* search = app.add_subcommand("search", "Run a single search and report the outcome");
  add_common(search, o, false);
  add_sampling(search, o);

  auto* predict = app.add_subcommand("predict", "Print closed-form cost predictions");
  add_common(predict, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*run) return cmd_run(o);
    if (*search) return cmd_search(o);
    return cmd_predict(o);
  } catch (const InvalidPlan& e) {
    std::cerr << "invalid plan: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCellFailed;
  }
}
