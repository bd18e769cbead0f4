#include "gsearch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gsearch/predictors.hpp"
#include "gsearch/search.hpp"
#include "gsearch/seed.hpp"

namespace gsearch {

namespace {

std::string format_g(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string algorithm_name(Algorithm a) { return std::string(to_string(a)); }

ResultRow run_cell(const ExperimentPlan& plan, int r, Algorithm algorithm,
                   int trial) {
  ResultRow row;
  row.qubits = r;
  row.algorithm = algorithm;
  row.trial = trial;
  row.shots = plan.shots;
  row.seed = cell_seed(plan.base_seed, r, algorithm, trial);
  try {
    if (plan.target_policy == TargetPolicy::fixed) {
      row.target = *plan.target;
    } else {
      std::mt19937_64 rng(derive_seed(row.seed, 0x7A26E7));
      row.target = rng() & full_mask(r);
    }
    const auto config =
        SearchConfig::make(algorithm, r, row.target, plan.block_size, plan.shots,
                           row.seed);
    const SearchOutcome out = run_search(config);
    row.hits = out.target_hits;
    row.accuracy_pct =
        static_cast<double>(out.target_hits) * 100.0 / static_cast<double>(out.shots);
    row.time_s = out.wall_time;
    row.layers = out.layers;
    row.oracle_calls = out.oracle_calls;
    row.measured = out.measured_index;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

void ExperimentPlan::validate() const {
  if (qubits.empty()) throw std::invalid_argument("plan has no qubit counts");
  if (algorithms.empty()) throw std::invalid_argument("plan has no algorithms");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  for (int r : qubits) {
    if (r < 2 || r > kMaxQubits) {
      throw std::invalid_argument("qubit count " + std::to_string(r) +
                                  " outside [2, " + std::to_string(kMaxQubits) + "]");
    }
  }
  if (block_size < 2 || (block_size & (block_size - 1)) != 0) {
    throw std::invalid_argument("block size must be a power of two >= 2");
  }
  const int min_r = *std::min_element(qubits.begin(), qubits.end());
  if (block_size > (1 << min_r)) {
    throw std::invalid_argument("block size exceeds 2^r for r=" +
                                std::to_string(min_r));
  }
  if (target_policy == TargetPolicy::fixed) {
    if (!target) throw std::invalid_argument("fixed target policy needs a target");
    if (*target > full_mask(min_r)) {
      throw std::invalid_argument("target out of range for r=" +
                                  std::to_string(min_r));
    }
  }
}

bool ResultTable::has_errors() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ResultRow& r) { return r.error.has_value(); });
}

const GroupAggregate* ResultTable::find(int qubits, Algorithm algorithm) const {
  for (const auto& g : aggregates) {
    if (g.qubits == qubits && g.algorithm == algorithm) return &g;
  }
  return nullptr;
}

std::uint64_t cell_seed(std::uint64_t base_seed, int qubits, Algorithm algorithm,
                        int trial) {
  return base_seed + hash_fields({static_cast<std::uint64_t>(qubits),
                                  static_cast<std::uint64_t>(algorithm),
                                  static_cast<std::uint64_t>(trial)});
}

ResultTable run_plan(const ExperimentPlan& plan) {
  plan.validate();

  struct Cell {
    int r;
    Algorithm algorithm;
    int trial;
  };
  std::vector<Cell> cells;
  for (int r : plan.qubits) {
    for (Algorithm a : plan.algorithms) {
      for (int t = 1; t <= plan.trials; ++t) cells.push_back({r, a, t});
    }
  }

  ResultTable table;
  table.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      table.rows[i] = run_cell(plan, cells[i].r, cells[i].algorithm, cells[i].trial);
    }
  };
  const auto n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(plan.jobs), cells.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  table.aggregates = aggregate_rows(table.rows);
  return table;
}

std::vector<GroupAggregate> aggregate_rows(const std::vector<ResultRow>& rows) {
  std::vector<GroupAggregate> out;
  std::vector<double> time_sum;
  std::vector<double> layer_sum;
  std::vector<double> call_sum;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const GroupAggregate& g) {
      return g.qubits == row.qubits && g.algorithm == row.algorithm;
    });
    if (it == out.end()) {
      out.push_back(GroupAggregate{row.qubits, row.algorithm});
      time_sum.push_back(0.0);
      layer_sum.push_back(0.0);
      call_sum.push_back(0.0);
      it = out.end() - 1;
    }
    const auto i = static_cast<std::size_t>(it - out.begin());
    if (row.error) {
      ++it->errors;
      continue;
    }
    ++it->trials;
    it->hits += row.hits;
    it->shots += row.shots;
    time_sum[i] += row.time_s;
    layer_sum[i] += row.layers;
    call_sum[i] += static_cast<double>(row.oracle_calls);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& g = out[i];
    if (g.trials == 0) continue;
    const double n = g.trials;
    g.mean_accuracy_pct =
        static_cast<double>(g.hits) * 100.0 / static_cast<double>(g.shots);
    g.mean_time_s = time_sum[i] / n;
    g.mean_layers = layer_sum[i] / n;
    g.mean_oracle_calls = call_sum[i] / n;
  }
  return out;
}

std::optional<TableFormat> parse_table_format(std::string_view name) {
  std::string lower(name);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "csv") return TableFormat::csv;
  if (lower == "json") return TableFormat::json;
  if (lower == "markdown" || lower == "md") return TableFormat::markdown;
  return std::nullopt;
}

nlohmann::json to_json(const ResultTable& table) {
  nlohmann::json j;
  auto rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row{{"qubits", r.qubits},
                       {"algorithm", algorithm_name(r.algorithm)},
                       {"trial", r.trial},
                       {"seed", r.seed},
                       {"target", r.target}};
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["accuracy_pct"] = r.accuracy_pct;
      row["time_s"] = r.time_s;
      row["hits"] = r.hits;
      row["shots"] = r.shots;
      row["layers"] = r.layers;
      row["oracle_calls"] = r.oracle_calls;
      row["measured"] = r.measured;
    }
    rows.push_back(std::move(row));
  }
  auto aggs = nlohmann::json::array();
  for (const auto& g : table.aggregates) {
    aggs.push_back({{"qubits", g.qubits},
                    {"algorithm", algorithm_name(g.algorithm)},
                    {"trials", g.trials},
                    {"errors", g.errors},
                    {"hits", g.hits},
                    {"shots", g.shots},
                    {"mean_accuracy_pct", g.mean_accuracy_pct},
                    {"mean_time_s", g.mean_time_s},
                    {"mean_layers", g.mean_layers},
                    {"mean_oracle_calls", g.mean_oracle_calls}});
  }
  j["rows"] = rows;
  j["aggregates"] = aggs;
  return j;
}

namespace {

std::string emit_csv(const ResultTable& table) {
  std::ostringstream os;
  os << "qubits,algorithm,trial,accuracy_pct,time_s\n";
  for (const auto& r : table.rows) {
    os << r.qubits << ',' << algorithm_name(r.algorithm) << ',' << r.trial << ',';
    if (!r.error) os << format_g(r.accuracy_pct, 10) << ',' << format_g(r.time_s, 6);
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::string emit_markdown(const ResultTable& table) {
  std::vector<Algorithm> algos;
  std::vector<int> qubits;
  for (const auto& r : table.rows) {
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end()) {
      algos.push_back(r.algorithm);
    }
    if (std::find(qubits.begin(), qubits.end(), r.qubits) == qubits.end()) {
      qubits.push_back(r.qubits);
    }
  }

  std::ostringstream os;
  os << "| Qubits | Trial |";
  for (auto a : algos) os << ' ' << to_string(a) << " Acc. | " << to_string(a) << " Time(s) |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < algos.size(); ++i) os << "---|---|";
  os << '\n';

  for (int q : qubits) {
    std::map<int, std::map<Algorithm, const ResultRow*>> by_trial;
    for (const auto& r : table.rows) {
      if (r.qubits == q) by_trial[r.trial][r.algorithm] = &r;
    }
    for (const auto& [trial, cells] : by_trial) {
      os << "| " << q << " | " << trial << " |";
      for (auto a : algos) {
        const auto it = cells.find(a);
        if (it == cells.end()) {
          os << "  |  |";
        } else if (it->second->error) {
          os << " error |  |";
        } else {
          os << ' ' << format_g(it->second->accuracy_pct, 4) << " | "
             << format_g(it->second->time_s, 3) << " |";
        }
      }
      os << '\n';
    }
    os << "| " << q << " | Avg. |";
    for (auto a : algos) {
      const GroupAggregate* g = table.find(q, a);
      if (!g || g->trials == 0) {
        os << "  |  |";
      } else {
        os << ' ' << format_g(g->mean_accuracy_pct, 4) << " | "
           << format_g(g->mean_time_s, 3) << " |";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string emit_table(const ResultTable& table, TableFormat format) {
  switch (format) {
    case TableFormat::csv: return emit_csv(table);
    case TableFormat::json: return to_json(table).dump(2) + "\n";
    case TableFormat::markdown: return emit_markdown(table);
  }
  throw std::invalid_argument("unknown table format");
}

ScalingSeries emit_scaling_series(const ResultTable& table, int block_size) {
  std::set<int> distinct;
  for (const auto& g : table.aggregates) {
    if (g.trials > 0) distinct.insert(g.qubits);
  }
  if (distinct.size() < 2) {
    throw std::invalid_argument("scaling series need at least two qubit counts");
  }
  const int k = std::countr_zero(static_cast<unsigned>(block_size));

  // Aggregates sorted by r within each algorithm.
  auto groups = table.aggregates;
  std::stable_sort(groups.begin(), groups.end(),
                   [](const GroupAggregate& x, const GroupAggregate& y) {
                     return x.qubits < y.qubits;
                   });

  ScalingSeries s;
  s.runtime = nlohmann::json::object();
  s.layers = nlohmann::json::object();
  for (const auto& g : groups) {
    if (g.trials == 0) continue;
    const std::string name = algorithm_name(g.algorithm);
    auto& rt = s.runtime[name];
    auto& ly = s.layers[name];
    if (rt.is_null()) rt = {{"measured", nlohmann::json::array()}};
    if (ly.is_null()) {
      ly = {{"measured", nlohmann::json::array()},
            {"predicted", nlohmann::json::array()},
            {"oracle_calls", nlohmann::json::array()},
            {"oracle_calls_bound", nlohmann::json::array()}};
    }
    rt["measured"].push_back({g.qubits, g.mean_time_s});
    ly["measured"].push_back({g.qubits, g.mean_layers});
    ly["predicted"].push_back({g.qubits, predicted_layers(g.algorithm, g.qubits, k)});
    ly["oracle_calls"].push_back({g.qubits, g.mean_oracle_calls});
    ly["oracle_calls_bound"].push_back(
        {g.qubits, predict_cost(g.algorithm, g.qubits, block_size).oracle_calls});
  }
  return s;
}

}  // namespace gsearch
