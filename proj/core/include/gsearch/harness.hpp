#pragma once

// Experiment runner: trials x shots over a grid of qubit counts and
// algorithms, with accuracy/time aggregation and table/plot-data export.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsearch/grover_ops.hpp"

namespace gsearch {

enum class TargetPolicy { fixed, random_per_trial };

struct ExperimentPlan {
  std::vector<int> qubits{4, 8, 16, 20};
  std::vector<Algorithm> algorithms{Algorithm::GS, Algorithm::DFGS, Algorithm::BDGS};
  int trials = 5;
  std::uint64_t shots = 1024;
  std::uint64_t base_seed = 0;
  TargetPolicy target_policy = TargetPolicy::random_per_trial;
  std::optional<BasisIndex> target;  // required for TargetPolicy::fixed
  int block_size = 4;
  int jobs = 1;

  /// Throws std::invalid_argument on an invalid plan.
  void validate() const;
};

struct ResultRow {
  int qubits = 0;
  Algorithm algorithm = Algorithm::GS;
  int trial = 0;  // 1-based
  double accuracy_pct = 0.0;
  double time_s = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t shots = 0;
  int layers = 0;
  std::uint64_t oracle_calls = 0;
  BasisIndex target = 0;
  BasisIndex measured = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> error;
};

struct GroupAggregate {
  int qubits = 0;
  Algorithm algorithm = Algorithm::GS;
  int trials = 0;  // successful trials
  int errors = 0;
  std::uint64_t hits = 0;
  std::uint64_t shots = 0;
  double mean_accuracy_pct = 0.0;
  double mean_time_s = 0.0;
  double mean_layers = 0.0;
  double mean_oracle_calls = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<GroupAggregate> aggregates;

  bool has_errors() const;
  const GroupAggregate* find(int qubits, Algorithm algorithm) const;
};

/// Seed of one (r, algorithm, trial) cell; independent of execution order.
std::uint64_t cell_seed(std::uint64_t base_seed, int qubits, Algorithm algorithm,
                        int trial);

/// Runs every cell. Failing cells become error rows; the plan never aborts.
ResultTable run_plan(const ExperimentPlan& plan);

/// Recomputes aggregates from rows, in first-appearance order of groups.
/// Mean accuracy is summed hits * 100 / summed shots (one division).
std::vector<GroupAggregate> aggregate_rows(const std::vector<ResultRow>& rows);

enum class TableFormat { csv, json, markdown };
std::optional<TableFormat> parse_table_format(std::string_view name);

/// csv: `qubits,algorithm,trial,accuracy_pct,time_s` (error rows leave the
/// numeric fields empty). json mirrors ResultTable. markdown renders one row
/// per trial and an Avg. row per qubit group, one column pair per algorithm.
std::string emit_table(const ResultTable& table, TableFormat format);

nlohmann::json to_json(const ResultTable& table);

/// Plot data for runtime-vs-r and layers-vs-r. Each algorithm carries
/// measured (r, value) pairs; the layers series also carries the
/// closed-form prediction. Requires at least two distinct qubit counts.
struct ScalingSeries {
  nlohmann::json runtime;
  nlohmann::json layers;
};

ScalingSeries emit_scaling_series(const ResultTable& table, int block_size);

}  // namespace gsearch
