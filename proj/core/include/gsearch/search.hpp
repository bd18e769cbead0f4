#pragma once

/**
 * @file search.hpp
 * @brief End-to-end search drivers: GS, GRK partial search, depth-first
 * layered search (DFGS) and bi-directional layered search (BDGS).
 *
 * DFGS and BDGS are built from one primitive, segment_partial_search, which
 * resolves a contiguous run of index bits with a small Grover search whose
 * oracle is conditioned on the bits found so far. After each segment search
 * the segment register is measured and the value recorded classically in
 * FoundBits; later oracles condition on those classical bits.
 *
 * Shot accounting for layered searches: shots sample the final register,
 * in which every segment holds its extracted (and, if sampled, verified)
 * value. A segment that is not exact costs extra attempts and queries
 * rather than accuracy; first_attempt_probability records how likely the
 * whole protocol was to succeed without retries.
 */

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <json.hpp>

#include "gsearch/bits.hpp"
#include "gsearch/grover_ops.hpp"
#include "gsearch/state_vector.hpp"

namespace gsearch {

/// Compact: each segment search runs on a fresh 2^width register.
/// Full: each segment search runs on the full 2^r register with found bits
/// fixed, the rest in superposition and diffusion restricted to the segment.
enum class RegisterMode { compact, full };

/// Execution order of the two BDGS passes. All orders give the same result;
/// `concurrent` runs the passes on two threads.
enum class PassOrder { forward_first, backward_first, interleaved, concurrent };

inline constexpr int kMaxFullRegisterQubits = 12;
inline constexpr int kSegmentRetryLimit = 8;

struct SearchConfig {
  Algorithm algorithm = Algorithm::GS;
  int r = 4;
  BasisIndex target = 0;
  int b = 4;
  int k = 2;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  RegisterMode mode = RegisterMode::compact;
  PassOrder pass_order = PassOrder::forward_first;

  /// Fills k from b (or b from k when b == 0) and validates.
  static SearchConfig make(Algorithm algorithm, int r, BasisIndex target,
                           int b = 4, std::uint64_t shots = 1024,
                           std::uint64_t seed = 0);

  /// Throws std::invalid_argument / SizingError on a bad config.
  void validate() const;
};

struct SegmentRecord {
  BitRange segment;
  BasisIndex value = 0;
  /// Distribution over segment values just before extraction.
  std::vector<double> distribution;
  int attempts = 1;
};

class FoundBits {
 public:
  FoundBits() = default;
  explicit FoundBits(int r) : r_(r) {}

  int num_qubits() const { return r_; }
  BasisIndex mask() const { return mask_; }
  BasisIndex value() const { return value_; }
  BitAssignment assignment() const { return {mask_, value_}; }
  const std::vector<SegmentRecord>& history() const { return history_; }

  bool complete() const { return mask_ == full_mask(r_); }

  /// Appends a resolved segment. Throws SchedulingError if it overlaps.
  void record(SegmentRecord record);

  /// Disjoint union, history concatenated (this first).
  FoundBits merged(const FoundBits& other) const;

 private:
  int r_ = 0;
  BasisIndex mask_ = 0;
  BasisIndex value_ = 0;
  std::vector<SegmentRecord> history_;
};

struct SearchOutcome {
  Algorithm algorithm = Algorithm::GS;
  int r = 0;
  BasisIndex target = 0;
  BasisIndex measured_index = 0;
  double success_fraction = 0.0;
  std::uint64_t target_hits = 0;
  std::uint64_t shots = 0;
  /// Probability mass the final register puts on measured_index.
  double final_probability = 0.0;
  /// Layered searches: product over segments of the pre-extraction
  /// probability of the extracted value. 1 when every segment is exact.
  double first_attempt_probability = 1.0;
  int layers = 0;
  std::uint64_t oracle_calls = 0;
  double wall_time = 0.0;
  std::uint64_t trial_seed = 0;
  ShotHistogram histogram;
  /// Layered searches only.
  std::vector<SegmentRecord> segments;
};

struct GrkOutcome {
  BasisIndex block = 0;
  BasisIndex target_block = 0;
  int global_iterations = 0;
  int local_iterations = 0;
  /// Statevector probability of the target block.
  double block_probability = 0.0;
  SearchOutcome outcome;
};

/// Working context for segment searches: register mode, sampling stream for
/// non-exact extractions and the running oracle-call total.
class SegmentSearcher {
 public:
  SegmentSearcher(int r, RegisterMode mode, std::uint64_t seed);

  int num_qubits() const { return r_; }
  RegisterMode mode() const { return mode_; }
  std::uint64_t oracle_calls() const { return oracle_calls_; }

  /// Runs one partial search and returns its pre-extraction distribution
  /// over segment values.
  std::vector<double> segment_distribution(OracleSpec& oracle);

  std::mt19937_64& rng() { return rng_; }
  void add_calls(std::uint64_t n) { oracle_calls_ += n; }

 private:
  int r_;
  RegisterMode mode_;
  std::mt19937_64 rng_;
  std::uint64_t oracle_calls_ = 0;
};

/// Resolves `segment` of `target` given `found`. Exact extractions (some value
/// above 1 - 1e-9) read the argmax; others sample, verify with one extra
/// classical query and retry up to kSegmentRetryLimit times, never drawing a
/// refuted value twice.
FoundBits segment_partial_search(SegmentSearcher& context, BitRange segment,
                                 BasisIndex target, const FoundBits& found);

SearchOutcome run_standard_grover(const SearchConfig& config);
GrkOutcome run_grk_partial(const SearchConfig& config);
SearchOutcome run_dfgs(const SearchConfig& config);
SearchOutcome run_bdgs(const SearchConfig& config);

/// Dispatches on config.algorithm (GRK reports block-level success).
SearchOutcome run_search(const SearchConfig& config);

bool verify_outcome(const SearchOutcome& outcome, const SearchConfig& config);

nlohmann::json to_json(const SearchOutcome& outcome);

}  // namespace gsearch
