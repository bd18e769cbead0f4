#include "gsearch/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "gsearch/errors.hpp"
#include "gsearch/predictors.hpp"
#include "gsearch/seed.hpp"

namespace gsearch {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kExactThreshold = 1.0 - 1e-9;

// Stream labels for derive_seed.
constexpr std::uint64_t kForwardStream = 1;
constexpr std::uint64_t kBackwardStream = 2;
constexpr std::uint64_t kShotStream = 3;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Measures every segment register of a completed layered search.
void finish_layered(SearchOutcome& out, const FoundBits& found) {
  out.measured_index = found.value();
  out.segments = found.history();

  double p = 1.0;
  for (const auto& rec : out.segments) p *= rec.distribution[rec.value];
  out.first_attempt_probability = p;

  // Every segment register holds its verified value after extraction, so the
  // final register is the basis state found.value().
  out.final_probability = 1.0;
  out.histogram = ShotHistogram{};
  out.histogram.total_shots = out.shots;
  out.histogram.counts[out.measured_index] = out.shots;
  out.target_hits = out.histogram.count(out.target);
  out.success_fraction =
      static_cast<double>(out.target_hits) / static_cast<double>(out.shots);
}

SearchOutcome blank_outcome(const SearchConfig& config) {
  SearchOutcome out;
  out.algorithm = config.algorithm;
  out.r = config.r;
  out.target = config.target;
  out.shots = config.shots;
  out.trial_seed = config.seed;
  return out;
}

void require_algorithm(const SearchConfig& config, Algorithm expected) {
  config.validate();
  if (config.algorithm != expected) {
    throw std::invalid_argument("config is for " +
                                std::string(to_string(config.algorithm)) +
                                ", driver runs " + std::string(to_string(expected)));
  }
}

void check_disjoint(const FoundBits& forward, const FoundBits& backward) {
  if (forward.mask() & backward.mask()) {
    throw SchedulingError("forward and backward passes resolved the same bits");
  }
}

}  // namespace

SearchConfig SearchConfig::make(Algorithm algorithm, int r, BasisIndex target,
                                int b, std::uint64_t shots, std::uint64_t seed) {
  SearchConfig c;
  c.algorithm = algorithm;
  c.r = r;
  c.target = target;
  c.b = b;
  c.k = b > 0 ? std::countr_zero(static_cast<unsigned>(b)) : 0;
  c.shots = shots;
  c.seed = seed;
  c.validate();
  return c;
}

void SearchConfig::validate() const {
  check_qubit_count(r);
  if (target > full_mask(r)) {
    throw std::invalid_argument("target " + std::to_string(target) +
                                " out of range for " + std::to_string(r) +
                                " qubits");
  }
  if (k < 1 || k > r || b != (1 << k)) {
    throw std::invalid_argument("need b = 2^k with 1 <= k <= r (b=" +
                                std::to_string(b) + ", k=" + std::to_string(k) +
                                ")");
  }
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (mode == RegisterMode::full && r > kMaxFullRegisterQubits) {
    throw SizingError("full-register mode is limited to " +
                      std::to_string(kMaxFullRegisterQubits) + " qubits");
  }
}

void FoundBits::record(SegmentRecord rec) {
  const BasisIndex seg = range_mask(r_, rec.segment);
  if (seg & mask_) throw SchedulingError("segment already resolved");
  mask_ |= seg;
  value_ |= deposit_range(rec.value, r_, rec.segment);
  history_.push_back(std::move(rec));
}

FoundBits FoundBits::merged(const FoundBits& other) const {
  if (other.r_ != r_) throw SizingError("merging FoundBits of different widths");
  FoundBits out = *this;
  for (const auto& rec : other.history_) out.record(rec);
  return out;
}

SegmentSearcher::SegmentSearcher(int r, RegisterMode mode, std::uint64_t seed)
    : r_(r), mode_(mode), rng_(seed) {
  check_qubit_count(r);
  if (mode == RegisterMode::full && r > kMaxFullRegisterQubits) {
    throw SizingError("full-register mode is limited to " +
                      std::to_string(kMaxFullRegisterQubits) + " qubits");
  }
}

std::vector<double> SegmentSearcher::segment_distribution(OracleSpec& oracle) {
  const BitRange seg = oracle.active_segment();
  const int width = seg.width();
  const int iterations = optimal_iterations(BasisIndex{1} << width);

  if (mode_ == RegisterMode::compact) {
    StateVector reg = uniform_state(width);
    for (int t = 0; t < iterations; ++t) grover_iteration(reg, oracle, 0);
    return reg.probabilities();
  }

  // Found bits pinned, every other bit in uniform superposition.
  const BitAssignment det = oracle.determined();
  const std::size_t n = std::size_t{1} << r_;
  const double amp =
      1.0 / std::sqrt(std::ldexp(1.0, r_ - std::popcount(det.mask)));
  std::vector<Amplitude> amps(n, Amplitude{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & det.mask) == det.value) amps[i] = amp;
  }
  StateVector reg = StateVector::from_amplitudes(r_, std::move(amps));
  const BasisIndex seg_mask = range_mask(r_, seg);
  // Blocks are labelled by every bit outside the segment.
  const BasisIndex diffusion_mask = full_mask(r_) & ~seg_mask;
  for (int t = 0; t < iterations; ++t) grover_iteration(reg, oracle, diffusion_mask);
  return marginal_probabilities(reg, seg_mask);
}

FoundBits segment_partial_search(SegmentSearcher& context, BitRange segment,
                                 BasisIndex target, const FoundBits& found) {
  if (segment.empty()) return found;
  const int r = context.num_qubits();
  if (found.num_qubits() != r) throw SizingError("FoundBits width mismatch");
  if (segment.lo < 0 || segment.hi >= r) {
    throw SizingError("segment outside the register");
  }
  if (range_mask(r, segment) & found.mask()) {
    throw SchedulingError("segment [" + std::to_string(segment.lo) + "," +
                          std::to_string(segment.hi) +
                          "] overlaps already-found bits");
  }

  OracleSpec oracle(r, target, segment, found.assignment());
  SegmentRecord rec;
  rec.segment = segment;
  std::vector<double> remaining;
  for (int attempt = 1;; ++attempt) {
    rec.distribution = context.segment_distribution(oracle);
    rec.attempts = attempt;
    const std::size_t best = argmax(rec.distribution);
    if (rec.distribution[best] > kExactThreshold) {
      rec.value = best;
      break;
    }
    // Values refuted by earlier verifications are not drawn again.
    if (remaining.empty()) remaining = rec.distribution;
    const bool exhausted = std::all_of(remaining.begin(), remaining.end(),
                                       [](double x) { return x <= 0.0; });
    if (!exhausted) {
      rec.value = DiscreteSampler(remaining)(context.rng());
      if (oracle.query_segment_value(rec.value)) break;
      remaining[rec.value] = 0.0;
    }
    if (exhausted || attempt >= kSegmentRetryLimit) {
      context.add_calls(oracle.query_count());
      throw SearchFailure("segment [" + std::to_string(segment.lo) + "," +
                          std::to_string(segment.hi) + "] not resolved after " +
                          std::to_string(attempt) + " attempts");
    }
  }
  context.add_calls(oracle.query_count());

  FoundBits next = found;
  next.record(std::move(rec));
  return next;
}

SearchOutcome run_standard_grover(const SearchConfig& config) {
  require_algorithm(config, Algorithm::GS);
  SearchOutcome out = blank_outcome(config);
  const auto start = Clock::now();

  const int iterations = optimal_iterations(BasisIndex{1} << config.r);
  StateVector state = uniform_state(config.r);
  OracleSpec oracle(config.r, config.target);
  for (int t = 0; t < iterations; ++t) grover_iteration(state, oracle, 0);
  out.histogram = sample(state, config.shots, config.seed);

  out.wall_time = seconds_since(start);
  out.measured_index = out.histogram.mode();
  out.final_probability = state.probability(out.measured_index);
  out.target_hits = out.histogram.count(config.target);
  out.success_fraction =
      static_cast<double>(out.target_hits) / static_cast<double>(config.shots);
  out.layers = iterations;
  out.oracle_calls = oracle.query_count();
  return out;
}

GrkOutcome run_grk_partial(const SearchConfig& config) {
  require_algorithm(config, Algorithm::GRK);
  const auto part = BlockPartition::make(config.r, config.b);
  GrkOutcome grk;
  grk.outcome = blank_outcome(config);
  SearchOutcome& out = grk.outcome;
  const auto start = Clock::now();

  const GrkSchedule plan = plan_grk_schedule(config.r, config.b);
  StateVector state = uniform_state(config.r);
  OracleSpec oracle(config.r, config.target);
  for (int t = 0; t < plan.global; ++t) grover_iteration(state, oracle, 0);
  for (int t = 0; t < plan.local; ++t) {
    grover_iteration(state, oracle, part.block_id_mask());
  }
  grover_iteration(state, oracle, 0);  // global cleanup
  out.histogram = sample(state, config.shots, config.seed);
  out.wall_time = seconds_since(start);

  std::vector<std::uint64_t> per_block(static_cast<std::size_t>(part.b), 0);
  for (const auto& [index, n] : out.histogram.counts) {
    per_block[part.block_of(index)] += n;
  }
  grk.block = static_cast<BasisIndex>(
      std::max_element(per_block.begin(), per_block.end()) - per_block.begin());
  grk.target_block = part.block_of(config.target);
  grk.global_iterations = plan.global;
  grk.local_iterations = plan.local;
  grk.block_probability =
      marginal_probabilities(state, part.block_id_mask())[grk.target_block];

  out.measured_index = out.histogram.mode();
  out.final_probability = state.probability(out.measured_index);
  out.target_hits = per_block[grk.target_block];
  out.success_fraction =
      static_cast<double>(out.target_hits) / static_cast<double>(config.shots);
  out.oracle_calls = oracle.query_count();
  out.layers = static_cast<int>(out.oracle_calls);
  return grk;
}

SearchOutcome run_dfgs(const SearchConfig& config) {
  require_algorithm(config, Algorithm::DFGS);
  SearchOutcome out = blank_outcome(config);
  const auto start = Clock::now();

  SegmentSearcher context(config.r, config.mode,
                          derive_seed(config.seed, kForwardStream));
  FoundBits found(config.r);
  const auto segments = depth_first_segments(config.r, config.k);
  for (const auto& seg : segments) {
    found = segment_partial_search(context, seg, config.target, found);
  }
  if (!found.complete()) throw std::logic_error("DFGS left bits unresolved");

  out.layers = static_cast<int>(segments.size());
  out.oracle_calls = context.oracle_calls();
  finish_layered(out, found);
  out.wall_time = seconds_since(start);
  return out;
}

SearchOutcome run_bdgs(const SearchConfig& config) {
  require_algorithm(config, Algorithm::BDGS);
  SearchOutcome out = blank_outcome(config);
  const auto start = Clock::now();

  const auto fwd_segments = forward_segments(config.r, config.k);
  const auto bwd_segments = backward_segments(config.r, config.k);
  SegmentSearcher fwd_context(config.r, config.mode,
                              derive_seed(config.seed, kForwardStream));
  SegmentSearcher bwd_context(config.r, config.mode,
                              derive_seed(config.seed, kBackwardStream));
  FoundBits fwd(config.r);
  FoundBits bwd(config.r);

  auto forward_step = [&](std::size_t i) {
    fwd = segment_partial_search(fwd_context, fwd_segments[i], config.target, fwd);
  };
  auto backward_step = [&](std::size_t i) {
    bwd = segment_partial_search(bwd_context, bwd_segments[i], config.target, bwd);
  };
  auto forward_pass = [&] {
    for (std::size_t i = 0; i < fwd_segments.size(); ++i) forward_step(i);
  };
  auto backward_pass = [&] {
    for (std::size_t i = 0; i < bwd_segments.size(); ++i) backward_step(i);
  };

  switch (config.pass_order) {
    case PassOrder::forward_first:
      for (std::size_t i = 0; i < fwd_segments.size(); ++i) {
        forward_step(i);
        check_disjoint(fwd, bwd);
      }
      for (std::size_t i = 0; i < bwd_segments.size(); ++i) {
        backward_step(i);
        check_disjoint(fwd, bwd);
      }
      break;
    case PassOrder::backward_first:
      for (std::size_t i = 0; i < bwd_segments.size(); ++i) {
        backward_step(i);
        check_disjoint(fwd, bwd);
      }
      for (std::size_t i = 0; i < fwd_segments.size(); ++i) {
        forward_step(i);
        check_disjoint(fwd, bwd);
      }
      break;
    case PassOrder::interleaved: {
      const std::size_t layers = std::max(fwd_segments.size(), bwd_segments.size());
      for (std::size_t i = 0; i < layers; ++i) {
        if (i < fwd_segments.size()) forward_step(i);
        if (i < bwd_segments.size()) backward_step(i);
        check_disjoint(fwd, bwd);
      }
      break;
    }
    case PassOrder::concurrent: {
      std::exception_ptr backward_error;
      std::thread worker([&] {
        try {
          backward_pass();
        } catch (...) {
          backward_error = std::current_exception();
        }
      });
      try {
        forward_pass();
      } catch (...) {
        worker.join();
        throw;
      }
      worker.join();
      if (backward_error) std::rethrow_exception(backward_error);
      check_disjoint(fwd, bwd);
      break;
    }
  }

  const FoundBits found = fwd.merged(bwd);
  if (!found.complete()) throw std::logic_error("BDGS left bits unresolved");

  out.layers = static_cast<int>(std::max(fwd_segments.size(), bwd_segments.size()));
  out.oracle_calls = fwd_context.oracle_calls() + bwd_context.oracle_calls();
  finish_layered(out, found);
  out.wall_time = seconds_since(start);
  return out;
}

SearchOutcome run_search(const SearchConfig& config) {
  switch (config.algorithm) {
    case Algorithm::GS: return run_standard_grover(config);
    case Algorithm::GRK: return run_grk_partial(config).outcome;
    case Algorithm::DFGS: return run_dfgs(config);
    case Algorithm::BDGS: return run_bdgs(config);
  }
  throw std::invalid_argument("unknown algorithm");
}

bool verify_outcome(const SearchOutcome& outcome, const SearchConfig& config) {
  return outcome.measured_index == config.target;
}

nlohmann::json to_json(const SearchOutcome& outcome) {
  nlohmann::json j;
  j["algorithm"] = std::string(to_string(outcome.algorithm));
  j["qubits"] = outcome.r;
  j["target"] = outcome.target;
  j["measured_index"] = outcome.measured_index;
  j["success_fraction"] = outcome.success_fraction;
  j["target_hits"] = outcome.target_hits;
  j["shots"] = outcome.shots;
  j["final_probability"] = outcome.final_probability;
  j["first_attempt_probability"] = outcome.first_attempt_probability;
  j["layers"] = outcome.layers;
  j["oracle_calls"] = outcome.oracle_calls;
  j["wall_time_s"] = outcome.wall_time;
  j["trial_seed"] = outcome.trial_seed;
  auto hist = nlohmann::json::array();
  for (const auto& [index, n] : outcome.histogram.counts) hist.push_back({index, n});
  j["histogram"] = hist;
  auto segs = nlohmann::json::array();
  for (const auto& rec : outcome.segments) {
    segs.push_back({{"lo", rec.segment.lo},
                    {"hi", rec.segment.hi},
                    {"value", rec.value},
                    {"probability", rec.distribution[rec.value]},
                    {"attempts", rec.attempts}});
  }
  j["segments"] = segs;
  return j;
}

}  // namespace gsearch
