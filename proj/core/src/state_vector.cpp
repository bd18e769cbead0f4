#include "gsearch/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gsearch/errors.hpp"

namespace gsearch {

BasisPredicate::BasisPredicate(BasisIndex fixed_mask, BasisIndex fixed_value)
    : fixed_mask_(fixed_mask), fixed_value_(fixed_value) {
  if (fixed_value & ~fixed_mask) {
    throw std::invalid_argument("BasisPredicate: value has bits outside mask");
  }
}

BasisPredicate BasisPredicate::single(int r, BasisIndex index) {
  return BasisPredicate(full_mask(r), index & full_mask(r));
}

BasisIndex BasisPredicate::match_count(int r) const {
  return BasisIndex{1} << (r - std::popcount(fixed_mask_ & full_mask(r)));
}

void check_qubit_count(int r) {
  if (r < 1 || r > kMaxQubits) {
    throw SizingError("qubit count " + std::to_string(r) +
                      " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int num_qubits, BasisIndex index) {
  StateVector s(num_qubits);
  if (index >= s.size()) throw SizingError("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int num_qubits,
                                         std::vector<Amplitude> amplitudes,
                                         double tolerance) {
  check_qubit_count(num_qubits);
  if (amplitudes.size() != (std::size_t{1} << num_qubits)) {
    throw SizingError("amplitude count " + std::to_string(amplitudes.size()) +
                      " is not 2^" + std::to_string(num_qubits));
  }
  StateVector s(num_qubits, std::move(amplitudes));
  if (std::abs(s.norm() - 1.0) > tolerance) {
    throw NormalizationError("amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return p;
}

StateVector uniform_state(int r) {
  check_qubit_count(r);
  const std::size_t n = std::size_t{1} << r;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  return StateVector::from_amplitudes(r, std::vector<Amplitude>(n, amp), 1e-12);
}

void phase_flip(StateVector& state, const BasisPredicate& pred) {
  const BasisIndex all = full_mask(state.num_qubits_);
  if (pred.fixed_mask() & ~all) {
    throw SizingError("predicate mask wider than the register");
  }
  const BasisIndex free_bits = all & ~pred.fixed_mask();
  // Enumerate every subset of the free bits.
  BasisIndex sub = 0;
  do {
    auto& a = state.amplitudes_[pred.fixed_value() | sub];
    a = -a;
    sub = (sub - free_bits) & free_bits;
  } while (sub != 0);
}

std::vector<Amplitude> block_means(const StateVector& state,
                                   BasisIndex block_mask) {
  const auto amps = state.amplitudes();
  block_mask &= full_mask(state.num_qubits());
  const int block_bits = std::popcount(block_mask);
  const double block_size =
      static_cast<double>(std::size_t{1} << (state.num_qubits() - block_bits));
  if (block_mask == 0) {
    Amplitude sum{0.0, 0.0};
    for (const auto& a : amps) sum += a;
    return {sum / block_size};
  }
  std::vector<Amplitude> sums(std::size_t{1} << block_bits, Amplitude{0.0, 0.0});
  const BitCompressor block_of(block_mask);
  for (std::size_t i = 0; i < amps.size(); ++i) sums[block_of(i)] += amps[i];
  for (auto& s : sums) s /= block_size;
  return sums;
}

namespace {

// a -> sign * (a - 2*mean) applied blockwise.
void reflect_blocks(std::span<Amplitude> amps, int r, BasisIndex block_mask,
                    const std::vector<Amplitude>& means, double sign) {
  block_mask &= full_mask(r);
  if (block_mask == 0) {
    const Amplitude two_mu = 2.0 * means.front();
    for (auto& a : amps) a = sign * (a - two_mu);
    return;
  }
  const BitCompressor block_of(block_mask);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = sign * (amps[i] - 2.0 * means[block_of(i)]);
  }
}

}  // namespace

void invert_about_mean(StateVector& state, BasisIndex block_mask) {
  const auto means = block_means(state, block_mask);
  reflect_blocks(state.amplitudes_, state.num_qubits_, block_mask, means, -1.0);
}

void reflect_about_mean(StateVector& state, BasisIndex block_mask) {
  const auto means = block_means(state, block_mask);
  reflect_blocks(state.amplitudes_, state.num_qubits_, block_mask, means, 1.0);
}

void negate(StateVector& state) {
  for (auto& a : state.amplitudes_) a = -a;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           BasisIndex mask) {
  mask &= full_mask(state.num_qubits());
  std::vector<double> out(std::size_t{1} << std::popcount(mask), 0.0);
  const BitCompressor value_of(mask);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out[value_of(i)] += std::norm(amps[i]);
  }
  return out;
}

std::uint64_t ShotHistogram::count(BasisIndex index) const {
  const auto it = counts.find(index);
  return it == counts.end() ? 0 : it->second;
}

BasisIndex ShotHistogram::mode() const {
  BasisIndex best = 0;
  std::uint64_t best_count = 0;
  for (const auto& [index, n] : counts) {
    if (n > best_count) {
      best = index;
      best_count = n;
    }
  }
  return best;
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights)
    : cumulative_(weights.size()) {
  if (weights.empty()) throw std::invalid_argument("empty distribution");
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    cumulative_[i] = running;
  }
  if (!(running > 0.0)) throw std::invalid_argument("distribution has no mass");
}

std::size_t DiscreteSampler::draw(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) {
    // u landed on the total exactly; take the last index with mass.
    auto last = cumulative_.size() - 1;
    while (last > 0 && cumulative_[last] == cumulative_[last - 1]) --last;
    return last;
  }
  return static_cast<std::size_t>(it - cumulative_.begin());
}

ShotHistogram sample(const StateVector& state, std::uint64_t shots,
                     std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw NormalizationError("cannot sample unnormalized state (norm " +
                             std::to_string(norm) + ")");
  }
  const auto probs = state.probabilities();
  const DiscreteSampler draw(probs);
  std::mt19937_64 rng(seed);
  ShotHistogram hist;
  hist.total_shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) ++hist.counts[draw(rng)];
  return hist;
}

nlohmann::json state_to_json(const StateVector& state) {
  auto out = nlohmann::json::array();
  for (const auto& a : state.amplitudes()) out.push_back({a.real(), a.imag()});
  return out;
}

StateVector state_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("state JSON must be a non-empty array");
  }
  std::vector<Amplitude> amps;
  amps.reserve(j.size());
  for (const auto& pair : j) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  const int r = std::countr_zero(amps.size());
  if (!std::has_single_bit(amps.size()) || r < 1) {
    throw SizingError("state JSON length is not a power of two >= 2");
  }
  return StateVector::from_amplitudes(r, std::move(amps));
}

}  // namespace gsearch
