#pragma once

/**
 * @file state_vector.hpp
 * @brief Dense statevector and the amplitude-amplification kernels.
 *
 * Only what amplitude amplification needs is here: uniform preparation,
 * predicate phase flips, (block-restricted) reflections about the mean and
 * shot sampling. Kernels mutate in place and never renormalize.
 *
 * Block convention for the diffusion kernels: a block mask M splits the
 * index space into 2^popcount(M) blocks; the block id of an index is its
 * masked bits and the offset inside the block is its unmasked bits. M == 0
 * is a single global block.
 */

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "gsearch/bits.hpp"

namespace gsearch {

using Amplitude = std::complex<double>;

/// Phase-flip condition: basis states whose bits under `fixed_mask` equal
/// `fixed_value`. An empty mask matches every state.
class BasisPredicate {
 public:
  BasisPredicate() = default;
  BasisPredicate(BasisIndex fixed_mask, BasisIndex fixed_value);

  /// Predicate matching exactly one r-bit index.
  static BasisPredicate single(int r, BasisIndex index);

  BasisIndex fixed_mask() const { return fixed_mask_; }
  BasisIndex fixed_value() const { return fixed_value_; }

  bool matches(BasisIndex index) const {
    return (index & fixed_mask_) == fixed_value_;
  }

  /// Number of r-bit indices matched: 2^(r - popcount(mask)).
  BasisIndex match_count(int r) const;

 private:
  BasisIndex fixed_mask_ = 0;
  BasisIndex fixed_value_ = 0;
};

class StateVector {
 public:
  /// |0...0> on r qubits.
  explicit StateVector(int num_qubits);

  static StateVector basis(int num_qubits, BasisIndex index);

  /// Takes ownership of raw amplitudes; length must be 2^r and the norm
  /// within `tolerance` of 1.
  static StateVector from_amplitudes(int num_qubits,
                                     std::vector<Amplitude> amplitudes,
                                     double tolerance = 1e-10);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](BasisIndex index) const {
    return amplitudes_[index];
  }

  double norm() const;
  double probability(BasisIndex index) const {
    return std::norm(amplitudes_[index]);
  }
  std::vector<double> probabilities() const;

  friend void phase_flip(StateVector& state, const BasisPredicate& pred);
  friend void invert_about_mean(StateVector& state, BasisIndex block_mask);
  friend void reflect_about_mean(StateVector& state, BasisIndex block_mask);
  friend void negate(StateVector& state);

 private:
  StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Throws SizingError unless 1 <= r <= kMaxQubits.
void check_qubit_count(int r);

/// Every amplitude 1/sqrt(2^r).
StateVector uniform_state(int r);

/// Negates the amplitude of every basis state the predicate matches.
void phase_flip(StateVector& state, const BasisPredicate& pred);

/// a -> 2*mean_block - a inside each block. Equals -I_s^l; with an empty
/// mask this is the textbook global diffuser -I_s.
void invert_about_mean(StateVector& state, BasisIndex block_mask);

/// a -> a - 2*mean_block inside each block, i.e. I - 2|S_l><S_l| summed over
/// blocks.
void reflect_about_mean(StateVector& state, BasisIndex block_mask);

/// Global phase -1.
void negate(StateVector& state);

/// Per-block mean amplitude, indexed by compressed block id.
std::vector<Amplitude> block_means(const StateVector& state,
                                   BasisIndex block_mask);

/// Probability mass per compressed value of the bits under `mask`.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           BasisIndex mask);

struct ShotHistogram {
  std::map<BasisIndex, std::uint64_t> counts;
  std::uint64_t total_shots = 0;

  std::uint64_t count(BasisIndex index) const;
  /// Most frequent outcome; ties go to the smaller index.
  BasisIndex mode() const;
};

/// Draws `shots` independent measurements with probability |a|^2.
/// Deterministic in `seed`. Throws NormalizationError when the norm deviates
/// from 1 by more than 1e-8.
ShotHistogram sample(const StateVector& state, std::uint64_t shots,
                     std::uint64_t seed);

/// Draws from an arbitrary discrete distribution (weights need not sum to 1).
/// Shares the generator recipe used by sample().
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights);
  template <class Rng>
  std::size_t operator()(Rng& rng) const {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53 * cumulative_.back();
    return draw(u);
  }

 private:
  std::size_t draw(double u) const;
  std::vector<double> cumulative_;
};

/// JSON fixture format: array of [re, im] pairs.
nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

}  // namespace gsearch
