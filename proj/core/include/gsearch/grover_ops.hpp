#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gsearch/bits.hpp"
#include "gsearch/state_vector.hpp"

namespace gsearch {

enum class Algorithm { GS, GRK, DFGS, BDGS };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Bits already fixed by earlier searches: positions under `mask` hold
/// `value`.
struct BitAssignment {
  BasisIndex mask = 0;
  BasisIndex value = 0;

  friend bool operator==(const BitAssignment&, const BitAssignment&) = default;
};

/// Single-target phase oracle with query accounting.
///
/// Flips basis states that agree with `target` on the active segment and
/// with `determined` on its mask. A full-range segment with nothing
/// determined is the textbook I_x = I - 2|x><x|.
///
/// The oracle can act on the full r-qubit register or on a compact register
/// that holds only the active segment's bits (determined bits are then
/// classical and already fixed, so only the segment comparison remains).
class OracleSpec {
 public:
  OracleSpec(int r, BasisIndex target);
  OracleSpec(int r, BasisIndex target, BitRange active_segment,
             BitAssignment determined);

  int num_qubits() const { return r_; }
  BasisIndex target() const { return target_; }
  BitRange active_segment() const { return segment_; }
  const BitAssignment& determined() const { return determined_; }

  /// Phase-flip condition on the full register.
  BasisPredicate predicate() const;

  /// One query. Dispatches on the register width: r qubits for the full
  /// register, segment width for the compact register.
  void apply(StateVector& state);

  /// One classical query: does `segment_value` match the target on the
  /// active segment?
  bool query_segment_value(BasisIndex segment_value);

  std::uint64_t query_count() const { return queries_; }

 private:
  int r_;
  BasisIndex target_;
  BitRange segment_;
  BitAssignment determined_;
  std::uint64_t queries_ = 0;
};

/// Split of a 2^r index space into b = 2^k equal blocks of size N/b.
struct BlockPartition {
  int r = 0;
  int b = 0;
  int k = 0;
  BasisIndex block_size = 0;

  static BlockPartition make(int r, int b);

  /// Mask selecting the block-id bits (the k most significant positions).
  BasisIndex block_id_mask() const { return range_mask(r, BitRange{0, k - 1}); }
  BasisIndex block_of(BasisIndex index) const { return index >> (r - k); }
};

/// arcsin(1/sqrt(M)): the rotation angle of one iteration over M states.
double grover_angle(BasisIndex search_dim);

/// round(pi/(4 w) - 1/2) with a floor of 1.
int optimal_iterations(BasisIndex search_dim);

/// sin^2((2t+1) w): success probability after t iterations over M states.
double success_probability(BasisIndex search_dim, int iterations);

/// One Grover iteration -I_s^l I_x: oracle phase flip, reflection about the
/// (block) mean, then the global sign.
void grover_iteration(StateVector& state, OracleSpec& oracle,
                      BasisIndex diffusion_mask);

}  // namespace gsearch
