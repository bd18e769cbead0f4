#pragma once

// Bit-position conventions shared by every module.
//
// Position 0 is the most significant bit of an r-bit basis index and position
// r-1 the least significant. Forward passes consume positions from 0 upward,
// backward passes from r-1 downward.

#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace gsearch {

using BasisIndex = std::uint64_t;

inline constexpr int kMaxQubits = 24;

/// All-ones mask over the low r bits.
constexpr BasisIndex full_mask(int r) {
  return r >= 64 ? ~BasisIndex{0} : (BasisIndex{1} << r) - 1;
}

constexpr BasisIndex position_bit(int r, int position) {
  return BasisIndex{1} << (r - 1 - position);
}

/// Inclusive range of bit positions [lo, hi]; empty when hi < lo.
struct BitRange {
  int lo = 0;
  int hi = -1;

  constexpr int width() const { return hi < lo ? 0 : hi - lo + 1; }
  constexpr bool empty() const { return hi < lo; }

  friend constexpr bool operator==(const BitRange&, const BitRange&) = default;
};

constexpr BitRange whole_range(int r) { return BitRange{0, r - 1}; }

/// Integer mask covering the positions of `range` in an r-bit index.
constexpr BasisIndex range_mask(int r, BitRange range) {
  if (range.empty()) return 0;
  const int width = range.width();
  const int shift = r - 1 - range.hi;
  return full_mask(width) << shift;
}

/// Reads the bits of `index` at `range` as a width-bit integer (MSB first).
constexpr BasisIndex extract_range(BasisIndex index, int r, BitRange range) {
  if (range.empty()) return 0;
  return (index >> (r - 1 - range.hi)) & full_mask(range.width());
}

/// Inverse of extract_range: places a width-bit value at `range`.
constexpr BasisIndex deposit_range(BasisIndex value, int r, BitRange range) {
  if (range.empty()) return 0;
  return (value & full_mask(range.width())) << (r - 1 - range.hi);
}

/// r-character binary string, position 0 first.
std::string to_bitstring(BasisIndex index, int r);

/// Gathers the bits of an index selected by a mask into a dense integer
/// (software PEXT). Three byte-wide tables cover indices up to 24 bits.
class BitCompressor {
 public:
  explicit BitCompressor(BasisIndex mask);

  BasisIndex operator()(BasisIndex index) const {
    return lut_[0][index & 0xFF] |
           (lut_[1][(index >> 8) & 0xFF] << shift_[1]) |
           (lut_[2][(index >> 16) & 0xFF] << shift_[2]);
  }

  int output_bits() const { return std::popcount(mask_); }

 private:
  BasisIndex mask_;
  std::array<std::array<BasisIndex, 256>, 3> lut_{};
  std::array<int, 3> shift_{};
};

}  // namespace gsearch
