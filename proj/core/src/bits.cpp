#include "gsearch/bits.hpp"

#include "gsearch/errors.hpp"

namespace gsearch {

std::string to_bitstring(BasisIndex index, int r) {
  std::string out(static_cast<std::size_t>(r), '0');
  for (int p = 0; p < r; ++p) {
    if (index & position_bit(r, p)) out[static_cast<std::size_t>(p)] = '1';
  }
  return out;
}

BitCompressor::BitCompressor(BasisIndex mask) : mask_(mask) {
  if (mask >> 24) throw SizingError("BitCompressor supports masks up to 24 bits");
  int offset = 0;
  for (int chunk = 0; chunk < 3; ++chunk) {
    const BasisIndex chunk_mask = (mask >> (8 * chunk)) & 0xFF;
    shift_[chunk] = offset;
    for (BasisIndex byte = 0; byte < 256; ++byte) {
      BasisIndex packed = 0;
      int out_bit = 0;
      for (int bit = 0; bit < 8; ++bit) {
        if (!((chunk_mask >> bit) & 1)) continue;
        packed |= ((byte >> bit) & 1) << out_bit;
        ++out_bit;
      }
      lut_[chunk][byte] = packed;
    }
    offset += std::popcount(chunk_mask);
  }
}

}  // namespace gsearch
