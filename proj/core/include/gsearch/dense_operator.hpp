#pragma once

// Brute-force operator oracle for small registers. Matrices are assembled
// from the algebraic definitions (diagonal sign matrices, I - 2|S_l><S_l|
// outer products) and never call the statevector kernels, so tests can pit
// the two routes against each other.

#include <span>
#include <variant>
#include <vector>

#include "gsearch/state_vector.hpp"

namespace gsearch {

inline constexpr int kMaxDenseQubits = 6;

struct PhaseFlipStep {
  BasisPredicate predicate;
};

/// Blockwise reflection. `inverted` selects 2*mean - a (the kernel
/// invert_about_mean); otherwise a - 2*mean (reflect_about_mean).
struct DiffusionStep {
  BasisIndex block_mask = 0;
  bool inverted = true;
};

struct GlobalSignStep {};

using OperatorStep = std::variant<PhaseFlipStep, DiffusionStep, GlobalSignStep>;

/// Steps apply in order: steps[0] acts first.
using OperatorDescription = std::vector<OperatorStep>;

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim);
  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Amplitude& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  DenseMatrix operator*(const DenseMatrix& rhs) const;
  std::vector<Amplitude> apply(std::span<const Amplitude> v) const;

 private:
  std::size_t dim_;
  std::vector<Amplitude> data_;
};

/// Explicit 2^r x 2^r matrix of the composed operator. r > 6 is rejected.
DenseMatrix dense_operator_oracle(int r, const OperatorDescription& op);

/// Same operator through the in-place kernels.
void apply_operator(StateVector& state, const OperatorDescription& op);

}  // namespace gsearch
