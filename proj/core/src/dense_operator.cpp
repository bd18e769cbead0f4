#include "gsearch/dense_operator.hpp"

#include <string>

#include "gsearch/errors.hpp"

namespace gsearch {

DenseMatrix::DenseMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, Amplitude{0.0, 0.0}) {}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw SizingError("matrix dimension mismatch");
  DenseMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Amplitude lhs = (*this)(i, k);
      if (lhs == Amplitude{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += lhs * rhs(k, j);
    }
  }
  return out;
}

std::vector<Amplitude> DenseMatrix::apply(std::span<const Amplitude> v) const {
  if (v.size() != dim_) throw SizingError("vector dimension mismatch");
  std::vector<Amplitude> out(dim_, Amplitude{0.0, 0.0});
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

namespace {

struct StepMatrix {
  std::size_t dim;
  BasisIndex all;

  DenseMatrix operator()(const PhaseFlipStep& step) const {
    // I - 2 * sum over matched |y><y|
    DenseMatrix m = DenseMatrix::identity(dim);
    for (std::size_t y = 0; y < dim; ++y) {
      if ((y & step.predicate.fixed_mask()) == step.predicate.fixed_value()) {
        m(y, y) -= 2.0;
      }
    }
    return m;
  }

  DenseMatrix operator()(const DiffusionStep& step) const {
    // I - 2 * sum over blocks |S_l><S_l|, optionally negated.
    const BasisIndex mask = step.block_mask & all;
    std::size_t block_size = 0;
    for (std::size_t y = 0; y < dim; ++y) {
      if ((y & mask) == 0) ++block_size;
    }
    const double outer = 1.0 / static_cast<double>(block_size);
    const double sign = step.inverted ? -1.0 : 1.0;
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double same_block = ((i & mask) == (j & mask)) ? 1.0 : 0.0;
        const double delta = i == j ? 1.0 : 0.0;
        m(i, j) = sign * (delta - 2.0 * outer * same_block);
      }
    }
    return m;
  }

  DenseMatrix operator()(const GlobalSignStep&) const {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = -1.0;
    return m;
  }
};

}  // namespace

DenseMatrix dense_operator_oracle(int r, const OperatorDescription& op) {
  if (r < 1 || r > kMaxDenseQubits) {
    throw SizingError("dense operator oracle limited to 1..6 qubits, got " +
                      std::to_string(r));
  }
  const std::size_t dim = std::size_t{1} << r;
  const StepMatrix build{dim, full_mask(r)};
  DenseMatrix total = DenseMatrix::identity(dim);
  for (const auto& step : op) total = std::visit(build, step) * total;
  return total;
}

void apply_operator(StateVector& state, const OperatorDescription& op) {
  for (const auto& step : op) {
    std::visit(
        [&state](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, PhaseFlipStep>) {
            phase_flip(state, s.predicate);
          } else if constexpr (std::is_same_v<T, DiffusionStep>) {
            if (s.inverted) {
              invert_about_mean(state, s.block_mask);
            } else {
              reflect_about_mean(state, s.block_mask);
            }
          } else {
            negate(state);
          }
        },
        step);
  }
}

}  // namespace gsearch
