#include "gsearch/grover_ops.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>

#include "gsearch/errors.hpp"

namespace gsearch {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::GS: return "GS";
    case Algorithm::GRK: return "GRK";
    case Algorithm::DFGS: return "DFGS";
    case Algorithm::BDGS: return "BDGS";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "GS") return Algorithm::GS;
  if (upper == "GRK" || upper == "PGS") return Algorithm::GRK;
  if (upper == "DFGS") return Algorithm::DFGS;
  if (upper == "BDGS") return Algorithm::BDGS;
  return std::nullopt;
}

OracleSpec::OracleSpec(int r, BasisIndex target)
    : OracleSpec(r, target, whole_range(r), BitAssignment{}) {}

OracleSpec::OracleSpec(int r, BasisIndex target, BitRange active_segment,
                       BitAssignment determined)
    : r_(r), target_(target), segment_(active_segment), determined_(determined) {
  check_qubit_count(r);
  if (target > full_mask(r)) throw SizingError("oracle target out of range");
  if (!segment_.empty() && (segment_.lo < 0 || segment_.hi >= r)) {
    throw SizingError("active segment outside the register");
  }
  if (determined_.value & ~determined_.mask) {
    throw std::invalid_argument("determined value has bits outside its mask");
  }
  if (determined_.mask & ~full_mask(r)) {
    throw SizingError("determined mask wider than the register");
  }
  if (range_mask(r, segment_) & determined_.mask) {
    throw SchedulingError("active segment overlaps determined bits");
  }
}

BasisPredicate OracleSpec::predicate() const {
  const BasisIndex seg = range_mask(r_, segment_);
  return BasisPredicate(seg | determined_.mask,
                        (target_ & seg) | determined_.value);
}

void OracleSpec::apply(StateVector& state) {
  if (state.num_qubits() == r_) {
    phase_flip(state, predicate());
  } else if (state.num_qubits() == segment_.width()) {
    const int w = segment_.width();
    phase_flip(state,
               BasisPredicate::single(w, extract_range(target_, r_, segment_)));
  } else {
    throw SizingError("register of " + std::to_string(state.num_qubits()) +
                      " qubits matches neither the oracle width " +
                      std::to_string(r_) + " nor its segment width " +
                      std::to_string(segment_.width()));
  }
  ++queries_;
}

bool OracleSpec::query_segment_value(BasisIndex segment_value) {
  ++queries_;
  return segment_value == extract_range(target_, r_, segment_);
}

BlockPartition BlockPartition::make(int r, int b) {
  check_qubit_count(r);
  if (b < 2 || !std::has_single_bit(static_cast<unsigned>(b))) {
    throw std::invalid_argument("branching factor must be a power of two >= 2");
  }
  const int k = std::countr_zero(static_cast<unsigned>(b));
  if (k > r) throw std::invalid_argument("branching factor does not divide 2^r");
  return BlockPartition{r, b, k, BasisIndex{1} << (r - k)};
}

double grover_angle(BasisIndex search_dim) {
  if (search_dim < 2) throw std::invalid_argument("search dimension must be >= 2");
  return std::asin(1.0 / std::sqrt(static_cast<double>(search_dim)));
}

int optimal_iterations(BasisIndex search_dim) {
  const double t = std::numbers::pi / (4.0 * grover_angle(search_dim)) - 0.5;
  return std::max(1, static_cast<int>(std::lround(t)));
}

double success_probability(BasisIndex search_dim, int iterations) {
  const double s = std::sin((2.0 * iterations + 1.0) * grover_angle(search_dim));
  return s * s;
}

void grover_iteration(StateVector& state, OracleSpec& oracle,
                      BasisIndex diffusion_mask) {
  oracle.apply(state);
  reflect_about_mean(state, diffusion_mask);
  negate(state);
}

}  // namespace gsearch
