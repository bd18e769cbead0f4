#include "gsearch/predictors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gsearch/errors.hpp"

namespace gsearch {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_power_of_two(BasisIndex n, const char* what) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument(std::string(what) + " must be a power of two >= 2");
  }
}

}  // namespace

double grk_query_count(BasisIndex n, int b) {
  if (b < 2) throw std::invalid_argument("branching factor must be >= 2");
  if (n % static_cast<BasisIndex>(b) != 0) {
    throw std::invalid_argument("branching factor must divide N");
  }
  const double bd = static_cast<double>(b);
  return kQuarterPi * std::sqrt(static_cast<double>(n)) * std::sqrt((bd - 1.0) / bd);
}

double bdgs_level_iterations(BasisIndex n, int b, int level) {
  check_power_of_two(n, "N");
  if (b < 2) throw std::invalid_argument("branching factor must be >= 2");
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  const double half = static_cast<double>(n) / 2.0;
  const double b_next = std::pow(static_cast<double>(b), level + 1);
  if (b_next > half) {
    throw std::invalid_argument("level " + std::to_string(level) +
                                " too deep for N=" + std::to_string(n));
  }
  const double b_here = std::pow(static_cast<double>(b), level);
  return kQuarterPi * (std::sqrt(half / b_here) - std::sqrt(half / b_next));
}

int bdgs_level_count(int r, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return r / (2 * k);
}

double bdgs_terminal_iterations(BasisIndex n, int b, int r, int k) {
  const int whole = bdgs_level_count(r, k);
  const double half = static_cast<double>(n) / 2.0;
  const double bd = static_cast<double>(b);
  const double reached = std::pow(bd, whole);
  const double full = std::pow(bd, static_cast<double>(r) / (2.0 * k));
  return kQuarterPi * (std::sqrt(half / reached) - std::sqrt(half / full));
}

double bdgs_total_queries(BasisIndex n, int b, int r, int k) {
  check_power_of_two(n, "N");
  if (n != (BasisIndex{1} << r)) throw std::invalid_argument("N must equal 2^r");
  if (k < 1 || b != (1 << k)) throw std::invalid_argument("b must equal 2^k");
  const double depth = static_cast<double>(r) / (2.0 * k);
  return std::numbers::pi / (4.0 * std::numbers::sqrt2) *
         std::sqrt(static_cast<double>(n)) *
         (1.0 - std::sqrt(1.0 / std::pow(static_cast<double>(b), depth)));
}

std::vector<BitRange> depth_first_segments(int r, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<BitRange> out;
  for (int j = 0; j < r; j += k) out.push_back({j, std::min(j + k - 1, r - 1)});
  return out;
}

std::vector<BitRange> forward_segments(int r, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int half = r / 2;
  std::vector<BitRange> out;
  for (int j = 0; j <= half - 1; j += k) {
    out.push_back({j, std::min(j + k - 1, half - 1)});
  }
  return out;
}

std::vector<BitRange> backward_segments(int r, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int half = r / 2;
  std::vector<BitRange> out;
  for (int j = r - 1; j >= half; j -= k) {
    out.push_back({std::max(j - k + 1, half), j});
  }
  return out;
}

int predicted_layers(Algorithm algorithm, int r, int k) {
  check_qubit_count(r);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  switch (algorithm) {
    case Algorithm::GS:
      return optimal_iterations(BasisIndex{1} << r);
    case Algorithm::DFGS:
      return (r + k - 1) / k;
    case Algorithm::BDGS:
      return static_cast<int>(std::max(forward_segments(r, k).size(),
                                       backward_segments(r, k).size()));
    case Algorithm::GRK:
      return plan_grk_schedule(r, 1 << k).oracle_calls();
  }
  return 0;
}

namespace {

// Amplitudes of the GRK state are constant on three classes: the target, the
// other members of the target block, and everything outside it.
struct GrkAmplitudes {
  double target;
  double block;
  double rest;
};

struct GrkModel {
  double n;
  double block_size;

  GrkAmplitudes global(GrkAmplitudes a) const {
    const double flipped = -a.target;
    const double mu =
        (flipped + (block_size - 1) * a.block + (n - block_size) * a.rest) / n;
    return {2 * mu - flipped, 2 * mu - a.block, 2 * mu - a.rest};
  }

  GrkAmplitudes local(GrkAmplitudes a) const {
    const double flipped = -a.target;
    const double mu = (flipped + (block_size - 1) * a.block) / block_size;
    // Non-target blocks are uniform, so their local inversion is the identity.
    return {2 * mu - flipped, 2 * mu - a.block, a.rest};
  }

  double block_probability(GrkAmplitudes a) const {
    return a.target * a.target + (block_size - 1) * a.block * a.block;
  }

  GrkAmplitudes start() const {
    const double u = 1.0 / std::sqrt(n);
    return {u, u, u};
  }
};

GrkModel make_model(int r, int b) {
  const auto part = BlockPartition::make(r, b);
  return GrkModel{std::ldexp(1.0, r), static_cast<double>(part.block_size)};
}

}  // namespace

double grk_block_probability(int r, int b, int global, int local) {
  const auto model = make_model(r, b);
  auto a = model.start();
  for (int i = 0; i < global; ++i) a = model.global(a);
  for (int i = 0; i < local; ++i) a = model.local(a);
  return model.block_probability(model.global(a));
}

GrkSchedule plan_grk_schedule(int r, int b) {
  const auto model = make_model(r, b);
  const BasisIndex n = BasisIndex{1} << r;
  const int budget = static_cast<int>(std::ceil(grk_query_count(n, b)));
  const double goal = success_probability(n, optimal_iterations(n));

  // best[t] = most probable split with global + local == t
  std::vector<GrkSchedule> best(static_cast<std::size_t>(budget) + 1);
  auto after_global = model.start();
  for (int g = 0; g <= budget; ++g) {
    auto a = after_global;
    for (int l = 0; g + l <= budget; ++l) {
      const double p = model.block_probability(model.global(a));
      auto& slot = best[static_cast<std::size_t>(g + l)];
      if (p > slot.block_probability) slot = GrkSchedule{g, l, p};
      a = model.local(a);
    }
    after_global = model.global(after_global);
  }

  for (const auto& s : best) {
    if (s.block_probability >= goal) return s;
  }
  return *std::max_element(best.begin(), best.end(),
                           [](const GrkSchedule& x, const GrkSchedule& y) {
                             return x.block_probability < y.block_probability;
                           });
}

PredictedCost predict_cost(Algorithm algorithm, int r, int b) {
  const auto part = BlockPartition::make(r, b);
  const BasisIndex n = BasisIndex{1} << r;
  PredictedCost cost{algorithm, r, b, part.k, 0.0, 0.0, 0};
  cost.layers = predicted_layers(algorithm, r, part.k);
  switch (algorithm) {
    case Algorithm::GS:
      cost.iterations = std::numbers::pi / (4.0 * grover_angle(n)) - 0.5;
      cost.oracle_calls = optimal_iterations(n);
      break;
    case Algorithm::GRK:
      cost.iterations = grk_query_count(n, b);
      cost.oracle_calls = std::ceil(cost.iterations) + 1.0;
      break;
    case Algorithm::DFGS: {
      double calls = 0.0;
      for (const auto& seg : depth_first_segments(r, part.k)) {
        calls += optimal_iterations(BasisIndex{1} << seg.width());
      }
      cost.iterations = calls;
      cost.oracle_calls = calls;
      break;
    }
    case Algorithm::BDGS:
      cost.iterations = bdgs_total_queries(n, b, r, part.k);
      cost.oracle_calls = cost.iterations;
      break;
  }
  return cost;
}

}  // namespace gsearch
