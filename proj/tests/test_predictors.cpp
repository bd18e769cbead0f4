#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsearch/predictors.hpp"

using namespace gsearch;

namespace {
constexpr double kPi = std::numbers::pi;
BasisIndex pow2(int r) { return BasisIndex{1} << r; }
}  // namespace

TEST_SUITE("grk_query_count") {
  TEST_CASE("reference values") {
    CHECK(grk_query_count(16, 4) == doctest::Approx(2.7206990463513265).epsilon(1e-14));
    CHECK(grk_query_count(4, 4) == doctest::Approx(1.3603495231756633).epsilon(1e-14));
    CHECK_THROWS(grk_query_count(16, 1));
    CHECK_THROWS(grk_query_count(16, 3));
  }

  TEST_CASE("equals pi/4 sqrt(N) sqrt(1 - 1/b)") {
    for (int r = 2; r <= 24; ++r) {
      for (int b = 2; b <= (1 << std::min(r, 8)); b *= 2) {
        const double n = std::ldexp(1.0, r);
        const double expected = kPi / 4 * std::sqrt(n) * std::sqrt(1.0 - 1.0 / b);
        REQUIRE(std::abs(grk_query_count(pow2(r), b) - expected) < 1e-12);
      }
    }
  }
}

TEST_SUITE("bdgs predictors") {
  TEST_CASE("level iterations at N=256, b=4") {
    CHECK(bdgs_level_iterations(256, 4, 0) == doctest::Approx(4.442882938158366).epsilon(1e-14));
    CHECK(bdgs_level_iterations(256, 4, 1) == doctest::Approx(2.221441469079183).epsilon(1e-14));
    // b^(level+1) = 256 > N/2
    CHECK_THROWS(bdgs_level_iterations(256, 4, 3));
    CHECK_THROWS(bdgs_level_iterations(256, 4, -1));
  }

  TEST_CASE("total query bound reference values") {
    CHECK(bdgs_total_queries(16, 4, 4, 2) == doctest::Approx(1.1107207345395915).epsilon(1e-14));
    CHECK(bdgs_total_queries(pow2(20), 4, 20, 2) ==
          doctest::Approx(550.9174843316374).epsilon(1e-14));
    CHECK(bdgs_total_queries(256, 4, 8, 2) == doctest::Approx(6.664324407237549).epsilon(1e-14));
    CHECK_THROWS(bdgs_total_queries(16, 4, 5, 2));
    CHECK_THROWS(bdgs_total_queries(16, 8, 4, 2));
  }

  TEST_CASE("levels plus terminal term telescope to the total") {
    for (int k = 1; k <= 4; ++k) {
      const int b = 1 << k;
      for (int r = 2; r <= 24; ++r) {
        const BasisIndex n = pow2(r);
        double sum = bdgs_terminal_iterations(n, b, r, k);
        for (int level = 0; level < bdgs_level_count(r, k); ++level) {
          sum += bdgs_level_iterations(n, b, level);
        }
        REQUIRE(std::abs(sum - bdgs_total_queries(n, b, r, k)) < 1e-9);
        if (r % (2 * k) == 0) CHECK(bdgs_terminal_iterations(n, b, r, k) == 0.0);
      }
    }
  }

  TEST_CASE("bounded by pi/(4 sqrt 2) sqrt(N) and increasing in N") {
    for (int k = 1; k <= 4; ++k) {
      double previous = -1.0;
      for (int r = 2; r <= 24; ++r) {
        const double total = bdgs_total_queries(pow2(r), 1 << k, r, k);
        CHECK(total <= kPi / (4 * std::sqrt(2.0)) * std::sqrt(std::ldexp(1.0, r)));
        CHECK(total > previous);
        previous = total;
      }
    }
  }
}

TEST_SUITE("segment schedules") {
  TEST_CASE("bi-directional split at r=8, k=2") {
    const auto fwd = forward_segments(8, 2);
    const auto bwd = backward_segments(8, 2);
    REQUIRE(fwd.size() == 2);
    REQUIRE(bwd.size() == 2);
    CHECK(fwd[0] == BitRange{0, 1});
    CHECK(fwd[1] == BitRange{2, 3});
    CHECK(bwd[0] == BitRange{6, 7});
    CHECK(bwd[1] == BitRange{4, 5});
  }

  TEST_CASE("odd r narrows the last segment of a pass") {
    // r=7: forward covers 0..2, backward 6..3.
    const auto fwd = forward_segments(7, 2);
    const auto bwd = backward_segments(7, 2);
    REQUIRE(fwd.size() == 2);
    CHECK(fwd[1] == BitRange{2, 2});
    REQUIRE(bwd.size() == 2);
    CHECK(bwd[0] == BitRange{5, 6});
    CHECK(bwd[1] == BitRange{3, 4});
    const auto dfs = depth_first_segments(7, 2);
    REQUIRE(dfs.size() == 4);
    CHECK(dfs.back() == BitRange{6, 6});
  }

  TEST_CASE("passes tile the register without overlap") {
    for (int k = 1; k <= 4; ++k) {
      for (int r = 1; r <= 24; ++r) {
        BasisIndex covered = 0;
        for (const auto& list : {forward_segments(r, k), backward_segments(r, k)}) {
          for (const auto& seg : list) {
            REQUIRE(seg.width() >= 1);
            REQUIRE(seg.width() <= k);
            REQUIRE((covered & range_mask(r, seg)) == 0);
            covered |= range_mask(r, seg);
          }
        }
        REQUIRE(covered == full_mask(r));
      }
    }
  }
}

TEST_SUITE("predicted_layers") {
  TEST_CASE("20-qubit comparison") {
    CHECK(predicted_layers(Algorithm::BDGS, 20, 2) == 5);
    CHECK(predicted_layers(Algorithm::DFGS, 20, 2) == 10);
    CHECK(predicted_layers(Algorithm::GS, 20, 2) == 804);
  }

  TEST_CASE("ceil(r/2k) and ceil(r/k) for every r") {
    for (int k = 1; k <= 4; ++k) {
      for (int r = 1; r <= 24; ++r) {
        CHECK(predicted_layers(Algorithm::BDGS, r, k) == (r + 2 * k - 1) / (2 * k));
        CHECK(predicted_layers(Algorithm::DFGS, r, k) == (r + k - 1) / k);
      }
    }
  }
}

TEST_SUITE("GRK schedule") {
  TEST_CASE("stays within the query budget and beats full search") {
    for (int r = 2; r <= 16; ++r) {
      for (int b = 2; b <= std::min(1 << r, 16); b *= 2) {
        const auto plan = plan_grk_schedule(r, b);
        const auto budget = static_cast<int>(std::ceil(grk_query_count(pow2(r), b)));
        CHECK(plan.global + plan.local <= budget);
        CHECK(plan.oracle_calls() <= budget + 1);
        CHECK(plan.block_probability ==
              doctest::Approx(grk_block_probability(r, b, plan.global, plan.local)));
      }
    }
  }

  TEST_CASE("r=8, b=4 needs at most 12 queries") {
    const auto plan = plan_grk_schedule(8, 4);
    CHECK(plan.oracle_calls() <= 12);
    CHECK(plan.block_probability >= success_probability(256, 12));
  }
}

TEST_CASE("predict_cost") {
  const auto gs = predict_cost(Algorithm::GS, 20, 4);
  CHECK(gs.layers == 804);
  CHECK(std::abs(gs.iterations - kPi / 4 * 1024) <= 1.0);
  const auto bd = predict_cost(Algorithm::BDGS, 20, 4);
  CHECK(bd.layers == 5);
  CHECK(bd.oracle_calls == doctest::Approx(550.9174843316374));
  const auto df = predict_cost(Algorithm::DFGS, 20, 4);
  CHECK(df.layers == 10);
  CHECK(df.oracle_calls == 10.0);
  const auto grk = predict_cost(Algorithm::GRK, 8, 4);
  CHECK(grk.oracle_calls == 12.0);
  CHECK(grk.k == 2);
}
