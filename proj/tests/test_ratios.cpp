#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "gasketbvp/ratios.hpp"

using namespace gasketbvp;

namespace {

DyadicSequence random_seq(std::mt19937_64& rng, int len, int max_gap = 4) {
  std::vector<int> exps;
  int n = 0;
  for (int k = 0; k < len; ++k) {
    n += 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gap));
    exps.push_back(n);
  }
  return DyadicSequence(exps, len);
}

}  // namespace

TEST_CASE("m0 golden value at x = 1") {
  auto deep = DyadicSequence::periodic({1}, 40);
  CHECK(m0(deep).value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m0_exact_periodic({1}) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("m0 decay for {1, n2}") {
  // bounded above and below by multiples of (5/3)^{n1 - n2}
  double prev = 1.0;
  for (int n2 : {4, 8, 16, 32}) {
    double v = m0_truncated(DyadicSequence({1, n2}, 2));
    double scale = std::pow(5.0 / 3.0, 1 - n2);
    CHECK(v / scale > 0.2);
    CHECK(v / scale < 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("m0 truncation error bound is observable") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    auto seq = random_seq(rng, 8);
    auto shorter = DyadicSequence(
        std::vector<int>(seq.exponents().begin(), seq.exponents().end() - 1), 7);
    auto r = m0(seq);
    CHECK(std::fabs(r.value - m0(shorter).value) <= r.error_bound + 1e-15);
  }
}

TEST_CASE("ratio triple identities") {
  auto t = ratio_triple_from_m0(0.3);
  CHECK(t.m1 == doctest::Approx(91.0 / 160.0).epsilon(1e-14));
  CHECK(t.m2 == doctest::Approx(21.0 / 160.0).epsilon(1e-14));

  auto zero = ratio_triple_from_m0(0.0);
  CHECK(zero.m1 == doctest::Approx(1.0));
  CHECK(zero.m2 == doctest::Approx(0.0));

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    auto seq = random_seq(rng, 2 + static_cast<int>(rng() % 19));
    auto r = ratio_triple(seq);
    CHECK(r.m0 >= 0.0);
    CHECK(r.m0 <= 0.3 + 1e-12);
    CHECK(std::fabs(r.m0 + r.m1 + r.m2 - 1.0) < 1e-12);
    CHECK(r.m1 - r.m2 >= 7.0 / 16.0 - 1e-12);
  }
}

TEST_CASE("Eq 2.26 consistency") {
  auto deep = DyadicSequence::periodic({1}, 40);
  CHECK(consistency_2_26(deep) < 1e-10);

  CHECK(consistency_2_26(DyadicSequence::periodic({2, 5, 6, 9}, 30)) < 1e-9);

  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    auto seq = random_seq(rng, 3 + static_cast<int>(rng() % 18));
    double res = consistency_2_26(seq);
    double err = m0(seq).error_bound;
    CHECK(res <= 10.0 * err + 1e-13);
  }
}

TEST_CASE("ratio identity runtime") {
  std::mt19937_64 rng(2024);
  auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    auto seq = random_seq(rng, 2 + static_cast<int>(rng() % 19));
    auto r = ratio_triple(seq);
    CHECK(std::fabs(r.m0 + r.m1 + r.m2 - 1.0) < 1e-12);
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(std::chrono::duration<double>(elapsed).count() < 1.0);
}

TEST_CASE("dtn multiplier golden values") {
  auto deep = DyadicSequence::periodic({1}, 40);
  CHECK(dtn_multiplier(deep, 0) == doctest::Approx(35.0 / 8.0).epsilon(1e-10));
  // 6 * 2 * (5/3)^2 * (1 - 3/10) / (2*3/10 + 1) = 175/12
  CHECK(dtn_multiplier(deep, 1) == doctest::Approx(175.0 / 12.0).epsilon(1e-10));
  CHECK_THROWS(dtn_multiplier(DyadicSequence({1, 3}, 2), 2));

  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    auto seq = random_seq(rng, 6);
    for (int m = 0; m < 4; ++m) CHECK(dtn_multiplier(seq, m) > 0.0);
  }
}

TEST_CASE("exact periodic mode agrees with deep truncation") {
  for (const auto& block : std::vector<std::vector<int>>{{1}, {2}, {1, 3}, {2, 3, 7}}) {
    auto gaps = DyadicSequence::periodic(block, static_cast<int>(block.size()) + 1).gaps();
    double exact = m0_exact_periodic(gaps);
    double deep = m0_truncated(DyadicSequence::periodic(block, 80));
    CHECK(exact == doctest::Approx(deep).epsilon(1e-12));
    CHECK(exact >= 0.0);
    CHECK(exact <= 0.3);
  }
}

TEST_CASE("ratio table") {
  auto seq = DyadicSequence({1, 3, 5, 7, 9, 11, 13, 15}, 8);
  auto table = ratio_table(seq);
  REQUIRE(table.depth == 8);
  REQUIRE(table.m0_per_level.size() == 8);
  CHECK(table.m0_per_level[0] == doctest::Approx(m0(seq).value));
  CHECK(table.est_error[0] == doctest::Approx(m0(seq).error_bound));
  for (double v : table.m0_per_level) {
    CHECK(v >= 0.0);
    CHECK(v <= 0.3 + 1e-12);
  }
  // final level is the length-1 tail with m0 = 0 by convention
  CHECK(table.m0_per_level.back() == 0.0);
}
