#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace compsep;
using Catch::Approx;
using compsep::testing::points_from;
using compsep::testing::table_one;

TEST_CASE("estimate_group_rates counts each stratum", "[pointwise]") {
  // (y,c,a): (1,1,1) (1,0,1) (1,1,0) (0,0,0) (0,0,1)
  const auto s = points_from("y,c,a\n1,1,1\n1,0,1\n1,1,0\n0,0,0\n0,0,1\n");
  const auto r = estimate_group_rates(s);
  CHECK(r.tpr_a1 == 0.5);
  CHECK(r.tpr_a0 == 1.0);
  CHECK(r.fpr_a0 == 0.0);
  CHECK(r.fpr_a1 == 0.0);
  CHECK(r.n_t1 == 2);
  CHECK(r.n_t0 == 1);
  CHECK(r.n_f1 == 1);
  CHECK(r.n_f0 == 1);
}

TEST_CASE("an empty stratum raises a degenerate-stratum error naming it", "[pointwise]") {
  const auto s = points_from("y,c,a\n1,1,1\n1,0,1\n1,1,0\n0,0,0\n");
  try {
    estimate_group_rates(s);
    FAIL("expected DegenerateStratum");
  } catch (const DegenerateStratum& e) {
    CHECK(e.y() == 0);
    CHECK(e.a() == 1);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("(Y=0,A=1)"));
  }
}

TEST_CASE("perfect predictor has unit TPR and zero FPR", "[pointwise]") {
  const auto s = points_from("y,c,a\n1,1,1\n1,1,0\n0,0,1\n0,0,0\n1,1,1\n0,0,0\n");
  const auto r = estimate_group_rates(s);
  CHECK(r.tpr_a1 == 1.0);
  CHECK(r.tpr_a0 == 1.0);
  CHECK(r.fpr_a1 == 0.0);
  CHECK(r.fpr_a0 == 0.0);
  const auto g = eod_aod(r);
  CHECK(g.eod == 0.0);
  CHECK(g.aod == 0.0);
}

TEST_CASE("group rates reject continuous point sets", "[pointwise]") {
  const auto s = points_from("y,c,a\n2.5,1,1\n", LabelMode::continuous);
  CHECK_THROWS_AS(estimate_group_rates(s), std::invalid_argument);
}

TEST_CASE("sampled TPR(A=1) of f_theta0 lies within 3 sigma of 0.8", "[pointwise]") {
  const std::size_t n = 10'000;
  auto rng = make_engine(7);
  const auto s = sample_point_set(table_one(0), n, rng);
  const auto r = estimate_group_rates(s);
  const double sigma = std::sqrt(0.58 / n);
  CHECK(std::abs(r.tpr_a1 - 0.8) < 3.0 * sigma);
}

TEST_CASE("eod_aod examples", "[pointwise]") {
  AnalyticGroupRates equal;
  equal.tpr_a1 = equal.tpr_a0 = 0.7;
  equal.fpr_a1 = equal.fpr_a0 = 0.2;
  CHECK(eod_aod(equal).eod == 0.0);
  CHECK(eod_aod(equal).aod == 0.0);

  const auto f2 = eod_aod(analytic_group_rates(table_one(2)));
  CHECK(f2.eod == Approx(0.080).margin(5e-4));

  // f_theta1: EOD = 0 and FPR gap = -0.080, so AOD = (0 - 0.080) / 2.
  const auto f1 = eod_aod(analytic_group_rates(table_one(1)));
  CHECK(f1.eod == Approx(0.0).margin(1e-12));
  CHECK(f1.aod == Approx(-0.040).margin(1e-12));
}

TEST_CASE("analytic_group_rates examples", "[pointwise]") {
  const auto f0 = analytic_group_rates(table_one(0));
  CHECK(f0.tpr_a1 == Approx(0.8).epsilon(1e-12));
  CHECK(f0.n_t1 == Approx(0.275).epsilon(1e-12));

  const auto f1 = analytic_group_rates(table_one(1));
  CHECK(f1.fpr_a1 - f1.fpr_a0 == Approx(-0.080).margin(1e-12));

  const auto u = analytic_group_rates(JointDistribution::uniform());
  CHECK(u.tpr_a1 == 0.5);
  CHECK(u.tpr_a0 == 0.5);
  CHECK(u.fpr_a1 == 0.5);
  CHECK(u.fpr_a0 == 0.5);
}

TEST_CASE("group rate invariants on random point sets", "[pointwise][property]") {
  std::mt19937_64 rng(99);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledPoint> pts;
    const std::size_t n = 8 + rng() % 200;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back({coin(rng) ? 1.0 : 0.0, coin(rng) ? 1.0 : 0.0, coin(rng) ? 1 : 0});
    // make every stratum nonempty
    pts.push_back({1, 0, 1});
    pts.push_back({1, 1, 0});
    pts.push_back({0, 0, 1});
    pts.push_back({0, 1, 0});
    const PointSet s(pts, LabelMode::binary);
    const auto r = estimate_group_rates(s);
    CHECK(r.n_t1 + r.n_t0 + r.n_f1 + r.n_f0 == s.size());
    for (double rate : {r.tpr_a1, r.tpr_a0, r.fpr_a1, r.fpr_a0}) {
      CHECK(rate >= 0.0);
      CHECK(rate <= 1.0);
    }
    const auto g = eod_aod(r);
    CHECK(std::abs(g.eod) <= 1.0);
    CHECK(std::abs(g.aod) <= 1.0);
  }
}

TEST_CASE("estimated rates converge to analytic rates as n grows", "[pointwise][property]") {
  const std::size_t replicates = 200;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto d = table_one(k);
    const auto truth = analytic_group_rates(d);
    double mad_small = 0.0, mad_large = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      for (std::size_t n : {1'000u, 10'000u}) {
        auto rng = make_engine(1000 + k, r * 2 + (n == 1'000 ? 0 : 1));
        const auto est = estimate_group_rates(sample_point_set(d, n, rng));
        const double dev = std::abs(est.tpr_a1 - truth.tpr_a1) + std::abs(est.tpr_a0 - truth.tpr_a0) +
                           std::abs(est.fpr_a1 - truth.fpr_a1) + std::abs(est.fpr_a0 - truth.fpr_a0);
        (n == 1'000 ? mad_small : mad_large) += dev / 4.0;
      }
    }
    INFO("classifier " << k);
    CHECK(mad_large < mad_small);
    // Deviation scales as 1/sqrt(n): expect a ratio near sqrt(10).
    CHECK(mad_small / mad_large > 2.0);
  }
}
