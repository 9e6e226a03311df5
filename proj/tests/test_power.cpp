#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace compsep;
using Catch::Approx;
using compsep::testing::kExpectedPower;
using compsep::testing::kPowerSizes;
using compsep::testing::table_one;

TEST_CASE("beta_accept examples", "[power]") {
  CHECK(beta_accept(0.0, 0.05) == Approx(0.95).margin(1e-12));
  CHECK(beta_accept(0.0, 1.0, 0.01) == Approx(0.99).margin(1e-12));
  // Phi(1.96 + 1.8257) - Phi(-1.96 + 1.8257)
  CHECK(beta_accept(-0.08, 0.043818) == Approx(0.5533131149210228).margin(1e-9));
  CHECK(beta_accept(0.5, 0.01) < 1e-12);
  CHECK_THROWS_AS(beta_accept(0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_accept(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("beta_accept is symmetric in mu and falls as |mu| grows", "[power][property]") {
  double previous = 1.0;
  for (double mu = 0.0; mu < 0.3; mu += 0.01) {
    const double b = beta_accept(mu, 0.04);
    CHECK(b == Approx(beta_accept(-mu, 0.04)).margin(1e-15));
    CHECK(b <= previous);
    CHECK(b >= 0.0);
    previous = b;
  }
}

TEST_CASE("analytic power reproduces every expected detection rate", "[power]") {
  for (std::size_t k = 0; k < 4; ++k) {
    const auto d = table_one(k);
    const double powers[4] = {separation_power(d, kPowerSizes[0]).power,
                              separation_power(d, kPowerSizes[1]).power,
                              comparative_power(d, kPowerSizes[2]).power,
                              comparative_power(d, kPowerSizes[3]).power};
    for (std::size_t col = 0; col < 4; ++col) {
      INFO("classifier " << k << " column " << col);
      CHECK(std::abs(powers[col] - kExpectedPower[k][col]) <= 1e-3);
    }
  }
}

TEST_CASE("satisfying distribution gives pure Type I power", "[power]") {
  const auto d = table_one(0);
  for (double n : {10.0, 1'000.0, 123'456.0}) {
    CHECK(separation_power(d, n).power == Approx(0.0975).margin(1e-12));
    CHECK(comparative_power(d, n).power == Approx(0.0975).margin(1e-12));
  }
  CHECK(separation_power(d, 500, 0.01).power == Approx(0.0199).margin(1e-12));
  CHECK(separation_power(d, 500, 0.10).power == Approx(0.19).margin(1e-12));
}

TEST_CASE("power report fields", "[power]") {
  const auto r = separation_power(table_one(1), 1'000);
  CHECK(r.criterion == Criterion::separation);
  CHECK(r.hypotheses[0].name == Hypothesis::equal_tpr);
  CHECK(r.hypotheses[1].name == Hypothesis::equal_fpr);
  CHECK(r.beta_composed == Approx(r.hypotheses[0].beta * r.hypotheses[1].beta));
  CHECK(r.power == Approx(1.0 - r.beta_composed));
  REQUIRE(r.effective_counts.size() == 4);
  CHECK(r.effective_counts[0].second == Approx(275.0));
  // Expected counts are not rounded.
  const auto c = comparative_power(table_one(1), 1'001);
  CHECK(c.effective_counts[0].first == "n_(1,0)");
  CHECK(c.effective_counts[0].second != std::round(c.effective_counts[0].second));
}

TEST_CASE("beta falls as sample sizes double", "[power][property]") {
  for (std::size_t k = 1; k < 4; ++k) {
    const auto d = table_one(k);
    double sep_prev = 1.0, comp_prev = 1.0;
    for (double n = 100; n <= 1'000'000; n *= 2) {
      const double sep = separation_power(d, n).beta_composed;
      const double comp = comparative_power(d, n).beta_composed;
      // Strict until beta underflows to 0.
      if (sep_prev > 0.0)
        CHECK(sep < sep_prev);
      else
        CHECK(sep == 0.0);
      if (comp_prev > 0.0)
        CHECK(comp < comp_prev);
      else
        CHECK(comp == 0.0);
      sep_prev = sep;
      comp_prev = comp;
    }
  }
}

TEST_CASE("zero variance strata", "[power]") {
  // Perfect classifier in group 1, flawed in group 0.
  JointDistribution::Cells cells{};
  cells[JointDistribution::cell_index(1, 1, 1)] = 0.25;
  cells[JointDistribution::cell_index(0, 0, 1)] = 0.25;
  cells[JointDistribution::cell_index(1, 1, 0)] = 0.125;
  cells[JointDistribution::cell_index(0, 1, 0)] = 0.125;
  cells[JointDistribution::cell_index(0, 0, 0)] = 0.25;
  const auto d = JointDistribution::from_cells(cells);
  const auto r = separation_power(d, 1'000);
  // FPR is 0 in both groups: sigma = 0 and mu = 0.
  CHECK(r.hypotheses[1].sigma == 0.0);
  CHECK(r.hypotheses[1].beta == 1.0);
  CHECK(r.hypotheses[0].beta < 1e-6);

  JointDistribution::Cells perfect{};
  perfect[JointDistribution::cell_index(1, 1, 1)] = 0.25;
  perfect[JointDistribution::cell_index(0, 0, 1)] = 0.25;
  perfect[JointDistribution::cell_index(0, 1, 0)] = 0.25;
  perfect[JointDistribution::cell_index(0, 0, 0)] = 0.25;
  const auto split = separation_power(JointDistribution::from_cells(perfect), 100);
  // TPR 1 vs 0 with no variance: always rejected.
  CHECK(split.hypotheses[0].beta == 0.0);
  CHECK(split.power == 1.0);
}

TEST_CASE("matched_pair_budget examples", "[power]") {
  const auto f1 = matched_pair_budget(table_one(1), 1'000);
  CHECK_FALSE(f1.satisfying);
  CHECK(f1.n_p >= 1'700);
  CHECK(f1.n_p <= 2'300);
  CHECK(f1.comparative_power >= f1.separation_power);
  CHECK(comparative_power(table_one(1), static_cast<double>(f1.n_p - 1)).power < f1.separation_power);
  CHECK(f1.ratio == Approx(f1.n_p / 1'000.0));

  const auto f0 = matched_pair_budget(table_one(0), 1'000);
  CHECK(f0.satisfying);
  CHECK(f0.n_p == 1);

  const auto f2 = matched_pair_budget(table_one(2), 2'000);
  CHECK(f2.n_p > 4'000);
  CHECK(comparative_power(table_one(2), static_cast<double>(f2.n_p)).power >= 0.9682 - 1e-3);
}

TEST_CASE("matched_pair_budget reports an unreachable target", "[power]") {
  CHECK_THROWS_AS(matched_pair_budget(table_one(1), 1'000, 0.05, 500), Error);
  CHECK_THROWS_AS(matched_pair_budget(table_one(1), 0), std::invalid_argument);
}

TEST_CASE("argument checks", "[power]") {
  CHECK_THROWS_AS(separation_power(table_one(1), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(comparative_power(table_one(1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(separation_power(table_one(1), 100, 1.5), std::invalid_argument);
}
