#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compsep/errors.hpp"
#include "compsep/normal.hpp"
#include "compsep/pairwise.hpp"
#include "compsep/pointwise.hpp"
#include "compsep/stat_tests.hpp"
#include "compsep/types.hpp"

namespace compsep {

// Probability that a two-sided level-alpha z-test accepts H0 when the
// difference of the two sample means is N(mu, sigma):
//   beta = Phi(z - mu/sigma) - Phi(-z - mu/sigma),  z = Phi^-1(1 - alpha/2).
inline double beta_accept(double mu, double sigma, double alpha = 0.05) {
  if (!(sigma > 0.0)) throw std::invalid_argument("beta_accept: sigma must be > 0");
  const double z = two_tailed_critical(alpha);
  const double shift = mu / sigma;
  return normal_cdf(z - shift) - normal_cdf(-z - shift);
}

struct HypothesisPower {
  Hypothesis name = Hypothesis::equal_tpr;
  double mu = 0.0;     // true difference of the two rates
  double sigma = 0.0;  // sd of the estimated difference
  double beta = 0.0;   // probability of accepting H0
};

struct PowerReport {
  Criterion criterion = Criterion::separation;
  double alpha = 0.05;
  double sample_size = 0.0;  // n or n_p
  std::array<HypothesisPower, 2> hypotheses{};
  double beta_composed = 0.0;  // product of the two per-hypothesis betas
  double power = 0.0;
  std::vector<std::pair<std::string, double>> effective_counts;
};

namespace detail {

// sigma == 0 happens when both rates are exactly 0 or 1: the test then
// never rejects equal rates and always rejects unequal ones.
inline HypothesisPower hypothesis_power(Hypothesis name, double rate_left, double count_left,
                                        double rate_right, double count_right, double alpha) {
  HypothesisPower h;
  h.name = name;
  h.mu = rate_left - rate_right;
  h.sigma = std::sqrt(rate_left * (1.0 - rate_left) / count_left +
                      rate_right * (1.0 - rate_right) / count_right);
  if (h.sigma > 0.0)
    h.beta = beta_accept(h.mu, h.sigma, alpha);
  else
    h.beta = h.mu == 0.0 ? 1.0 : 0.0;
  return h;
}

inline void compose(PowerReport& r) {
  r.beta_composed = r.hypotheses[0].beta * r.hypotheses[1].beta;
  r.power = 1.0 - r.beta_composed;
}

}  // namespace detail

// Stratum sizes are the expected counts P(Y=y,A=a) * n, kept fractional.
inline PowerReport separation_power(const JointDistribution& d, double n, double alpha = 0.05) {
  if (!(n >= 1.0)) throw std::invalid_argument("separation_power: n must be >= 1");
  check_alpha(alpha);
  const auto r = analytic_group_rates(d);
  PowerReport report;
  report.criterion = Criterion::separation;
  report.alpha = alpha;
  report.sample_size = n;
  const double n_t1 = r.n_t1 * n, n_t0 = r.n_t0 * n, n_f1 = r.n_f1 * n, n_f0 = r.n_f0 * n;
  report.hypotheses[0] =
      detail::hypothesis_power(Hypothesis::equal_tpr, r.tpr_a1, n_t1, r.tpr_a0, n_t0, alpha);
  report.hypotheses[1] =
      detail::hypothesis_power(Hypothesis::equal_fpr, r.fpr_a1, n_f1, r.fpr_a0, n_f0, alpha);
  report.effective_counts = {{"n_t1", n_t1}, {"n_t0", n_t0}, {"n_f1", n_f1}, {"n_f0", n_f0}};
  detail::compose(report);
  return report;
}

// Bucket sizes are the expected pooled counts 2 P(Y=1,A=a_i) P(Y=0,A=a_j) n_p.
inline PowerReport comparative_power(const JointDistribution& d, double n_p, double alpha = 0.05) {
  if (!(n_p >= 1.0)) throw std::invalid_argument("comparative_power: n_p must be >= 1");
  check_alpha(alpha);
  const auto r = analytic_comparative_rates(d);
  const auto count = [&](GroupPair g) { return r.support(g) * n_p; };
  const auto test = [&](GroupPair left, GroupPair right, Hypothesis h) {
    return detail::hypothesis_power(h, r.tpr(left), count(left), r.tpr(right), count(right), alpha);
  };
  PowerReport report;
  report.criterion = Criterion::comparative_separation;
  report.alpha = alpha;
  report.sample_size = n_p;
  report.hypotheses[0] = test(GroupPair(1, 0), GroupPair(0, 1), Hypothesis::cross_groups);
  report.hypotheses[1] = test(GroupPair(1, 1), GroupPair(0, 0), Hypothesis::within_groups);
  report.effective_counts = {{"n_(1,0)", count(GroupPair(1, 0))},
                             {"n_(0,1)", count(GroupPair(0, 1))},
                             {"n_(1,1)", count(GroupPair(1, 1))},
                             {"n_(0,0)", count(GroupPair(0, 0))}};
  detail::compose(report);
  return report;
}

struct PairBudget {
  std::size_t n_p = 1;
  double ratio = 0.0;  // n_p / n
  double separation_power = 0.0;
  double comparative_power = 0.0;
  bool satisfying = false;  // no effect to detect; powers do not depend on size
};

inline constexpr std::size_t kPairBudgetCap = 10'000'000;

// Differences below this are treated as an exactly satisfied criterion when
// matching budgets.
inline constexpr double kNoEffectTolerance = 1e-12;

// Smallest n_p whose comparative-separation power reaches the separation
// power at n points. Power increases monotonically in n_p when there is an
// effect, so the search doubles to bracket the answer and then bisects.
inline PairBudget matched_pair_budget(const JointDistribution& d, std::size_t n, double alpha = 0.05,
                                      std::size_t cap = kPairBudgetCap) {
  if (n < 1) throw std::invalid_argument("matched_pair_budget: n must be >= 1");
  const auto separation = separation_power(d, static_cast<double>(n), alpha);
  PairBudget budget;
  budget.separation_power = separation.power;

  const auto comparative_at = [&](std::size_t n_p) {
    return comparative_power(d, static_cast<double>(n_p), alpha).power;
  };
  const auto probe = comparative_power(d, 1.0, alpha);
  const bool no_effect = std::abs(probe.hypotheses[0].mu) <= kNoEffectTolerance &&
                         std::abs(probe.hypotheses[1].mu) <= kNoEffectTolerance;
  if (no_effect) {
    budget.satisfying = true;
    budget.n_p = 1;
    budget.comparative_power = probe.power;
    budget.ratio = 1.0 / static_cast<double>(n);
    return budget;
  }

  const double target = separation.power;
  std::size_t lo = 0;  // last size known to fall short, 0 before any probe
  std::size_t hi = 1;
  while (comparative_at(hi) < target) {
    if (hi >= cap)
      throw Error("matched_pair_budget: target power " + std::to_string(target) +
                  " unreachable below n_p = " + std::to_string(cap));
    lo = hi;
    hi = std::min(hi * 2, cap);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (comparative_at(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  budget.n_p = hi;
  budget.comparative_power = comparative_at(hi);
  budget.ratio = static_cast<double>(hi) / static_cast<double>(n);
  return budget;
}

}  // namespace compsep
