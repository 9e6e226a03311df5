#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "compsep/errors.hpp"
#include "compsep/types.hpp"

namespace compsep {

// Group-conditional true/false positive rates with the size of the stratum
// each rate is conditioned on. Weight is std::size_t for rates counted on a
// test set and double for rates derived from a distribution, where the
// "counts" are the marginal probabilities P(Y=y, A=a).
template <typename Weight>
struct BasicGroupRates {
  double tpr_a1 = 0.0;
  double tpr_a0 = 0.0;
  double fpr_a1 = 0.0;
  double fpr_a0 = 0.0;
  Weight n_t1{};  // |{Y=1, A=1}|
  Weight n_t0{};  // |{Y=1, A=0}|
  Weight n_f1{};  // |{Y=0, A=1}|
  Weight n_f0{};  // |{Y=0, A=0}|

  double tpr(int a) const { return a == 1 ? tpr_a1 : tpr_a0; }
  double fpr(int a) const { return a == 1 ? fpr_a1 : fpr_a0; }
  double tnr(int a) const { return 1.0 - fpr(a); }
  Weight positives(int a) const { return a == 1 ? n_t1 : n_t0; }
  Weight negatives(int a) const { return a == 1 ? n_f1 : n_f0; }
};

using GroupRates = BasicGroupRates<std::size_t>;
using AnalyticGroupRates = BasicGroupRates<double>;

struct OddsDifferences {
  double eod = 0.0;  // TPR(A=1) - TPR(A=0)
  double aod = 0.0;  // mean of the TPR gap and the FPR gap
};

inline GroupRates estimate_group_rates(const PointSet& s) {
  if (s.mode() != LabelMode::binary)
    throw std::invalid_argument("group rates require a binary-mode point set");
  if (s.empty()) throw std::invalid_argument("group rates require a nonempty point set");

  // [y][a] stratum sizes and predicted-positive counts
  std::array<std::array<std::size_t, 2>, 2> total{};
  std::array<std::array<std::size_t, 2>, 2> positive{};
  for (const auto& p : s.points()) {
    const auto y = static_cast<std::size_t>(p.y);
    const auto a = static_cast<std::size_t>(p.a);
    ++total[y][a];
    if (p.c == 1.0) ++positive[y][a];
  }
  for (int y = 1; y >= 0; --y)
    for (int a = 1; a >= 0; --a)
      if (total[y][a] == 0) throw DegenerateStratum(y, a);

  const auto ratio = [&](std::size_t y, std::size_t a) {
    return static_cast<double>(positive[y][a]) / static_cast<double>(total[y][a]);
  };
  GroupRates r;
  r.tpr_a1 = ratio(1, 1);
  r.tpr_a0 = ratio(1, 0);
  r.fpr_a1 = ratio(0, 1);
  r.fpr_a0 = ratio(0, 0);
  r.n_t1 = total[1][1];
  r.n_t0 = total[1][0];
  r.n_f1 = total[0][1];
  r.n_f0 = total[0][0];
  return r;
}

template <typename Weight>
OddsDifferences eod_aod(const BasicGroupRates<Weight>& r) {
  OddsDifferences d;
  d.eod = r.tpr_a1 - r.tpr_a0;
  d.aod = 0.5 * (d.eod + r.fpr_a1 - r.fpr_a0);
  return d;
}

inline AnalyticGroupRates analytic_group_rates(const JointDistribution& d) {
  AnalyticGroupRates r;
  r.n_t1 = d.marginal(1, 1);
  r.n_t0 = d.marginal(1, 0);
  r.n_f1 = d.marginal(0, 1);
  r.n_f0 = d.marginal(0, 0);
  if (!(r.n_t1 > 0.0) || !(r.n_t0 > 0.0) || !(r.n_f1 > 0.0) || !(r.n_f0 > 0.0))
    throw InvalidDistribution("conditional rates need every P(Y=y,A=a) > 0");
  r.tpr_a1 = d.p(1, 1, 1) / r.n_t1;
  r.tpr_a0 = d.p(1, 1, 0) / r.n_t0;
  r.fpr_a1 = d.p(1, 0, 1) / r.n_f1;
  r.fpr_a0 = d.p(1, 0, 0) / r.n_f0;
  return r;
}

}  // namespace compsep
