#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "compsep/errors.hpp"
#include "compsep/random.hpp"
#include "compsep/types.hpp"

namespace compsep {

// Comparative TPR of one group-pair bucket and the number of judgments
// pooled into it (or, for analytic rates, the probability that a sampled
// pair lands in it).
template <typename Weight>
struct BucketRate {
  double tpr = 0.0;
  Weight support{};
};

template <typename Weight>
class BasicComparativeRates {
public:
  bool has(GroupPair g) const { return buckets_[g.index()].has_value(); }

  const BucketRate<Weight>& at(GroupPair g) const {
    const auto& b = buckets_[g.index()];
    if (!b) throw EmptyBucket(g.first(), g.second());
    return *b;
  }

  double tpr(GroupPair g) const { return at(g).tpr; }
  Weight support(GroupPair g) const { return at(g).support; }

  Weight total_support() const {
    Weight total{};
    for (const auto& b : buckets_)
      if (b) total += b->support;
    return total;
  }

  void set(GroupPair g, BucketRate<Weight> rate) { buckets_[g.index()] = rate; }

  friend bool operator==(const BasicComparativeRates& l, const BasicComparativeRates& r) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (l.buckets_[i].has_value() != r.buckets_[i].has_value()) return false;
      if (l.buckets_[i] &&
          (l.buckets_[i]->tpr != r.buckets_[i]->tpr || l.buckets_[i]->support != r.buckets_[i]->support))
        return false;
    }
    return true;
  }

private:
  std::array<std::optional<BucketRate<Weight>>, 4> buckets_{};
};

using ComparativeRates = BasicComparativeRates<std::size_t>;
using AnalyticComparativeRates = BasicComparativeRates<double>;

// Judgment for items i and j, or nullopt when their ground truths tie.
inline std::optional<JudgedPair> judge(const LabeledPoint& i, const LabeledPoint& j) {
  const int y_ij = sign_of(i.y - j.y);
  if (y_ij == 0) return std::nullopt;
  return JudgedPair{i.a, j.a, y_ij, sign_of(i.c - j.c)};
}

// Draws n_p index pairs independently and uniformly with replacement
// (redrawing j when it equals i). Pairs with tied ground truth are dropped
// and counted.
inline PairSet build_pairs(const PointSet& s, std::size_t n_p, std::uint64_t seed) {
  if (s.size() < 2) throw std::invalid_argument("pair building needs at least two points");
  if (n_p < 1) throw std::invalid_argument("pair building needs n_p >= 1");
  auto rng = make_engine(seed);
  std::vector<JudgedPair> pairs;
  pairs.reserve(n_p);
  std::size_t ties = 0;
  for (std::size_t k = 0; k < n_p; ++k) {
    const std::size_t i = uniform_index(rng, s.size());
    std::size_t j = uniform_index(rng, s.size());
    while (j == i) j = uniform_index(rng, s.size());
    if (auto p = judge(s[i], s[j]))
      pairs.push_back(*p);
    else
      ++ties;
  }
  return PairSet(std::move(pairs), ties);
}

// Every unordered pair i < j once. Deterministic, but the pairs share items
// and are not independent, so the z-test variances do not strictly apply.
inline PairSet build_all_pairs(const PointSet& s) {
  if (s.size() < 2) throw std::invalid_argument("pair building needs at least two points");
  std::vector<JudgedPair> pairs;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (auto p = judge(s[i], s[j]))
        pairs.push_back(*p);
      else
        ++ties;
    }
  return PairSet(std::move(pairs), ties);
}

// Orientation-pooled comparative TPR. A judgment with y_ij = -1 on groups
// (a_i, a_j) is the same event as y_ji = +1 on (a_j, a_i), so it is counted
// in the reversed bucket and is a hit when c_ij = -1. A tied prediction
// (c_ij = 0) is never a hit.
inline ComparativeRates estimate_comparative_rates(const PairSet& sp) {
  std::array<std::size_t, 4> hits{};
  std::array<std::size_t, 4> support{};
  for (const auto& p : sp.pairs()) {
    const JudgedPair oriented = p.y_ij == 1 ? p : p.reversed();
    const auto bucket = oriented.groups().index();
    ++support[bucket];
    if (oriented.c_ij == 1) ++hits[bucket];
  }
  ComparativeRates rates;
  for (std::size_t b = 0; b < 4; ++b)
    if (support[b] > 0)
      rates.set(GroupPair::from_index(b),
                {static_cast<double>(hits[b]) / static_cast<double>(support[b]), support[b]});
  return rates;
}

// Comparative TPR of each bucket under independent draws of both items,
// from the joint cells: P(C=1,Y=1,A=a_i) P(C=0,Y=0,A=a_j) over
// P(Y=1,A=a_i) P(Y=0,A=a_j). Support is the probability that
// a sampled pair falls in the bucket, 2 P(Y=1,A=a_i) P(Y=0,A=a_j).
inline AnalyticComparativeRates analytic_comparative_rates(const JointDistribution& d) {
  AnalyticComparativeRates rates;
  for (const auto g : kAllGroupPairs) {
    const double tpr = d.p(1, 1, g.first()) * d.p(0, 0, g.second()) /
                       (d.marginal(1, g.first()) * d.marginal(0, g.second()));
    rates.set(g, {tpr, 2.0 * d.marginal(1, g.first()) * d.marginal(0, g.second())});
  }
  return rates;
}

template <typename URBG>
PairSet sample_pair_set(const CellSampler& sampler, std::size_t n_p, URBG& rng) {
  std::vector<JudgedPair> pairs;
  pairs.reserve(n_p);
  std::size_t ties = 0;
  for (std::size_t k = 0; k < n_p; ++k) {
    const auto i = sampler(rng);
    const auto j = sampler(rng);
    if (auto p = judge(i, j))
      pairs.push_back(*p);
    else
      ++ties;
  }
  return PairSet(std::move(pairs), ties);
}

// n_p pairs of two independent draws from d; tied-truth pairs are discarded
// into the tie count.
template <typename URBG>
PairSet sample_pair_set(const JointDistribution& d, std::size_t n_p, URBG& rng) {
  return sample_pair_set(CellSampler(d), n_p, rng);
}

}  // namespace compsep
