#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "compsep/errors.hpp"
#include "compsep/pairwise.hpp"
#include "compsep/pointwise.hpp"
#include "compsep/random.hpp"
#include "compsep/stat_tests.hpp"
#include "compsep/types.hpp"

namespace compsep {

// n i.i.d. draws from the eight-cell distribution.
template <typename URBG>
PointSet sample_point_set(const CellSampler& sampler, std::size_t n, URBG& rng) {
  std::vector<LabeledPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(sampler(rng));
  return PointSet(std::move(points), LabelMode::binary);
}

template <typename URBG>
PointSet sample_point_set(const JointDistribution& d, std::size_t n, URBG& rng) {
  if (n < 1) throw std::invalid_argument("sample_point_set: n must be >= 1");
  return sample_point_set(CellSampler(d), n, rng);
}

enum class Metric { tpr_a1, tpr_a0, fpr_a1, fpr_a0, tpr_10, tpr_01, tpr_11, tpr_00 };

inline constexpr std::array<Metric, 4> kPointMetrics{Metric::tpr_a1, Metric::tpr_a0, Metric::fpr_a1,
                                                     Metric::fpr_a0};
inline constexpr std::array<Metric, 4> kPairMetrics{Metric::tpr_10, Metric::tpr_01, Metric::tpr_11,
                                                    Metric::tpr_00};

inline const char* to_string(Metric m) noexcept {
  switch (m) {
    case Metric::tpr_a1: return "tpr_a1";
    case Metric::tpr_a0: return "tpr_a0";
    case Metric::fpr_a1: return "fpr_a1";
    case Metric::fpr_a0: return "fpr_a0";
    case Metric::tpr_10: return "tpr(1,0)";
    case Metric::tpr_01: return "tpr(0,1)";
    case Metric::tpr_11: return "tpr(1,1)";
    case Metric::tpr_00: return "tpr(0,0)";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(const std::string& name) {
  for (auto m : kPointMetrics)
    if (name == to_string(m)) return m;
  for (auto m : kPairMetrics)
    if (name == to_string(m)) return m;
  return std::nullopt;
}

inline bool is_pair_metric(Metric m) noexcept {
  return std::find(kPairMetrics.begin(), kPairMetrics.end(), m) != kPairMetrics.end();
}

inline GroupPair bucket_of(Metric m) {
  switch (m) {
    case Metric::tpr_10: return GroupPair(1, 0);
    case Metric::tpr_01: return GroupPair(0, 1);
    case Metric::tpr_11: return GroupPair(1, 1);
    case Metric::tpr_00: return GroupPair(0, 0);
    default: throw std::invalid_argument(std::string("not a pair metric: ") + to_string(m));
  }
}

inline double metric_value(const GroupRates& r, Metric m) {
  switch (m) {
    case Metric::tpr_a1: return r.tpr_a1;
    case Metric::tpr_a0: return r.tpr_a0;
    case Metric::fpr_a1: return r.fpr_a1;
    case Metric::fpr_a0: return r.fpr_a0;
    default: throw std::invalid_argument(std::string("not a point metric: ") + to_string(m));
  }
}

inline double metric_value(const ComparativeRates& r, Metric m) { return r.tpr(bucket_of(m)); }

struct SimConfig {
  JointDistribution distribution = JointDistribution::uniform();
  std::size_t n = 0;    // points per replicate (separation, point metrics)
  std::size_t n_p = 0;  // pairs per replicate (comparative separation, pair metrics)
  std::size_t replicates = 10'000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct MetricMoments {
  Metric metric = Metric::tpr_a1;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance across replicates
  std::size_t count = 0;
};

struct SimResult {
  std::optional<Criterion> criterion;  // unset for moment studies
  double detection_frequency = 0.0;
  std::size_t detections = 0;
  std::size_t replicates = 0;
  std::size_t valid_replicates = 0;
  std::size_t errored_replicates = 0;
  std::uint64_t seed = 0;
  std::vector<MetricMoments> moments;
  std::vector<std::string> warnings;

  const MetricMoments& moment(Metric m) const {
    for (const auto& mm : moments)
      if (mm.metric == m) return mm;
    throw std::out_of_range(std::string("no moments recorded for ") + to_string(m));
  }
};

// Largest fraction of replicates allowed to hit an empty stratum or bucket
// before a study is abandoned.
inline constexpr double kMaxErroredFraction = 0.01;

namespace detail {

// Runs body(index) for every replicate index and stores the results by
// index, so the output does not depend on the thread count or scheduling.
template <typename Outcome, typename Body>
std::vector<Outcome> run_replicates(std::size_t count, unsigned threads, Body body) {
  std::vector<Outcome> out(count);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

struct ReplicateOutcome {
  bool errored = false;
  bool violated = false;
  std::array<double, 4> values{};
};

template <std::size_t N>
std::vector<MetricMoments> summarize(const std::vector<ReplicateOutcome>& outcomes,
                                     const std::array<Metric, N>& metrics) {
  std::vector<MetricMoments> out;
  for (std::size_t k = 0; k < N; ++k) {
    MetricMoments m;
    m.metric = metrics[k];
    double sum = 0.0;
    for (const auto& o : outcomes)
      if (!o.errored) {
        sum += o.values[k];
        ++m.count;
      }
    if (m.count == 0) {
      out.push_back(m);
      continue;
    }
    m.mean = sum / static_cast<double>(m.count);
    double ss = 0.0;
    for (const auto& o : outcomes)
      if (!o.errored) ss += (o.values[k] - m.mean) * (o.values[k] - m.mean);
    m.variance = m.count > 1 ? ss / static_cast<double>(m.count - 1) : 0.0;
    out.push_back(m);
  }
  return out;
}

inline void tally_errors(SimResult& r, const std::vector<ReplicateOutcome>& outcomes) {
  r.replicates = outcomes.size();
  for (const auto& o : outcomes) {
    if (o.errored) {
      ++r.errored_replicates;
      continue;
    }
    ++r.valid_replicates;
    if (o.violated) ++r.detections;
  }
  if (static_cast<double>(r.errored_replicates) > kMaxErroredFraction * static_cast<double>(r.replicates))
    throw SimulationAborted(std::to_string(r.errored_replicates) + " of " +
                            std::to_string(r.replicates) +
                            " replicates had an empty stratum or bucket; increase the sample size");
  if (r.errored_replicates > 0)
    r.warnings.push_back(std::to_string(r.errored_replicates) +
                         " degenerate replicates excluded from the frequency");
  if (r.valid_replicates > 0)
    r.detection_frequency =
        static_cast<double>(r.detections) / static_cast<double>(r.valid_replicates);
}

inline void validate(const SimConfig& cfg, bool needs_points, bool needs_pairs) {
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (needs_points && cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (needs_pairs && cfg.n_p < 1) throw std::invalid_argument("n_p must be >= 1");
  check_alpha(cfg.alpha);
}

}  // namespace detail

// Samples an independent test set per replicate (substream = replicate
// index), runs the criterion's two z-tests and counts violations. Also
// records the moments of the four rates the criterion tests.
inline SimResult run_detection_study(const SimConfig& cfg, Criterion criterion) {
  const bool pairs = criterion == Criterion::comparative_separation;
  detail::validate(cfg, !pairs, pairs);
  const CellSampler sampler(cfg.distribution);

  const auto body = [&](std::size_t index) {
    detail::ReplicateOutcome o;
    auto rng = make_engine(cfg.seed, index);
    try {
      if (pairs) {
        const auto rates = estimate_comparative_rates(sample_pair_set(sampler, cfg.n_p, rng));
        o.violated = test_comparative_separation(rates, cfg.alpha).violated;
        for (std::size_t k = 0; k < 4; ++k) o.values[k] = metric_value(rates, kPairMetrics[k]);
      } else {
        const auto rates = estimate_group_rates(sample_point_set(sampler, cfg.n, rng));
        o.violated = test_separation(rates, cfg.alpha).violated;
        for (std::size_t k = 0; k < 4; ++k) o.values[k] = metric_value(rates, kPointMetrics[k]);
      }
    } catch (const DegenerateStratum&) {
      o.errored = true;
    } catch (const EmptyBucket&) {
      o.errored = true;
    }
    return o;
  };
  const auto outcomes = detail::run_replicates<detail::ReplicateOutcome>(cfg.replicates, cfg.threads, body);

  SimResult r;
  r.criterion = criterion;
  r.seed = cfg.seed;
  detail::tally_errors(r, outcomes);
  r.moments = pairs ? detail::summarize(outcomes, kPairMetrics) : detail::summarize(outcomes, kPointMetrics);
  return r;
}

// Mean and variance of one estimator across replicates. Point metrics use
// cfg.n points per replicate, pair metrics cfg.n_p pairs.
inline SimResult run_moment_study(const SimConfig& cfg, Metric metric) {
  const bool pairs = is_pair_metric(metric);
  detail::validate(cfg, !pairs, pairs);
  const CellSampler sampler(cfg.distribution);

  const auto body = [&](std::size_t index) {
    detail::ReplicateOutcome o;
    auto rng = make_engine(cfg.seed, index);
    try {
      if (pairs)
        o.values[0] = metric_value(estimate_comparative_rates(sample_pair_set(sampler, cfg.n_p, rng)), metric);
      else
        o.values[0] = metric_value(estimate_group_rates(sample_point_set(sampler, cfg.n, rng)), metric);
    } catch (const DegenerateStratum&) {
      o.errored = true;
    } catch (const EmptyBucket&) {
      o.errored = true;
    }
    return o;
  };
  const auto outcomes = detail::run_replicates<detail::ReplicateOutcome>(cfg.replicates, cfg.threads, body);

  SimResult r;
  r.seed = cfg.seed;
  detail::tally_errors(r, outcomes);
  r.detections = 0;
  r.detection_frequency = 0.0;
  r.moments = detail::summarize(outcomes, std::array<Metric, 1>{metric});
  return r;
}

}  // namespace compsep
