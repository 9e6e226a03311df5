#pragma once

// Command-line front end. Exit codes: 0 criterion satisfied (or command
// succeeded), 2 criterion violated, 1 error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compsep/compsep.hpp"

namespace compsep::cli {

inline constexpr int kExitSatisfied = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolated = 2;

namespace detail {

struct CommonOptions {
  std::string format = "text";
  double alpha = 0.05;
};

inline void add_common(CLI::App* cmd, CommonOptions& o, bool with_alpha = true) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "kv"}))
      ->capture_default_str();
  if (with_alpha)
    cmd->add_option("--alpha", o.alpha, "Significance level of each z-test")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))
        ->capture_default_str();
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline void emit(std::ostream& out, const Report& r, const std::string& format) {
  if (format == "kv")
    render_key_values(out, r);
  else
    render_text(out, r);
}

inline void add_hypotheses(Report& r, const TestVerdict& v) {
  auto& s = r.section("hypotheses");
  for (const auto& h : v.results) {
    const std::string name = to_string(h.name);
    s.add(name + ".left_rate", h.p_left);
    s.add(name + ".right_rate", h.p_right);
    s.add(name + ".n_left", h.n_left);
    s.add(name + ".n_right", h.n_right);
    s.add(name + ".z", h.z);
    s.add(name + ".p_value", h.p_value, 4);
    s.add(name + ".decision", h.rejected ? "rejected" : "accepted");
  }
}

inline void add_verdict(Report& r, const TestVerdict& v) {
  auto& w = r.section("warnings");
  w.add("count", v.small_sample_warnings.size());
  for (std::size_t i = 0; i < v.small_sample_warnings.size(); ++i)
    w.add("small_sample." + std::to_string(i), v.small_sample_warnings[i]);
  auto& s = r.section("verdict");
  s.add("criterion", to_string(v.criterion));
  s.add("alpha", v.alpha, 3);
  s.add("violated", v.violated);
  s.add("result", v.violated ? "violated" : "satisfied");
}

inline void add_comparative_rates(Report& r, const ComparativeRates& rates) {
  auto& s = r.section("rates");
  for (const auto g : {GroupPair(1, 0), GroupPair(0, 1), GroupPair(1, 1), GroupPair(0, 0)}) {
    if (!rates.has(g)) {
      s.add("support" + g.label(), std::size_t{0});
      continue;
    }
    s.add("tpr" + g.label(), rates.tpr(g));
    s.add("support" + g.label(), rates.support(g));
  }
  if (rates.has(GroupPair(1, 0)) && rates.has(GroupPair(0, 1)))
    s.add("cross_gap", rates.tpr(GroupPair(1, 0)) - rates.tpr(GroupPair(0, 1)));
  if (rates.has(GroupPair(1, 1)) && rates.has(GroupPair(0, 0)))
    s.add("within_gap", rates.tpr(GroupPair(1, 1)) - rates.tpr(GroupPair(0, 0)));
}

inline void add_power(Report& r, const std::string& name, const PowerReport& p) {
  auto& s = r.section(name);
  s.add("criterion", to_string(p.criterion));
  s.add("sample_size", p.sample_size, 0);
  for (const auto& h : p.hypotheses) {
    const std::string key = to_string(h.name);
    s.add(key + ".mu", h.mu);
    s.add(key + ".sigma", h.sigma, 5);
    s.add(key + ".beta", h.beta, 4);
  }
  for (const auto& [k, v] : p.effective_counts) s.add(k, v, 1);
  s.add("beta", p.beta_composed, 4);
  s.add("power", p.power, 4);
}

inline int cmd_evaluate(const std::string& path, const CommonOptions& o, std::ostream& out) {
  auto in = open_input(path);
  const auto points = load_point_set(in, LabelMode::binary);
  const auto rates = estimate_group_rates(points);
  const auto verdict = test_separation(rates, o.alpha);
  const auto gaps = eod_aod(rates);

  Report r;
  r.command = "evaluate";
  r.section("inputs").add("file", path).add("points", points.size()).add("mode", "binary");
  r.section("rates")
      .add("tpr_a1", rates.tpr_a1)
      .add("tpr_a0", rates.tpr_a0)
      .add("fpr_a1", rates.fpr_a1)
      .add("fpr_a0", rates.fpr_a0)
      .add("n_t1", rates.n_t1)
      .add("n_t0", rates.n_t0)
      .add("n_f1", rates.n_f1)
      .add("n_f0", rates.n_f0)
      .add("eod", gaps.eod)
      .add("aod", gaps.aod);
  add_hypotheses(r, verdict);
  add_verdict(r, verdict);
  emit(out, r, o.format);
  return verdict.violated ? kExitViolated : kExitSatisfied;
}

struct PairOptions {
  std::optional<std::size_t> make_pairs;
  bool all_pairs = false;
  std::optional<std::uint64_t> seed;
};

inline int cmd_evaluate_pairs(const std::string& path, const PairOptions& p, const CommonOptions& o,
                       std::ostream& out) {
  Report r;
  r.command = "evaluate-pairs";
  auto& inputs = r.section("inputs");
  inputs.add("file", path);

  auto in = open_input(path);
  PairSet pairs;
  if (p.make_pairs || p.all_pairs) {
    // Pairing only uses the sign of label differences, so any numeric
    // labels work.
    const auto points = load_point_set(in, LabelMode::continuous);
    inputs.add("points", points.size());
    if (p.all_pairs) {
      inputs.add("pairing", "all-pairs");
      pairs = build_all_pairs(points);
    } else {
      const auto seed = resolve_seed(p.seed);
      inputs.add("pairing", "sampled");
      inputs.add("requested_pairs", *p.make_pairs);
      inputs.add("seed", std::to_string(seed));
      pairs = build_pairs(points, *p.make_pairs, seed);
    }
  } else {
    inputs.add("pairing", "file");
    pairs = load_pair_set(in);
  }
  inputs.add("pairs", pairs.size());
  inputs.add("discarded_ties", pairs.discarded_ties());

  const auto rates = estimate_comparative_rates(pairs);
  add_comparative_rates(r, rates);
  const auto verdict = test_comparative_separation(rates, o.alpha);
  add_hypotheses(r, verdict);
  add_verdict(r, verdict);
  emit(out, r, o.format);
  return verdict.violated ? kExitViolated : kExitSatisfied;
}

struct PowerOptions {
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_p;
  std::optional<std::size_t> match_n;
};

inline int cmd_power(const std::string& path, const PowerOptions& p, const CommonOptions& o, std::ostream& out) {
  auto in = open_input(path);
  const auto d = load_distribution(in);
  Report r;
  r.command = "power";
  r.section("inputs").add("file", path).add("alpha", o.alpha, 3);
  if (p.n) add_power(r, "separation", separation_power(d, static_cast<double>(*p.n), o.alpha));
  if (p.n_p) add_power(r, "comparative", comparative_power(d, static_cast<double>(*p.n_p), o.alpha));
  if (p.match_n) {
    const auto b = matched_pair_budget(d, *p.match_n, o.alpha);
    auto& s = r.section("budget");
    s.add("n", *p.match_n);
    s.add("n_p", b.n_p);
    s.add("ratio", b.ratio, 3);
    s.add("separation_power", b.separation_power, 4);
    s.add("comparative_power", b.comparative_power, 4);
    s.add("satisfying_distribution", b.satisfying);
    if (b.satisfying)
      s.add("notice", "criterion satisfied by the distribution; power equals the type I rate at any size");
  }
  emit(out, r, o.format);
  return kExitSatisfied;
}

struct SimulateOptions {
  std::string criterion = "separation";
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_p;
  std::size_t replicates = 10'000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

inline int cmd_simulate(const std::string& path, const SimulateOptions& s, const CommonOptions& o,
                 std::ostream& out) {
  auto in = open_input(path);
  SimConfig cfg;
  cfg.distribution = load_distribution(in);
  cfg.replicates = s.replicates;
  cfg.alpha = o.alpha;
  cfg.seed = resolve_seed(s.seed);
  cfg.threads = s.threads;

  const bool pairs = s.criterion == "comparative";
  if (pairs && !s.n_p) throw std::invalid_argument("--np is required for the comparative criterion");
  if (!pairs && !s.n) throw std::invalid_argument("--n is required for the separation criterion");
  cfg.n = s.n.value_or(0);
  cfg.n_p = s.n_p.value_or(0);

  const auto criterion = pairs ? Criterion::comparative_separation : Criterion::separation;
  const auto result = run_detection_study(cfg, criterion);
  const auto expected = pairs ? comparative_power(cfg.distribution, static_cast<double>(cfg.n_p), cfg.alpha)
                              : separation_power(cfg.distribution, static_cast<double>(cfg.n), cfg.alpha);

  Report r;
  r.command = "simulate";
  r.section("inputs")
      .add("file", path)
      .add("criterion", to_string(criterion))
      .add("sample_size", pairs ? cfg.n_p : cfg.n)
      .add("replicates", cfg.replicates)
      .add("alpha", cfg.alpha, 3)
      .add("seed", std::to_string(cfg.seed));
  r.section("detection")
      .add("expected", expected.power, 4)
      .add("simulated", result.detection_frequency, 4)
      .add("difference", result.detection_frequency - expected.power, 4)
      .add("detections", result.detections)
      .add("valid_replicates", result.valid_replicates)
      .add("errored_replicates", result.errored_replicates);
  auto& m = r.section("moments");
  for (const auto& mm : result.moments) {
    m.add(std::string(to_string(mm.metric)) + ".mean", mm.mean, 5);
    m.add(std::string(to_string(mm.metric)) + ".variance", mm.variance, 6);
  }
  auto& w = r.section("warnings");
  w.add("count", result.warnings.size());
  for (std::size_t i = 0; i < result.warnings.size(); ++i) w.add("note." + std::to_string(i), result.warnings[i]);
  emit(out, r, o.format);
  return kExitSatisfied;
}

struct WeightsOptions {
  std::string scheme = "fairbalance";
  std::string output;
};

inline int cmd_weights(const std::string& path, const WeightsOptions& w, const CommonOptions& o, std::ostream& out) {
  const auto scheme = parse_weight_scheme(w.scheme);
  if (!scheme) throw std::invalid_argument("unknown scheme '" + w.scheme + "'");
  auto in = open_input(path);
  const auto points = load_point_set(in, LabelMode::binary);
  const auto table = compute_weights(points, *scheme);
  const auto weights = point_weights(points, table);

  const auto write_csv = [&](std::ostream& csv) {
    csv << "y,c,a,w\n";
    for (std::size_t i = 0; i < points.size(); ++i)
      csv << compsep::detail::format_double(points[i].y) << ','
          << compsep::detail::format_double(points[i].c) << ',' << points[i].a << ','
          << compsep::detail::format_double(weights[i]) << '\n';
  };
  if (w.output.empty()) {
    write_csv(out);
    return kExitSatisfied;
  }
  std::ofstream file(w.output);
  if (!file) throw Error("cannot write '" + w.output + "'");
  write_csv(file);

  Report r;
  r.command = "weights";
  r.section("inputs").add("file", path).add("points", points.size()).add("scheme", w.scheme).add("output", w.output);
  auto& s = r.section("weights");
  for (int a = 1; a >= 0; --a)
    for (int y = 1; y >= 0; --y) {
      const std::string cell = "(a=" + std::to_string(a) + ",y=" + std::to_string(y) + ")";
      s.add("count" + cell, table.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(y)]);
      if (table.w[static_cast<std::size_t>(a)][static_cast<std::size_t>(y)])
        s.add("w" + cell, table.at(a, y), 4);
    }
  emit(out, r, o.format);
  return kExitSatisfied;
}

struct SampleOptions {
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_p;
  std::optional<std::uint64_t> seed;
  std::string output;
};

// Draws a point or pair fixture from a distribution file.
inline int cmd_sample(const std::string& path, const SampleOptions& s, std::ostream& out, std::ostream& err) {
  if (s.n.has_value() == s.n_p.has_value()) throw std::invalid_argument("give exactly one of --n or --np");
  auto in = open_input(path);
  const auto d = load_distribution(in);
  const auto seed = resolve_seed(s.seed);
  auto rng = make_engine(seed);

  std::ofstream file;
  if (!s.output.empty()) {
    file.open(s.output);
    if (!file) throw Error("cannot write '" + s.output + "'");
  }
  std::ostream& dest = s.output.empty() ? out : file;
  if (s.n)
    write_point_set(dest, sample_point_set(d, *s.n, rng));
  else
    write_pair_set(dest, sample_pair_set(d, *s.n_p, rng));
  err << "seed = " << seed << '\n';
  return kExitSatisfied;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Separation and comparative-separation fairness audits"};
  app.name("compsep");
  app.require_subcommand(1);

  detail::CommonOptions common;
  std::string input;
  std::function<int()> action;

  auto* evaluate = app.add_subcommand("evaluate", "Test separation on a point CSV (y,c,a)");
  evaluate->add_option("points", input, "Point CSV")->required();
  detail::add_common(evaluate, common);
  evaluate->callback([&] { action = [&] { return detail::cmd_evaluate(input, common, out); }; });

  detail::PairOptions pair_opts;
  auto* evaluate_pairs = app.add_subcommand(
      "evaluate-pairs", "Test comparative separation on a pair CSV, or on pairs built from a point CSV");
  evaluate_pairs->add_option("file", input, "Pair CSV, or point CSV with --make-pairs/--all-pairs")->required();
  auto* make_pairs = evaluate_pairs->add_option("--make-pairs", pair_opts.make_pairs,
                                                "Sample this many pairs from a point CSV")
                         ->check(CLI::PositiveNumber);
  auto* all_pairs = evaluate_pairs->add_flag("--all-pairs", pair_opts.all_pairs,
                                             "Use every unordered pair of a point CSV");
  make_pairs->excludes(all_pairs);
  evaluate_pairs->add_option("--seed", pair_opts.seed, "Seed for --make-pairs (generated and echoed if absent)");
  detail::add_common(evaluate_pairs, common);
  evaluate_pairs->callback(
      [&] { action = [&] { return detail::cmd_evaluate_pairs(input, pair_opts, common, out); }; });

  detail::PowerOptions power_opts;
  auto* power = app.add_subcommand("power", "Analytic detection power for a distribution file");
  power->add_option("distribution", input, "Distribution file")->required();
  auto* n_opt = power->add_option("--n", power_opts.n, "Points for separation")->check(CLI::PositiveNumber);
  auto* np_opt = power->add_option("--np", power_opts.n_p, "Pairs for comparative separation")
                     ->check(CLI::PositiveNumber);
  auto* match_opt = power->add_option("--match-n", power_opts.match_n,
                                      "Find the pair budget matching separation power at this n")
                        ->check(CLI::PositiveNumber);
  detail::add_common(power, common);
  power->callback([&, n_opt, np_opt, match_opt] {
    if (n_opt->count() + np_opt->count() + match_opt->count() == 0)
      throw CLI::ValidationError("power", "one of --n, --np or --match-n is required");
    action = [&] { return detail::cmd_power(input, power_opts, common, out); };
  });

  detail::SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo detection frequency against analytic power");
  simulate->add_option("distribution", input, "Distribution file")->required();
  simulate->add_option("--criterion", sim_opts.criterion, "separation or comparative")
      ->check(CLI::IsMember({"separation", "comparative"}))
      ->capture_default_str();
  simulate->add_option("--n", sim_opts.n, "Points per replicate")->check(CLI::PositiveNumber);
  simulate->add_option("--np", sim_opts.n_p, "Pairs per replicate")->check(CLI::PositiveNumber);
  simulate->add_option("--replicates", sim_opts.replicates, "Replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", sim_opts.seed, "Master seed (generated and echoed if absent)");
  simulate->add_option("--threads", sim_opts.threads, "Worker threads, 0 = all cores")->capture_default_str();
  detail::add_common(simulate, common);
  simulate->callback([&] { action = [&] { return detail::cmd_simulate(input, sim_opts, common, out); }; });

  detail::WeightsOptions weight_opts;
  auto* weights = app.add_subcommand("weights", "Per-point training weights for a point CSV");
  weights->add_option("points", input, "Point CSV")->required();
  weights->add_option("--scheme", weight_opts.scheme, "none, reweighing or fairbalance")
      ->check(CLI::IsMember({"none", "reweighing", "fairbalance"}))
      ->capture_default_str();
  weights->add_option("-o,--output", weight_opts.output, "Write the weighted CSV here and print the table");
  detail::add_common(weights, common, false);
  weights->callback([&] { action = [&] { return detail::cmd_weights(input, weight_opts, common, out); }; });

  detail::SampleOptions sample_opts;
  auto* sample = app.add_subcommand("sample", "Draw a point or pair CSV from a distribution file");
  sample->add_option("distribution", input, "Distribution file")->required();
  sample->add_option("--n", sample_opts.n, "Points to draw")->check(CLI::PositiveNumber);
  sample->add_option("--np", sample_opts.n_p, "Pairs to draw")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_opts.seed, "Seed (generated and echoed if absent)");
  sample->add_option("-o,--output", sample_opts.output, "Output file (default stdout)");
  sample->callback([&] { action = [&] { return detail::cmd_sample(input, sample_opts, out, err); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSatisfied : kExitError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace compsep::cli
