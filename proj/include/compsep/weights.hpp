#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compsep/errors.hpp"
#include "compsep/types.hpp"

namespace compsep {

enum class WeightScheme { none, reweighing, fairbalance };

inline const char* to_string(WeightScheme s) noexcept {
  switch (s) {
    case WeightScheme::none: return "none";
    case WeightScheme::reweighing: return "reweighing";
    case WeightScheme::fairbalance: return "fairbalance";
  }
  return "?";
}

inline std::optional<WeightScheme> parse_weight_scheme(const std::string& name) {
  for (auto s : {WeightScheme::none, WeightScheme::reweighing, WeightScheme::fairbalance})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

// A weight as the exact ratio of two counts.
struct WeightFraction {
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// Training weight per (group, label) cell. Only populated cells carry a
// weight. `exact` holds the same weights as unrounded fractions.
struct WeightTable {
  WeightScheme scheme = WeightScheme::none;
  std::array<std::array<std::optional<double>, 2>, 2> w{};               // [a][y]
  std::array<std::array<std::optional<WeightFraction>, 2>, 2> exact{};   // [a][y]
  std::array<std::array<std::size_t, 2>, 2> counts{};                    // [a][y]

  double at(int a, int y) const {
    const auto& cell = w[static_cast<std::size_t>(a)][static_cast<std::size_t>(y)];
    if (!cell)
      throw Error("no weight for empty cell (A=" + std::to_string(a) + ",Y=" + std::to_string(y) + ")");
    return *cell;
  }
};

// Weights depend only on the group and the ground-truth label; predictions
// are ignored.
//   reweighing:  w(a,y) = |A=a| |Y=y| / |A=a,Y=y|
//   fairbalance: w(a,y) = |A=a| / |A=a,Y=y|
// Reweighing is not divided by the dataset size; a global scale factor does
// not change the weighted empirical distribution.
inline WeightTable compute_weights(const PointSet& s, WeightScheme scheme) {
  if (s.mode() != LabelMode::binary) throw std::invalid_argument("weights need binary labels");
  WeightTable t;
  t.scheme = scheme;
  for (const auto& p : s.points())
    ++t.counts[static_cast<std::size_t>(p.a)][static_cast<std::size_t>(p.y)];

  std::array<std::uint64_t, 2> group_size{};
  std::array<std::uint64_t, 2> label_size{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t y = 0; y < 2; ++y) {
      group_size[a] += t.counts[a][y];
      label_size[y] += t.counts[a][y];
    }

  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t y = 0; y < 2; ++y) {
      const std::uint64_t cell = t.counts[a][y];
      if (scheme == WeightScheme::none) {
        if (cell > 0) t.exact[a][y] = WeightFraction{1, 1};
      } else {
        if (cell == 0)
          throw Error(std::string(to_string(scheme)) + " weights need every (A,Y) cell populated; (A=" +
                      std::to_string(a) + ",Y=" + std::to_string(y) + ") is empty");
        const std::uint64_t numerator =
            scheme == WeightScheme::reweighing ? group_size[a] * label_size[y] : group_size[a];
        t.exact[a][y] = WeightFraction{numerator, cell};
      }
      if (t.exact[a][y]) t.w[a][y] = t.exact[a][y]->value();
    }
  return t;
}

inline std::vector<double> point_weights(const PointSet& s, const WeightTable& t) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& p : s.points()) out.push_back(t.at(p.a, static_cast<int>(p.y)));
  return out;
}

}  // namespace compsep
