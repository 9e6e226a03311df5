#pragma once

#include <array>
#include <sstream>
#include <string>

#include "compsep/compsep.hpp"

namespace compsep::testing {

// Reference distributions f0..f3, in cell order (c,y,a) =
// (1,1,1) (0,1,1) (1,0,1) (0,0,1) (1,1,0) (0,1,0) (1,0,0) (0,0,0).
inline constexpr std::array<std::array<double, 8>, 4> kTableOne{{
    {0.220, 0.055, 0.090, 0.135, 0.180, 0.045, 0.110, 0.165},
    {0.220, 0.055, 0.081, 0.144, 0.180, 0.045, 0.121, 0.154},
    {0.231, 0.044, 0.081, 0.144, 0.171, 0.054, 0.121, 0.154},
    {0.230, 0.045, 0.105, 0.120, 0.200, 0.025, 0.100, 0.175},
}};

// Reference detection rates, expected and simulated, in column order
// separation n = 1,000 / 2,000, comparative n_p = 2,000 / 4,000.
inline constexpr std::array<std::array<double, 4>, 4> kExpectedPower{{
    {0.0975, 0.0975, 0.0975, 0.0975},
    {0.4743, 0.7464, 0.5032, 0.7692},
    {0.7800, 0.9682, 0.7274, 0.9484},
    {0.7890, 0.9712, 0.8232, 0.9813},
}};
inline constexpr std::array<std::array<double, 4>, 4> kSimulatedPower{{
    {0.0960, 0.0961, 0.0977, 0.0965},
    {0.4772, 0.7349, 0.5042, 0.7776},
    {0.7856, 0.9683, 0.7254, 0.9447},
    {0.7879, 0.9697, 0.8210, 0.9811},
}};
inline constexpr std::array<double, 4> kPowerSizes{1'000, 2'000, 2'000, 4'000};

inline JointDistribution::Cells to_cells(const std::array<double, 8>& column) {
  JointDistribution::Cells cells{};
  const int order[8][3] = {{1, 1, 1}, {0, 1, 1}, {1, 0, 1}, {0, 0, 1},
                           {1, 1, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  for (std::size_t i = 0; i < 8; ++i)
    cells[JointDistribution::cell_index(order[i][0], order[i][1], order[i][2])] = column[i];
  return cells;
}

inline JointDistribution table_one(std::size_t classifier) {
  return JointDistribution::from_cells(to_cells(kTableOne.at(classifier)));
}

inline PointSet points_from(const std::string& csv, LabelMode mode = LabelMode::binary) {
  std::istringstream in(csv);
  return load_point_set(in, mode);
}

inline PairSet pairs_from(const std::string& csv) {
  std::istringstream in(csv);
  return load_pair_set(in);
}

inline JointDistribution distribution_from(const std::string& text) {
  std::istringstream in(text);
  return load_distribution(in);
}

// Independently builds a point set with the given count of each (y, c, a)
// combination, in a fixed order.
inline PointSet points_with_counts(const std::array<std::size_t, 8>& counts_by_cell) {
  std::vector<LabeledPoint> pts;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t k = 0; k < counts_by_cell[i]; ++k)
      pts.push_back({static_cast<double>((i / 2) % 2), static_cast<double>(i / 4), static_cast<int>(i % 2)});
  return PointSet(std::move(pts), LabelMode::binary);
}

}  // namespace compsep::testing
