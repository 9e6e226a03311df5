#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "compsep/errors.hpp"

namespace compsep {

// sgn with sgn(0) = 0.
template <typename T>
constexpr int sign_of(T value) noexcept {
  return (T(0) < value) - (value < T(0));
}

enum class LabelMode { binary, continuous };

inline const char* to_string(LabelMode mode) noexcept {
  return mode == LabelMode::binary ? "binary" : "continuous";
}

constexpr bool is_valid_group(int a) noexcept { return a == 0 || a == 1; }

// One test instance. Features are never stored; evaluation needs only the
// ground truth, the prediction and the sensitive group.
struct LabeledPoint {
  double y = 0.0;
  double c = 0.0;
  int a = 0;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

// Validated, immutable pointwise test set.
class PointSet {
public:
  PointSet(std::vector<LabeledPoint> points, LabelMode mode)
      : points_(std::move(points)), mode_(mode) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (!is_valid_group(p.a))
        throw std::invalid_argument("point " + std::to_string(i) + ": group must be 0 or 1");
      if (!std::isfinite(p.y) || !std::isfinite(p.c))
        throw std::invalid_argument("point " + std::to_string(i) + ": non-finite label");
      if (mode_ == LabelMode::binary && (!is_binary(p.y) || !is_binary(p.c)))
        throw std::invalid_argument("point " + std::to_string(i) +
                                    ": binary mode requires y and c in {0,1}");
    }
  }

  std::span<const LabeledPoint> points() const noexcept { return points_; }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  LabelMode mode() const noexcept { return mode_; }

  static bool is_binary(double v) noexcept { return v == 0.0 || v == 1.0; }

private:
  std::vector<LabeledPoint> points_;
  LabelMode mode_;
};

// Ordered pair of sensitive groups (a_i, a_j).
class GroupPair {
public:
  constexpr GroupPair(int first, int second) : first_(first), second_(second) {
    if (!is_valid_group(first) || !is_valid_group(second))
      throw std::invalid_argument("group pair members must be 0 or 1");
  }

  constexpr int first() const noexcept { return first_; }
  constexpr int second() const noexcept { return second_; }
  constexpr GroupPair reversed() const noexcept { return GroupPair(second_, first_, Unchecked{}); }

  // Dense index in [0, 4): (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3.
  constexpr std::size_t index() const noexcept {
    return static_cast<std::size_t>(first_ * 2 + second_);
  }
  static constexpr GroupPair from_index(std::size_t i) {
    return GroupPair(static_cast<int>(i / 2), static_cast<int>(i % 2));
  }

  std::string label() const {
    return "(" + std::to_string(first_) + "," + std::to_string(second_) + ")";
  }

  friend constexpr bool operator==(GroupPair, GroupPair) = default;

private:
  struct Unchecked {};
  constexpr GroupPair(int first, int second, Unchecked) noexcept : first_(first), second_(second) {}

  int first_;
  int second_;
};

inline constexpr std::array<GroupPair, 4> kAllGroupPairs{
    GroupPair(0, 0), GroupPair(0, 1), GroupPair(1, 0), GroupPair(1, 1)};

// One comparative judgment. The ground truth is always decided (+1/-1); the
// prediction may be a tie (0).
struct JudgedPair {
  int a_i = 0;
  int a_j = 0;
  int y_ij = 1;
  int c_ij = 0;

  GroupPair groups() const { return GroupPair(a_i, a_j); }

  // Same judgment seen from the other item's side.
  JudgedPair reversed() const noexcept { return JudgedPair{a_j, a_i, -y_ij, -c_ij}; }

  friend bool operator==(const JudgedPair&, const JudgedPair&) = default;
};

class PairSet {
public:
  PairSet() = default;
  explicit PairSet(std::vector<JudgedPair> pairs, std::size_t discarded_ties = 0)
      : pairs_(std::move(pairs)), discarded_ties_(discarded_ties) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const auto& p = pairs_[i];
      if (!is_valid_group(p.a_i) || !is_valid_group(p.a_j))
        throw std::invalid_argument("pair " + std::to_string(i) + ": groups must be 0 or 1");
      if (p.y_ij != 1 && p.y_ij != -1)
        throw std::invalid_argument("pair " + std::to_string(i) + ": y_ij must be -1 or +1");
      if (p.c_ij < -1 || p.c_ij > 1)
        throw std::invalid_argument("pair " + std::to_string(i) + ": c_ij must be -1, 0 or +1");
    }
  }

  std::span<const JudgedPair> pairs() const noexcept { return pairs_; }
  const JudgedPair& operator[](std::size_t i) const { return pairs_[i]; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  std::size_t discarded_ties() const noexcept { return discarded_ties_; }

private:
  std::vector<JudgedPair> pairs_;
  std::size_t discarded_ties_ = 0;
};

// Probability table over (C, Y, A), each binary.
class JointDistribution {
public:
  static constexpr double kSumTolerance = 1e-9;

  using Cells = std::array<double, 8>;

  static constexpr std::size_t cell_index(int c, int y, int a) noexcept {
    return static_cast<std::size_t>(c * 4 + y * 2 + a);
  }

  // Validates non-negativity, normalization and positive (Y, A) marginals.
  static JointDistribution from_cells(const Cells& cells) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!std::isfinite(cells[i]) || cells[i] < 0.0)
        throw InvalidDistribution("cell " + cell_name(i) + " is negative or not finite");
      sum += cells[i];
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw InvalidDistribution("cells sum to " + std::to_string(sum) + ", expected 1");
    JointDistribution d(cells);
    for (int y = 0; y <= 1; ++y)
      for (int a = 0; a <= 1; ++a)
        if (!(d.marginal(y, a) > 0.0))
          throw InvalidDistribution("marginal P(Y=" + std::to_string(y) + ",A=" +
                                    std::to_string(a) + ") is zero");
    return d;
  }

  // Skips the positive-marginal check; for degenerate sampling fixtures only.
  static JointDistribution unchecked(const Cells& cells) { return JointDistribution(cells); }

  static JointDistribution uniform() {
    Cells cells;
    cells.fill(0.125);
    return from_cells(cells);
  }

  double p(int c, int y, int a) const { return cells_[cell_index(c, y, a)]; }
  double marginal(int y, int a) const { return p(0, y, a) + p(1, y, a); }
  double label_marginal(int y) const { return marginal(y, 0) + marginal(y, 1); }
  const Cells& cells() const noexcept { return cells_; }

  static std::string cell_name(std::size_t index) {
    const int c = static_cast<int>(index / 4);
    const int y = static_cast<int>((index / 2) % 2);
    const int a = static_cast<int>(index % 2);
    return "(c=" + std::to_string(c) + ",y=" + std::to_string(y) + ",a=" + std::to_string(a) + ")";
  }

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

private:
  explicit JointDistribution(const Cells& cells) : cells_(cells) {}

  Cells cells_{};
};

}  // namespace compsep
