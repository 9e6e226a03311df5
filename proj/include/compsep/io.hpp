#pragma once

// Text formats.
//
// Point sets: CSV with header `y,c,a`, one point per row.
// Pair sets:  CSV with header `a_i,a_j,y_ij,c_ij` (judgment form) or
//             `a_i,a_j,y_ij,s_i,s_j` (score form, c_ij = sgn(s_i - s_j)).
// Key/value:  one `key = value` per line, `#` starts a comment. Joint
//             distributions use the keys p_c<c>_y<y>_a<a>.
//
// Doubles are written in shortest round-trip form so load(write(x)) == x.

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "compsep/errors.hpp"
#include "compsep/types.hpp"

namespace compsep {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Reads the header and data rows, skipping blank lines. Returns rows with
// their 1-based data row numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    ++row;
    std::vector<std::string> cells;
    cells.reserve(fields.size());
    for (auto f : fields) cells.emplace_back(f);
    table.rows.emplace_back(row, std::move(cells));
  }
  if (!have_header) throw ParseError(0, "empty file");
  if (table.rows.empty()) throw ParseError(0, "no data rows after header");
  return table;
}

inline double require_double(const std::string& cell, std::size_t row, const char* column) {
  const auto v = parse_double(cell);
  if (!v || !std::isfinite(*v))
    throw ParseError(row, std::string("malformed value '") + cell + "' in column " + column);
  return *v;
}

inline int require_integer(const std::string& cell, std::size_t row, const char* column) {
  const auto v = parse_integer(cell);
  if (!v) throw ParseError(row, std::string("malformed integer '") + cell + "' in column " + column);
  if (*v < -1000 || *v > 1000)
    throw ParseError(row, std::string("value out of range in column ") + column);
  return static_cast<int>(*v);
}

inline int require_group(const std::string& cell, std::size_t row, const char* column) {
  const auto v = parse_double(cell);
  if (!v) throw ParseError(row, std::string("malformed value '") + cell + "' in column " + column);
  if (*v != 0.0 && *v != 1.0)
    throw ParseError(row, std::string("unknown group value '") + cell + "' in column " + column);
  return static_cast<int>(*v);
}

inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

inline PointSet load_point_set(std::istream& in, LabelMode mode) {
  const auto table = detail::read_csv(in);
  const std::vector<std::string> expected{"y", "c", "a"};
  if (table.header != expected) throw ParseError(0, "point file header must be 'y,c,a'");

  std::vector<LabeledPoint> points;
  points.reserve(table.rows.size());
  for (const auto& [row, cells] : table.rows) {
    if (cells.size() != 3)
      throw ParseError(row, "expected 3 fields, found " + std::to_string(cells.size()));
    LabeledPoint p;
    p.y = detail::require_double(cells[0], row, "y");
    p.c = detail::require_double(cells[1], row, "c");
    p.a = detail::require_group(cells[2], row, "a");
    if (mode == LabelMode::binary) {
      if (!PointSet::is_binary(p.y)) throw ParseError(row, "non-binary ground truth");
      if (!PointSet::is_binary(p.c)) throw ParseError(row, "non-binary prediction");
    }
    points.push_back(p);
  }
  return PointSet(std::move(points), mode);
}

inline PairSet load_pair_set(std::istream& in) {
  const auto table = detail::read_csv(in);
  const std::vector<std::string> judgment{"a_i", "a_j", "y_ij", "c_ij"};
  const std::vector<std::string> score{"a_i", "a_j", "y_ij", "s_i", "s_j"};
  const bool score_form = table.header == score;
  if (!score_form && table.header != judgment)
    throw ParseError(0, "pair file header must be 'a_i,a_j,y_ij,c_ij' or 'a_i,a_j,y_ij,s_i,s_j'");

  const std::size_t width = table.header.size();
  std::vector<JudgedPair> pairs;
  pairs.reserve(table.rows.size());
  for (const auto& [row, cells] : table.rows) {
    if (cells.size() != width)
      throw ParseError(row, "expected " + std::to_string(width) + " fields, found " +
                                std::to_string(cells.size()));
    JudgedPair p;
    p.a_i = detail::require_group(cells[0], row, "a_i");
    p.a_j = detail::require_group(cells[1], row, "a_j");
    p.y_ij = detail::require_integer(cells[2], row, "y_ij");
    if (p.y_ij == 0) throw ParseError(row, "y_ij = 0 not allowed (tied ground truth)");
    if (p.y_ij != 1 && p.y_ij != -1) throw ParseError(row, "y_ij must be -1 or 1");
    if (score_form) {
      const double s_i = detail::require_double(cells[3], row, "s_i");
      const double s_j = detail::require_double(cells[4], row, "s_j");
      p.c_ij = sign_of(s_i - s_j);
    } else {
      p.c_ij = detail::require_integer(cells[3], row, "c_ij");
      if (p.c_ij < -1 || p.c_ij > 1) throw ParseError(row, "c_ij must be -1, 0 or 1");
    }
    pairs.push_back(p);
  }
  return PairSet(std::move(pairs));
}

// Ordered key/value entries from the `key = value` format, with the line
// number of each entry.
struct KeyValueEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

inline std::vector<KeyValueEntry> read_key_values(std::istream& in) {
  std::vector<KeyValueEntry> entries;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    KeyValueEntry e;
    e.key = std::string(detail::trim(text.substr(0, eq)));
    e.value = std::string(detail::trim(text.substr(eq + 1)));
    e.line = line;
    if (e.key.empty()) throw ParseError(line, "empty key");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::string distribution_key(int c, int y, int a) {
  return "p_c" + std::to_string(c) + "_y" + std::to_string(y) + "_a" + std::to_string(a);
}

inline JointDistribution load_distribution(std::istream& in) {
  const auto entries = read_key_values(in);
  if (entries.empty()) throw ParseError(0, "empty file");

  std::array<std::optional<double>, 8> cells;
  for (const auto& e : entries) {
    std::optional<std::size_t> slot;
    for (int c = 0; c <= 1 && !slot; ++c)
      for (int y = 0; y <= 1 && !slot; ++y)
        for (int a = 0; a <= 1 && !slot; ++a)
          if (e.key == distribution_key(c, y, a)) slot = JointDistribution::cell_index(c, y, a);
    if (!slot) throw ParseError(e.line, "unknown key '" + e.key + "'");
    if (cells[*slot]) throw ParseError(e.line, "duplicate key '" + e.key + "'");
    const auto v = detail::parse_double(e.value);
    if (!v) throw ParseError(e.line, "malformed probability '" + e.value + "'");
    cells[*slot] = *v;
  }

  JointDistribution::Cells values{};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) throw InvalidDistribution("missing cell " + JointDistribution::cell_name(i));
    values[i] = *cells[i];
  }
  return JointDistribution::from_cells(values);
}

inline void write_point_set(std::ostream& out, const PointSet& s) {
  out << "y,c,a\n";
  for (const auto& p : s.points())
    out << detail::format_double(p.y) << ',' << detail::format_double(p.c) << ',' << p.a << '\n';
}

inline void write_pair_set(std::ostream& out, const PairSet& s) {
  out << "a_i,a_j,y_ij,c_ij\n";
  for (const auto& p : s.pairs()) out << p.a_i << ',' << p.a_j << ',' << p.y_ij << ',' << p.c_ij << '\n';
}

inline void write_distribution(std::ostream& out, const JointDistribution& d) {
  for (int a = 1; a >= 0; --a)
    for (int y = 1; y >= 0; --y)
      for (int c = 1; c >= 0; --c)
        out << distribution_key(c, y, a) << " = " << detail::format_double(d.p(c, y, a)) << '\n';
}

}  // namespace compsep
