#pragma once

// Reports rendered two ways from the same values: an aligned human-readable
// text form with fixed decimals, and a machine-readable key/value form
// (same syntax as distribution files) with full-precision numbers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "compsep/io.hpp"

namespace compsep {

inline constexpr int kReportSchemaVersion = 1;

struct ReportField {
  using Value = std::variant<double, std::int64_t, std::string, bool>;

  std::string key;
  Value value;
  int decimals = 3;  // text rendering of doubles only
};

struct ReportSection {
  std::string name;
  std::vector<ReportField> fields;

  ReportSection& add(std::string key, double v, int decimals = 3) {
    fields.push_back({std::move(key), v, decimals});
    return *this;
  }
  ReportSection& add(std::string key, std::size_t v) {
    fields.push_back({std::move(key), static_cast<std::int64_t>(v), 0});
    return *this;
  }
  ReportSection& add(std::string key, std::string v) {
    fields.push_back({std::move(key), std::move(v), 0});
    return *this;
  }
  ReportSection& add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }
  ReportSection& add(std::string key, bool v) {
    fields.push_back({std::move(key), v, 0});
    return *this;
  }
};

struct Report {
  std::string command;
  std::vector<ReportSection> sections;

  ReportSection& section(const std::string& name) {
    for (auto& s : sections)
      if (s.name == name) return s;
    sections.push_back({name, {}});
    return sections.back();
  }
};

namespace detail {

inline std::string render_machine_value(const ReportField::Value& v) {
  struct Visitor {
    std::string operator()(double d) const {
      if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
      if (std::isnan(d)) return "nan";
      return format_double(d);
    }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

inline std::string render_text_value(const ReportField& f) {
  if (const auto* d = std::get_if<double>(&f.value)) {
    if (!std::isfinite(*d)) return render_machine_value(f.value);
    std::ostringstream os;
    os << std::fixed << std::setprecision(f.decimals) << *d;
    return os.str();
  }
  if (const auto* b = std::get_if<bool>(&f.value)) return *b ? "yes" : "no";
  return render_machine_value(f.value);
}

}  // namespace detail

inline void render_key_values(std::ostream& out, const Report& r) {
  out << "schema_version = " << kReportSchemaVersion << '\n';
  out << "command = " << r.command << '\n';
  for (const auto& s : r.sections)
    for (const auto& f : s.fields)
      out << s.name << '.' << f.key << " = " << detail::render_machine_value(f.value) << '\n';
}

inline void render_text(std::ostream& out, const Report& r) {
  std::size_t width = 0;
  for (const auto& s : r.sections)
    for (const auto& f : s.fields) width = std::max(width, f.key.size());
  out << "compsep " << r.command << '\n';
  for (const auto& s : r.sections) {
    out << '\n' << "[" << s.name << "]\n";
    for (const auto& f : s.fields)
      out << "  " << std::left << std::setw(static_cast<int>(width)) << f.key << "  "
          << detail::render_text_value(f) << '\n';
  }
}

}  // namespace compsep
