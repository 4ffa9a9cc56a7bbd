#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathform/config.hpp"

namespace pathform {

inline constexpr const char* kVersion = "0.1.0";

enum class RowKind { Exact, Statistical, Deterministic };

inline const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Exact: return "exact";
    case RowKind::Statistical: return "statistical";
    case RowKind::Deterministic: return "deterministic";
  }
  return "?";
}

struct ReportRow {
  std::string name;
  std::string inputs;  // human-readable inputs; digested in the outputs
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
  double threshold = 0.0;
  double certified_error = 0.0;
  bool pass = false;
  RowKind kind = RowKind::Exact;
  std::string anchor;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_digest;
  nlohmann::json config;
  std::vector<ReportRow> rows;

  bool pass() const {
    for (const auto& r : rows) {
      if (!r.pass) return false;
    }
    return true;
  }
};

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Digest of everything that determines the rows; the output directory is not part of it.
inline nlohmann::json digest_view(const RunConfig& c) {
  auto j = to_json(c);
  j.erase("out");
  return j;
}

inline std::string config_digest(const RunConfig& c) { return hex64(fnv1a64(digest_view(c).dump())); }

inline nlohmann::json row_to_json(const ReportRow& r) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  return {{"name", r.name},
          {"inputs", r.inputs},
          {"inputs_digest", hex64(fnv1a64(r.inputs))},
          {"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},
          {"diff", num(r.diff)},
          {"threshold", num(r.threshold)},
          {"certified_error", num(r.certified_error)},
          {"pass", r.pass},
          {"kind", to_string(r.kind)},
          {"anchor", r.anchor}};
}

inline nlohmann::json report_to_json(const Report& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) rows.push_back(row_to_json(r));
  return {{"suite", rep.suite},
          {"pass", rep.pass()},
          {"provenance", {{"seed", rep.seed}, {"config_digest", rep.config_digest}, {"version", kVersion}}},
          {"config", rep.config},
          {"rows", rows}};
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const Report& rep) {
  out << "suite,operation,inputs_digest,lhs,rhs,diff,threshold,certified_error,pass,kind,anchor\n";
  for (const auto& r : rep.rows) {
    out << rep.suite << ',' << detail::csv_field(r.name) << ',' << hex64(fnv1a64(r.inputs)) << ','
        << detail::csv_number(r.lhs) << ',' << detail::csv_number(r.rhs) << ',' << detail::csv_number(r.diff) << ','
        << detail::csv_number(r.threshold) << ',' << detail::csv_number(r.certified_error) << ','
        << (r.pass ? "pass" : "fail") << ',' << to_string(r.kind) << ',' << detail::csv_field(r.anchor) << '\n';
  }
}

}  // namespace pathform
