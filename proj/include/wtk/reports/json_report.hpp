#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wtk/landau/witness.hpp"
#include "wtk/reports/config.hpp"

namespace wtk {

inline constexpr const char* kToolkitVersion = "1.0.0";

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string config_hash(const Config& c) { return hex64(fnv1a64(c.canonical())); }

/// Fixed-format real for CSV cells.
inline std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header fields every report carries.
inline nlohmann::ordered_json report_header(const Config& c, const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = kToolkitVersion;
  j["config_hash"] = config_hash(c);
  j["seed"] = c.seed;
  j["precision_digits"] = c.precision_digits;
  return j;
}

/// The same fields as '#' comment lines ahead of a CSV table.
inline std::string csv_preamble(const Config& c, const std::string& command) {
  std::ostringstream os;
  os << "# command=" << command << " version=" << kToolkitVersion << " config_hash=" << config_hash(c)
     << " seed=" << c.seed << " precision_digits=" << c.precision_digits << "\n";
  return os.str();
}

inline nlohmann::ordered_json real_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline nlohmann::ordered_json to_json(const WitnessReport& r) {
  nlohmann::ordered_json j;
  j["theorem_tag"] = std::string(1, tag_char(r.theorem_tag));
  j["subject"] = r.subject;
  j["witness_prime"] = r.witness_prime ? nlohmann::ordered_json(*r.witness_prime) : nlohmann::ordered_json(nullptr);
  j["excluded_S"] = r.excluded_S.primes();
  j["bound_value"] = real_or_null(r.bound_value);
  j["log_bound"] = r.log_bound;
  j["search_cap"] = r.search_cap;
  j["fitted_constant"] = r.fitted_constant ? real_or_null(*r.fitted_constant) : nlohmann::ordered_json(nullptr);
  j["log_base"] = r.log_base;
  return j;
}

inline std::string witness_csv_header() {
  return "theorem_tag,subject,S,witness_prime,bound_value,log_bound,search_cap,fitted_constant,log_base\n";
}

inline std::string witness_csv_row(const WitnessReport& r) {
  std::ostringstream os;
  os << tag_char(r.theorem_tag) << ',' << '"' << r.subject << '"' << ',' << '"' << r.excluded_S.to_string() << '"'
     << ',' << (r.witness_prime ? std::to_string(*r.witness_prime) : "") << ',' << fmt_real(r.bound_value) << ','
     << fmt_real(r.log_bound) << ',' << r.search_cap << ','
     << (r.fitted_constant ? fmt_real(*r.fitted_constant) : "") << ',' << fmt_real(r.log_base) << '\n';
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

/// (witness, log base) pairs of the rows tagged `form` in a table written
/// with witness_csv_row.
inline std::vector<FitPoint> read_witness_csv(std::istream& in, TheoremTag form) {
  std::vector<FitPoint> out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      if (line.rfind("theorem_tag", 0) == 0) continue;
    }
    auto f = detail::split_csv(line);
    if (f.size() != 9) throw InputError("witness table: expected 9 fields in '" + line + "'");
    if (f[3].empty() || f[0] != std::string(1, tag_char(form))) continue;
    try {
      out.push_back({std::stoll(f[3]), std::stod(f[8])});
    } catch (const std::exception&) {
      throw InputError("witness table: bad number in '" + line + "'");
    }
  }
  return out;
}

}  // namespace wtk
