#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "wtk/error.hpp"
#include "wtk/explicit_formula/estimation.hpp"

namespace wtk {

/// Flat `key = value` configuration.  Lines starting with '#' are comments;
/// unknown keys are rejected.
struct Config {
  int precision_digits = 15;
  double H = 0.5;
  double delta = 0.1;
  double epsilon = 0.1;
  double zero_ceiling = 60.0;
  std::int64_t witness_cap = 1000000;
  std::string cache_path = "wtk_zeros.tsv";
  std::uint64_t seed = 1;
  std::map<std::string, double> constants;

  static const std::vector<std::string>& constant_names() {
    static const std::vector<std::string> names = [] {
      auto v = estimation_constant_names();
      for (const char* k : {"C_A", "C_B", "C_C", "A_threshold"}) v.push_back(k);
      return v;
    }();
    return names;
  }

  double constant(const std::string& name) const {
    auto it = constants.find(name);
    return it == constants.end() ? 1.0 : it->second;
  }

  /// The estimation constants only, as EstimationInput expects them.
  std::map<std::string, double> estimation_constants() const {
    std::map<std::string, double> out;
    for (const auto& n : estimation_constant_names())
      if (auto it = constants.find(n); it != constants.end()) out[n] = it->second;
    return out;
  }

  void set(const std::string& key, const std::string& value) {
    auto num = [&] {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size()) throw InputError("config: '" + key + "' needs a number, got '" + value + "'");
      if (!(v > 0)) throw InputError("config: '" + key + "' must be positive");
      return v;
    };
    if (key == "precision_digits") {
      precision_digits = static_cast<int>(num());
      if (precision_digits < 15) throw InputError("config: precision_digits must be at least 15");
    } else if (key == "H") {
      H = num();
    } else if (key == "delta") {
      delta = num();
      if (!(delta < 0.5)) throw InputError("config: delta must be below 1/2");
    } else if (key == "epsilon") {
      epsilon = num();
    } else if (key == "zero_ceiling") {
      zero_ceiling = num();
    } else if (key == "witness_cap") {
      witness_cap = static_cast<std::int64_t>(num());
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(num());
    } else if (key == "cache_path") {
      if (value.empty()) throw InputError("config: cache_path is empty");
      cache_path = value;
    } else {
      for (const auto& n : constant_names())
        if (n == key) {
          constants[key] = num();
          return;
        }
      throw InputError("config: unknown key '" + key + "'");
    }
  }

  static Config parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    auto trim = [](std::string s) {
      const char* ws = " \t\r";
      s.erase(0, s.find_first_not_of(ws));
      s.erase(s.find_last_not_of(ws) + 1);
      return s;
    };
    while (std::getline(in, line)) {
      ++no;
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw InputError("config line " + std::to_string(no) + ": expected key = value");
      c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  /// Sorted key = value lines; equal configurations give equal text.
  std::string canonical() const {
    std::map<std::string, std::string> kv;
    auto fmt = [](double v) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    kv["precision_digits"] = std::to_string(precision_digits);
    kv["H"] = fmt(H);
    kv["delta"] = fmt(delta);
    kv["epsilon"] = fmt(epsilon);
    kv["zero_ceiling"] = fmt(zero_ceiling);
    kv["witness_cap"] = std::to_string(witness_cap);
    kv["cache_path"] = cache_path;
    kv["seed"] = std::to_string(seed);
    for (const auto& n : constant_names()) kv[n] = fmt(constant(n));
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
  }
};

}  // namespace wtk
