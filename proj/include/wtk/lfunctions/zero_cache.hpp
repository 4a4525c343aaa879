#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wtk/error.hpp"
#include "wtk/lfunctions/zeros.hpp"

namespace wtk {

/// Append-only text store of located zeros, one record per line:
///   key <TAB> gamma <TAB> certified height <TAB> digits
/// Writers take an exclusive flock, readers a shared one.
class ZeroCache {
 public:
  explicit ZeroCache(std::string path) : path_(std::move(path)) {}

  /// Path from WTK_ZERO_CACHE if set, else `fallback`.
  static ZeroCache from_env(const std::string& fallback) {
    const char* p = std::getenv("WTK_ZERO_CACHE");
    return ZeroCache(p && *p ? std::string(p) : fallback);
  }

  const std::string& path() const { return path_; }

  void append(const std::string& key, const std::vector<ZeroDatum>& zeros, double height) const {
    int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw InputError("zero cache: cannot open " + path_ + " for writing");
    ::flock(fd, LOCK_EX);
    std::ostringstream os;
    os.precision(17);
    for (const auto& z : zeros) os << key << '\t' << z.gamma << '\t' << height << '\t' << z.precision_digits << '\n';
    std::string s = os.str();
    std::size_t off = 0;
    while (off < s.size()) {
      auto w = ::write(fd, s.data() + off, s.size() - off);
      if (w <= 0) break;
      off += static_cast<std::size_t>(w);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (off != s.size()) throw InputError("zero cache: short write to " + path_);
  }

  struct Entry {
    std::vector<ZeroDatum> zeros;
    double height = 0.0;
  };

  /// Records for `key`, deduplicated, marked as imported.
  Entry read(const std::string& key) const {
    Entry e;
    int fd = ::open(path_.c_str(), O_RDONLY);
    if (fd < 0) return e;
    ::flock(fd, LOCK_SH);
    std::ifstream in(path_);
    std::string line;
    std::map<double, ZeroDatum> uniq;
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string k, g, h, d;
      if (!std::getline(ss, k, '\t') || !std::getline(ss, g, '\t') || !std::getline(ss, h, '\t') || !std::getline(ss, d))
        continue;
      if (k != key) continue;
      ZeroDatum z;
      z.gamma = std::stod(g);
      z.precision_digits = std::stoi(d);
      z.source = ZeroSource::imported;
      e.height = std::max(e.height, std::stod(h));
      // keep one record per zero (agreeing to the stored digits)
      bool dup = false;
      for (auto& [gg, zz] : uniq)
        if (std::abs(gg - z.gamma) <= std::pow(10.0, -std::min(z.precision_digits, zz.precision_digits)) * std::max(1.0, std::abs(gg))) {
          dup = true;
          break;
        }
      if (!dup) uniq.emplace(z.gamma, z);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    for (auto& [g, z] : uniq) e.zeros.push_back(z);
    return e;
  }

 private:
  std::string path_;
};

/// Imported zeros of chi up to T, re-certified: each stored ordinate must
/// bracket a sign change of the Hardy function and the argument-principle
/// count up to the stored height must equal the number of records.
inline std::vector<ZeroDatum> certify_imported(const DirichletCharacter& chi, const ZeroCache::Entry& e, double T,
                                               const Precision& prec = {}) {
  if (e.height < T) throw CertificationError("imported zeros cover only height " + std::to_string(e.height), -1, -1);
  LFunction<> L(chi.primitive(), prec);
  long n = 0;
  std::vector<ZeroDatum> out;
  for (const auto& z : e.zeros) {
    if (z.gamma > e.height) continue;
    ++n;
    double d = std::max(1e-12, std::pow(10.0, -z.precision_digits + 1) * std::max(1.0, z.gamma));
    double a = L.hardy_z(z.gamma - d), b = L.hardy_z(z.gamma + d);
    if ((a < 0) == (b < 0)) throw CertificationError("imported zero at " + std::to_string(z.gamma) + " has no sign change", n, -1);
    if (z.gamma <= T) out.push_back(z);
  }
  long counted = argument_principle_count(L, e.height);
  if (counted != n) throw CertificationError("imported zero list is incomplete", n, counted);
  return out;
}

}  // namespace wtk
