#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wtk/error.hpp"
#include "wtk/explicit_formula/lemma31.hpp"

namespace wtk {

/// Constant names accepted by EstimationInput::constants.
inline const std::vector<std::string>& estimation_constant_names() {
  static const std::vector<std::string> names = {"c2",    "c6p",   "c7",    "c8",    "c10",   "c12",   "c13",
                                                 "c14",   "c15_1", "c15_2", "c15_3", "c19",   "c20",   "c21",
                                                 "c22_1", "c22_2", "c22_3", "c22_4"};
  return names;
}

struct EstimationInput {
  double log_dL = 0.0;
  double n_L = 1.0;
  double n = 1.0;  // n_L / n_K
  double log_NS = 0.0;
  double beta0 = 0.5;
  double x = 2.0;
  double y = 4.0;
  double delta = 1.0;
  std::map<std::string, double> constants;

  double c(const std::string& name) const {
    auto it = constants.find(name);
    return it == constants.end() ? 1.0 : it->second;
  }

  void validate(int j) const {
    for (const auto& [k, v] : constants) {
      bool known = false;
      for (const auto& n : estimation_constant_names()) known |= n == k;
      if (!known) throw InputError("EstimationInput: unknown constant " + k);
      if (!(v > 0)) throw InputError("EstimationInput: constant " + k + " must be positive");
    }
    if (!(log_dL > 0)) throw InputError("EstimationInput: d_L must exceed 1");
    if (!(beta0 > 0 && beta0 < 1)) throw InputError("EstimationInput: beta0 must lie in (0,1)");
    if (!(n > 0) || !(n_L >= n)) throw InputError("EstimationInput: need 0 < n <= n_L");
    if (log_NS < 0) throw InputError("EstimationInput: N_S must be positive");
    if (!(x > 1)) throw InputError("EstimationInput: x must exceed 1");
    if (j == 1 && !(y > x)) throw InputError("EstimationInput: j = 1 needs y > x");
    if (!(delta > 0)) throw InputError("EstimationInput: delta must be positive");
  }
};

/// Rows of the final chain.  Terms whose shape depends on the choice between
/// log d_L and log(d_L N_S^n) appear twice, tagged [dL] and [dLNS].
struct EstimationReport {
  int j = 1;
  std::vector<TermRow> rows;  // value = constant * shape, ratio = value / leading term
  double leading = 0.0;
  double rest = 0.0;     // remaining terms, log(d_L N_S^n) variant
  double rest_dL = 0.0;  // remaining terms, log d_L variant
  bool verdict = false;
  bool verdict_dL = false;
};

inline EstimationReport estimation_report(const EstimationInput& in, int j) {
  if (j != 1 && j != 2) throw InputError("estimation_report: j must be 1 or 2");
  in.validate(j);
  EstimationReport rep;
  rep.j = j;
  const double n = in.n, n_K = in.n_L / in.n;
  const double lx = std::log(in.x);
  const double ldL = in.log_dL;
  const double lQ = in.log_dL + in.n * in.log_NS;
  const double omb = 1 - in.beta0;
  std::vector<std::pair<std::string, double>> common;  // name, value
  std::vector<std::pair<std::string, double>> shapes;
  auto add = [&](const std::string& name, const std::string& cname, double shape, int variant) {
    TermRow r = make_row(name, in.c(cname) * shape, shape);
    r.note = variant == 0 ? "both" : variant == 1 ? "dL" : "dLNS";
    rep.rows.push_back(r);
  };
  if (j == 1) {
    const double lyx = std::log(in.y / in.x);
    rep.leading = lyx * lyx * std::min(1.0, omb * lyx) / (10 * n);
    rep.rows.push_back(make_row("leading", rep.leading, rep.leading, "both"));
    add("c13", "c13", ldL / n, 0);
    auto c14 = [&](double L) {
      return L * L * std::pow(0.5 * in.c("c2") * omb * L, 2 * in.c("c12") * lx / L) / n;
    };
    add("c14[dL]", "c14", c14(ldL), 1);
    add("c14[dLNS]", "c14", c14(lQ), 2);
    add("c15_1", "c15_1", lyx * ldL / (n * in.x * in.x), 0);
    add("c15_2", "c15_2", lyx * in.log_NS / (in.x * in.x), 0);
    add("c15_3", "c15_3", n_K * lyx * std::log(in.y) / (in.x * lx), 0);
    add("T1", "c6p", ldL / (n * in.x * in.x), 0);
  } else {
    rep.leading = in.x * in.x * std::min(1.0, omb * lx) / (10 * n);
    rep.rows.push_back(make_row("leading", rep.leading, rep.leading, "both"));
    add("c20", "c20", in.x * ldL / n, 0);
    auto c21 = [&](double L) { return in.x * in.x * std::pow(omb, in.c("c19") * lx / L) * L / n; };
    add("c21[dL]", "c21", c21(ldL), 1);
    add("c21[dLNS]", "c21", c21(lQ), 2);
    add("c22_1", "c22_1", std::sqrt(lx) * ldL / n, 0);
    add("c22_2", "c22_2", std::sqrt(lx) * in.log_NS, 0);
    add("c22_3", "c22_3", n_K * std::pow(in.x, 1.75), 0);
    add("c22_4", "c22_4", n_K * std::pow(in.x, 2 - in.delta * in.delta / 4) * lx, 0);
    add("T2", "c6p", ldL / n, 0);
  }
  for (auto& r : rep.rows) {
    if (r.name == "leading") {
      r.ratio = 1.0;
      continue;
    }
    r.ratio = r.value / rep.leading;
    if (r.note != "dLNS") rep.rest_dL += r.value;
    if (r.note != "dL") rep.rest += r.value;
  }
  rep.verdict = rep.leading > rep.rest;
  rep.verdict_dL = rep.leading > rep.rest_dL;
  return rep;
}

}  // namespace wtk
