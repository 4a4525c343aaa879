// One PASS/FAIL line per acceptance check; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/explicit_formula/class_sum.hpp"
#include "wtk/explicit_formula/contour.hpp"
#include "wtk/landau/factors.hpp"
#include "wtk/landau/smoothed.hpp"
#include "wtk/landau/weight.hpp"
#include "wtk/landau/witness.hpp"
#include "wtk/lfunctions/l_value.hpp"
#include "wtk/lfunctions/zeros.hpp"
#include "wtk/rankin/satake.hpp"

using namespace wtk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void check(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-34s %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

DirichletCharacter prim(std::int64_t f, std::size_t i = 0) { return primitive_characters(f).at(i); }

DirichletCharacter order4_mod5() {
  for (auto& c : primitive_characters(5))
    if (c.order() == 4) return c;
  throw std::logic_error("no order-4 character mod 5");
}

Outcome functional_equation() {
  double worst = 0;
  int n = 0;
  for (std::int64_t f = 1; f <= 50; ++f)
    for (auto& chi : primitive_characters(f)) {
      LFunction<> L(chi), Lb(chi.conj());
      for (double sx : {-1.0, -0.25, 0.5, 1.25, 2.0})
        for (double ty : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
          const cplx s(sx, ty);
          worst = std::max(worst, std::abs(L.completed(s) - L.root_number_value() * Lb.completed(1.0 - s)));
        }
      ++n;
    }
  return {worst < 1e-10, fmt("%.0f characters, max residual %.2e", n, worst)};
}

Outcome mellin_identity() {
  const std::vector<std::pair<DirichletCharacter, KernelParams>> cases = {
      {DirichletCharacter::principal(1), KernelParams::k1(2, 4)},
      {DirichletCharacter::principal(1), KernelParams::k2(3)},
      {DirichletCharacter::principal(1), KernelParams::k1(3, 5)},
      {prim(4), KernelParams::k1(2, 4)},
      {prim(4), KernelParams::k2(3)},
      {prim(3), KernelParams::k1(2, 4)},
      {prim(3), KernelParams::k2(2)},
      {order4_mod5(), KernelParams::k1(2, 3)},
      {order4_mod5(), KernelParams::k2(2.5)},
      {prim(8), KernelParams::k1(1.5, 3)},
      {prim(7, 2), KernelParams::k2(3)},
      {prim(12), KernelParams::k2(2)},
  };
  double worst = 0;
  for (const auto& [chi, k] : cases) worst = std::max(worst, std::abs(prime_side_J(chi, k) - contour_J(chi, k).value));
  return {worst < 1e-6, fmt("%.0f combinations, max |prime - contour| %.2e", cases.size(), worst)};
}

Outcome residue_identity() {
  double worst = 0;
  for (auto chi : {DirichletCharacter::principal(1), prim(4)}) {
    const auto zl = zero_inventory(chi, 30);
    for (auto k : {KernelParams::k1(2, 4), KernelParams::k2(3)})
      worst = std::max(worst, std::abs(contour_J(chi, k).value - zero_side_J(chi, k, zl, 30).value));
  }
  return {worst < 1e-6, fmt("zeta and chi mod 4, T = 30, max |contour - zero side| %.2e", worst)};
}

Outcome class_sum_identity() {
  double worst = 0;
  int exts = 0, classes = 0;
  const auto k = KernelParams::k1(2, 4);
  for (std::int64_t n = 1; n <= 40; ++n)
    for (const auto& H : unit_subgroups(n)) {
      const auto ext = make_extension(n, H);
      for (const auto& cs : class_sums(ext, k)) {
        worst = std::max(worst, cs.discrepancy);
        ++classes;
      }
      ++exts;
    }
  return {worst < 1e-8, fmt("%.0f extensions, %.0f classes, max discrepancy %.2e", exts, classes, worst)};
}

Outcome conductor_discriminant() {
  int exts = 0, bad = 0;
  for (std::int64_t n = 1; n <= 60; ++n) {
    if (cyclotomic_field(n).discriminant() != cyclotomic_discriminant(n)) ++bad;
    for (const auto& H : unit_subgroups(n)) {
      const auto ext = make_extension(n, H);
      if (ext.discriminant() != discriminant_by_ramification(ext)) ++bad;
      ++exts;
    }
  }
  return {bad == 0, fmt("%.0f extensions, %.0f mismatches", exts, bad)};
}

Outcome schur() {
  std::mt19937_64 g(20240601);
  const std::int64_t qs[] = {2, 3, 4, 5, 7, 9, 11, 13};
  double worst = INFINITY;
  int fails = 0, n = 0;
  for (int d = 1; d <= 4; ++d)
    for (int i = 0; i < 10000; ++i, ++n) {
      auto r = schur_positivity_check(random_satake(g, qs[i % 8], d));
      worst = std::min(worst, r.a_qd);
      fails += !r.pass;
    }
  for (int i = 0; i < 1000; ++i, ++n) {
    auto r = schur_positivity_check(random_satake(g, qs[i % 8], 1 + i % 4, 0.4));
    worst = std::min(worst, r.a_qd);
    fails += !r.pass;
  }
  return {fails == 0, fmt("%.0f classes, min a_{q^d} %.12f, %.0f below 1 - 1e-9", n, worst, fails)};
}

Outcome landau() {
  const auto one = DirichletCharacter::principal(1);
  const std::vector<std::pair<DirichletCharacter, DirichletCharacter>> pairs = {
      {prim(4), one},          {prim(3), one},     {order4_mod5(), one},   {prim(7, 1), one},
      {order4_mod5(), prim(4)}, {prim(8), prim(3)}, {prim(4), prim(3)},     {prim(20), one},
  };
  const AAWindow w{0.5, 0.1, {}};
  double worst = 0;
  for (const auto& [a, b] : pairs) {
    ShiftedSum ss(a, b, w);
    for (const auto& S : {ExclusionSet(), ExclusionSet({7})})
      for (double X : {100.0, 1000.0}) worst = std::max(worst, std::abs(ss.evaluate(S, X).value - smoothed_sum_direct(a, b, S, X)));
  }
  return {worst < 1e-6, fmt("8 pairs x 2 S x 2 X, max |direct - shifted| %.2e", worst)};
}

Outcome gamma_factors() {
  double worst = 0;
  const std::vector<std::vector<cplx>> shift_sets = {
      {cplx(0, 0)}, {cplx(1, 0)}, {cplx(0, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0), cplx(1, 0), cplx(1, 0)}};
  for (const auto& sh : shift_sets)
    for (double H : {0.5, 1.5}) {
      if (!aa_admissible(H, 0.1, sh).admissible) continue;
      worst = std::max(worst, std::abs(g0_growth_exponent(sh, H) - sh.size() * (0.5 + H)));
    }
  // |G1(-H)| against the majorant, local data α_i conj(β_j) from classes with RB <= R
  std::mt19937_64 g(7);
  int samples = 0, over = 0;
  for (int d = 1; d <= 3; ++d)
    for (double R : {0.0, 0.1, 0.2})
      for (double H : {0.5, 1.5}) {
        if (!(H > 2 * R)) continue;
        for (int i = 0; i < 100; ++i, ++samples) {
          std::vector<std::int64_t> S = {2, 3, 7};
          S.resize(1 + i % 3);
          std::map<std::int64_t, std::vector<cplx>> local;
          for (auto p : S) {
            auto a = random_satake(g, p, d, R), b = random_satake(g, p, d, R);
            local[p] = rs_local_eigenvalues(a, b.dual());
          }
          if (std::abs(g1_factor(cplx(-H, 0), S, local)) > g1_majorant(S, d, R, H)) ++over;
        }
      }
  return {worst <= 0.15 && over == 0,
          fmt("max |slope - D(1/2+H)| %.3f; G1 over majorant in %.0f of %.0f samples", worst, over, samples)};
}

Outcome sweeps() {
  SweepOptions o;
  auto b = sweep_theorem_b(o);
  o.max_conductor = 100;
  o.max_S = 3;
  auto a = sweep_theorem_a(o);
  std::size_t missing = 0;
  for (auto* v : {&a, &b})
    for (auto& r : *v) missing += !r.witness_prime;
  auto fb = fit_constants(fit_points(b)), fa = fit_constants(fit_points(a));
  // regression baselines from the first full run
  const bool frozen = std::abs(fb.least_squares - 0.135358) < 1e-5 && std::abs(fb.max_ratio - 0.898244) < 1e-5 &&
                      std::abs(fa.least_squares - 0.0113298) < 1e-6 && std::abs(fa.max_ratio - 1.77124) < 1e-5;
  std::ostringstream os;
  os << b.size() << " B + " << a.size() << " A reports, " << missing << " without witness; B: C_ls "
     << fb.least_squares << " C_max " << fb.max_ratio << "; A: C_ls " << fa.least_squares << " C_max " << fa.max_ratio
     << (frozen ? "" : " (baseline drift)");
  return {missing == 0 && b.size() == 183370 && a.size() == 37980 && frozen, os.str()};
}

// ∫_0^3 |ω''(x)| x^{σ+1} dx, the constant in |s(s+1) W(s)| <= it.
double second_derivative_mass(double sigma) {
  auto f = [&](double x) {
    const double h = 1e-4 * std::min(1.0, x);
    const double dd = (omega(x + h) - 2 * omega(x) + omega(x - h)) / (h * h);
    return std::abs(dd) * std::pow(x, sigma + 1);
  };
  double s = 0;
  for (int i = 0; i < 60; ++i) s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, i * 0.05, (i + 1) * 0.05, 6, 1e-9);
  return s;
}

Outcome weight() {
  int bad = 0;
  for (int i = -100; i <= 4100; ++i) {
    const double x = i / 1000.0;
    const double w = omega(x);
    if (w < 0 || w > 1) ++bad;
    if ((x <= 0 || x >= 3) && w != 0) ++bad;
    if (x >= 1 && x <= 2 && w < std::exp(-1.0) - 1e-15) ++bad;
  }
  double sup = 0;
  int over = 0;
  for (double sigma : {-0.5, -1.0}) {
    const double mass = second_derivative_mass(sigma);
    MellinLine line(sigma);
    for (double t = 0; t <= 50; t += 0.25) {
      const cplx s(sigma, t);
      const double w = std::abs(line(t));
      sup = std::max(sup, w * (1 + t) * (1 + t));
      if (t >= 1 && w * std::abs(s * (s + 1.0)) > mass * (1 + 1e-6)) ++over;
    }
  }
  return {bad == 0 && over == 0 && std::isfinite(sup),
          fmt("%.0f weight violations; sup |W|(1+|t|)^2 = %.3f; %.0f samples above the integration-by-parts bound", bad,
              sup, over)};
}

std::string run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(WTK_CLI_PATH) + " --out " + out.string() + " " + args + " > /dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) throw std::runtime_error("cli failed: " + args);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "wtk_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> cmds = {
      "schur-check --d 3 --samples 2000 --seed 11",
      "witness-char --modulus 20 --char odd --exclude 3,7",
      "witness-chebotarev --conductor 24 --class 5 --exclude 2,7",
      "fit-constants --form B --sweep --threads 1",
  };
  int differ = 0;
  for (const auto& c : cmds)
    if (run_cli(c, dir / "a.out") != run_cli(c, dir / "b.out")) ++differ;
  // thread count
  if (run_cli("fit-constants --form B --sweep --threads 1", dir / "a.out") !=
      run_cli("fit-constants --form B --sweep --threads 4", dir / "b.out"))
    ++differ;
  SweepOptions o;
  o.max_conductor = 100;
  o.max_S = 3;
  auto a1 = sweep_theorem_a(o);
  o.threads = 4;
  auto a4 = sweep_theorem_a(o);
  bool same = a1.size() == a4.size();
  for (std::size_t i = 0; same && i < a1.size(); ++i) same = a1[i].witness_prime == a4[i].witness_prime && a1[i].subject == a4[i].subject;
  fs::remove_all(dir);
  return {differ == 0 && same, fmt("%.0f of %.0f repeated outputs differ; A sweep thread invariant: %.0f", differ,
                                   cmds.size() + 1, same)};
}

}  // namespace

int main() {
  check(1, "functional equation", 120, functional_equation);
  check(2, "Mellin identity", 120, mellin_identity);
  check(3, "residue identity", 300, residue_identity);
  check(4, "class sum identity", 180, class_sum_identity);
  check(5, "conductor-discriminant", 60, conductor_discriminant);
  check(6, "Schur positivity", 60, schur);
  check(7, "Landau contour shift", 300, landau);
  check(8, "gamma factor audit", 120, gamma_factors);
  check(9, "witness sweeps", 600, sweeps);
  check(10, "weight and Mellin bounds", 60, weight);
  check(11, "determinism", 600, determinism);
  std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
