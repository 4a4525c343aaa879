#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wtk/explicit_formula/contour.hpp"
#include "wtk/explicit_formula/estimation.hpp"
#include "wtk/landau/factors.hpp"
#include "wtk/landau/smoothed.hpp"
#include "wtk/landau/witness.hpp"
#include "wtk/lfunctions/zero_cache.hpp"
#include "wtk/lfunctions/zeros.hpp"
#include "wtk/rankin/satake.hpp"
#include "wtk/reports/config.hpp"
#include "wtk/reports/json_report.hpp"

namespace wtk {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitViolation = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "witness-char", "witness-pair",    "witness-chebotarev", "explicit-formula", "zero-scan",
      "landau-check", "schur-check",     "bound-table",        "estimation-table", "fit-constants"};
  return names;
}

/// Character mod q from a selector: a key "q|gens|exps", principal, odd,
/// even (first primitive one of that parity), or an index into the
/// enumeration of all characters mod q.
inline DirichletCharacter select_character(std::int64_t q, const std::string& sel) {
  if (q < 1) throw InputError("modulus must be positive");
  if (sel.find('|') != std::string::npos) {
    auto c = DirichletCharacter::from_key(sel);
    if (c.modulus() != q) throw InputError("character key '" + sel + "' is not mod " + std::to_string(q));
    return c;
  }
  if (sel == "principal" || sel == "trivial") return DirichletCharacter::principal(q);
  if (sel == "odd" || sel == "even") {
    const int b = sel == "odd" ? 1 : 0;
    for (const auto& c : primitive_characters(q))
      if (c.parity_b() == b && !c.is_principal()) return c;
    throw InputError("no primitive " + sel + " character mod " + std::to_string(q));
  }
  std::size_t used = 0;
  long long k = -1;
  try {
    k = std::stoll(sel, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != sel.size() || k < 0) throw InputError("unknown character selector '" + sel + "'");
  auto all = all_characters(q);
  if (static_cast<std::size_t>(k) >= all.size())
    throw InputError("character index " + sel + " out of range (" + std::to_string(all.size()) + " characters)");
  return all[static_cast<std::size_t>(k)];
}

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline nlohmann::ordered_json cjson(cplx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

inline std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw InputError("bad number '" + tok + "'");
    }
  }
  return v;
}

}  // namespace detail

/// Runs one subcommand.  args excludes the program name.  Returns the exit
/// status: 0 success, 2 usage or input error, 3 certification or identity
/// violation (including a failed check).
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Explicit-formula and witness-prime toolkit", "wtk"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_path;
  unsigned threads = 1;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  Config cfg;
  std::int64_t modulus = 4, modulus2 = 1, conductor_n = 4, cap = 0;
  std::string chsel = "odd", chsel2 = "principal", exclude, subgroup = "1";
  std::int64_t cls = 1;

  auto* wchar = app.add_subcommand("witness-char", "least prime where a character is nontrivial");
  wchar->add_option("--modulus", modulus)->required();
  wchar->add_option("--char", chsel);
  wchar->add_option("--exclude", exclude, "comma-separated primes");
  wchar->add_option("--cap", cap);

  auto* wpair = app.add_subcommand("witness-pair", "least prime separating two characters");
  wpair->add_option("--modulus", modulus)->required();
  wpair->add_option("--char", chsel);
  wpair->add_option("--modulus2", modulus2);
  wpair->add_option("--char2", chsel2);
  wpair->add_option("--exclude", exclude);
  wpair->add_option("--cap", cap);

  auto* wcheb = app.add_subcommand("witness-chebotarev", "least prime with a given Artin symbol");
  wcheb->add_option("--conductor", conductor_n)->required();
  wcheb->add_option("--subgroup", subgroup, "residues generating H");
  wcheb->add_option("--class", cls, "residue representing the class");
  wcheb->add_option("--exclude", exclude);
  wcheb->add_option("--cap", cap);

  std::string kernel = "K2";
  double kx = 3, ky = 0, height = 0;
  auto* ef = app.add_subcommand("explicit-formula", "prime side, contour and zero side of J");
  ef->add_option("--modulus", modulus)->required();
  ef->add_option("--char", chsel);
  ef->add_option("--kernel", kernel)->check(CLI::IsMember({"K1", "K2"}));
  ef->add_option("--x", kx);
  ef->add_option("--y", ky);
  ef->add_option("--height", height, "zero-side rectangle height; 0 skips it");

  auto* zs = app.add_subcommand("zero-scan", "certified zeros up to a height, kept in the cache");
  zs->add_option("--modulus", modulus)->required();
  zs->add_option("--char", chsel)->default_val("principal");
  zs->add_option("--height", height)->required();

  double X = 100;
  auto* lc = app.add_subcommand("landau-check", "direct vs contour-shifted smoothed sum");
  lc->add_option("--modulus", modulus)->required();
  lc->add_option("--char", chsel);
  lc->add_option("--modulus2", modulus2);
  lc->add_option("--char2", chsel2);
  lc->add_option("--exclude", exclude);
  lc->add_option("--X", X);

  int d = 2, samples = 1000;
  std::int64_t q = 2, seed = -1;
  double rb = 0.0;
  auto* sc = app.add_subcommand("schur-check", "a_{q^d} >= 1 on random Satake classes");
  sc->add_option("--d", d)->check(CLI::Range(1, 12));
  sc->add_option("--samples", samples)->check(CLI::PositiveNumber);
  sc->add_option("--seed", seed);
  sc->add_option("--q", q);
  sc->add_option("--rb", rb);

  std::string tag = "C", grid_a = "4", grid_ns = "1", grid_d = "1", grid_nl = "2";
  auto* bt = app.add_subcommand("bound-table", "tabulate the witness bound displays");
  bt->add_option("--tag", tag)->check(CLI::IsMember({"A", "B", "C"}));
  bt->add_option("--base", grid_a, "Q (C), N(chi) (B) or d_L (A), comma-separated");
  bt->add_option("--NS", grid_ns);
  bt->add_option("--d", grid_d);
  bt->add_option("--nL", grid_nl);

  double dL = 125, nL = 4, n = 4, NS = 1, beta0 = 0.79, xpow = 20, ypow = 1.1, delta = 1;
  int j = 1;
  auto* et = app.add_subcommand("estimation-table", "term table of the final estimation chain");
  et->add_option("--dL", dL);
  et->add_option("--nL", nL);
  et->add_option("--n", n);
  et->add_option("--NS", NS);
  et->add_option("--beta0", beta0);
  et->add_option("--x-power", xpow, "x = d_L^power");
  et->add_option("--y-power", ypow, "y = x^power");
  et->add_option("--delta", delta);
  et->add_option("--j", j)->check(CLI::IsMember({1, 2}));

  std::string input, table, residuals;
  bool sweep = false;
  auto* fc = app.add_subcommand("fit-constants", "fit C in p <= base^C over witness data");
  fc->add_option("--form", tag)->check(CLI::IsMember({"A", "B", "C"}));
  fc->add_option("--input", input, "witness table (CSV)");
  fc->add_flag("--sweep", sweep, "run the standard sweep for the form instead of reading a table");
  fc->add_option("--table", table, "write the sweep table here");
  fc->add_option("--residuals", residuals, "write the residual table here");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) cfg = Config::load(config_path);
    const Precision prec = Precision::digits(cfg.precision_digits);
    WitnessOptions wo;
    wo.cap = cap > 0 ? cap : cfg.witness_cap;
    wo.epsilon = cfg.epsilon;
    wo.H = cfg.H;
    auto S = [&] {
      std::vector<std::int64_t> v;
      for (double x : detail::parse_reals(exclude)) v.push_back(static_cast<std::int64_t>(x));
      return ExclusionSet(v);
    };

    if (*wchar) {
      wo.C = cfg.constant("C_B");
      auto j0 = report_header(cfg, "witness-char");
      j0["report"] = to_json(witness_search_char(select_character(modulus, chsel), S(), wo));
      detail::emit(detail::dump(j0), out_path, out);
    } else if (*wpair) {
      wo.C = cfg.constant("C_C");
      auto j0 = report_header(cfg, "witness-pair");
      j0["report"] = to_json(
          witness_search_pair(select_character(modulus, chsel), select_character(modulus2, chsel2), S(), wo));
      detail::emit(detail::dump(j0), out_path, out);
    } else if (*wcheb) {
      wo.C = cfg.constant("C_A");
      std::vector<std::int64_t> gens;
      for (double x : detail::parse_reals(subgroup)) gens.push_back(static_cast<std::int64_t>(x));
      const auto ext = make_extension(conductor_n, gens);
      if (gcd64(cls, conductor_n) != 1) throw InputError("class residue must be a unit mod the conductor");
      auto j0 = report_header(cfg, "witness-chebotarev");
      j0["report"] = to_json(witness_search_chebotarev(ext, ext.class_of(cls), S(), wo));
      detail::emit(detail::dump(j0), out_path, out);
    } else if (*ef) {
      const auto chi = select_character(modulus, chsel);
      const auto kp = kernel == "K1" ? KernelParams::k1(kx, ky) : KernelParams::k2(kx);
      ContourOptions co;
      co.threads = threads;
      const cplx ps = prime_side_J(chi, kp);
      const auto cj = contour_J(chi, kp, prec, co);
      auto j0 = report_header(cfg, "explicit-formula");
      j0["character"] = chi.key();
      j0["kernel"] = kp.describe();
      j0["prime_side"] = detail::cjson(ps);
      j0["contour"] = detail::cjson(cj.value);
      j0["contour_quad_error"] = cj.quad_error;
      j0["contour_tail_bound"] = cj.tail_bound;
      double worst = std::abs(ps - cj.value);
      j0["prime_vs_contour"] = worst;
      if (height > 0) {
        const auto prim = chi.primitive();
        ScanOptions so;
        so.ceiling = cfg.zero_ceiling;
        so.threads = threads;
        const auto zl = zero_inventory(prim, height, prec, so);
        const auto zsj = zero_side_J(prim, kp, zl, height, prec, co);
        j0["zero_side"] = detail::cjson(zsj.value);
        j0["zeros_used"] = zsj.zeros_used;
        j0["zero_side_error_budget"] = zsj.error_budget;
        j0["contour_vs_zero_side"] = std::abs(cj.value - zsj.value);
        worst = std::max(worst, std::abs(cj.value - zsj.value));
      }
      detail::emit(detail::dump(j0), out_path, out);
      if (worst > 1e-6) throw IdentityViolation("explicit-formula: the evaluations disagree", worst);
    } else if (*zs) {
      const auto prim = select_character(modulus, chsel).primitive();
      const auto cache = ZeroCache::from_env(cfg.cache_path);
      const auto key = prim.key();
      auto entry = cache.read(key);
      std::vector<ZeroDatum> zeros;
      double certified = height;
      if (entry.height >= height && !entry.zeros.empty()) {
        zeros = certify_imported(prim, entry, height, prec);
      } else {
        ScanOptions so;
        so.ceiling = cfg.zero_ceiling;
        so.threads = threads;
        zeros = zero_scan(prim, height, prec, so, &certified);
        cache.append(key, zeros, height);
      }
      std::ostringstream os;
      os << csv_preamble(cfg, "zero-scan") << "character,beta,gamma,digits,source\n";
      for (const auto& z : zeros)
        os << '"' << key << "\"," << fmt_real(z.beta) << ',' << fmt_real(z.gamma) << ',' << z.precision_digits << ','
           << to_string(z.source) << '\n';
      detail::emit(os.str(), out_path, out);
    } else if (*lc) {
      const auto a = select_character(modulus, chsel), b = select_character(modulus2, chsel2);
      const auto psi = product_character(a, b);
      AAWindow w{cfg.H, cfg.delta, {cplx(psi.parity_b(), 0)}};
      auto aa = aa_admissible(w.H, w.delta, w.gamma_shifts);
      auto j0 = report_header(cfg, "landau-check");
      j0["pair"] = a.key() + " vs " + b.key();
      j0["product_character"] = psi.key();
      j0["H_requested"] = w.H;
      if (!aa.admissible) {
        if (!aa.fallback_H) throw PreconditionError("landau-check: no admissible H near the configured one");
        w.H = *aa.fallback_H;
        w.delta /= 2;
      }
      j0["H"] = w.H;
      j0["delta"] = w.delta;
      const auto ex = S();
      const cplx direct = smoothed_sum_direct(a, b, ex, X);
      const auto sh = smoothed_sum_shifted(a, b, ex, X, w, prec);
      const double diff = std::abs(direct - sh.value);
      j0["X"] = X;
      j0["S"] = ex.primes();
      j0["direct"] = detail::cjson(direct);
      j0["shifted"] = detail::cjson(sh.value);
      j0["difference"] = diff;
      j0["height"] = sh.height;
      j0["quad_error"] = sh.quad_error;
      j0["tail_bound"] = sh.tail_bound;
      detail::emit(detail::dump(j0), out_path, out);
      if (diff > 1e-6) throw IdentityViolation("landau-check: direct and shifted sums disagree", diff);
    } else if (*sc) {
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      if (as_prime_power(q).p == 0) throw InputError("schur-check: q must be a prime power");
      std::mt19937_64 g(cfg.seed);
      std::ostringstream os;
      os << csv_preamble(cfg, "schur-check") << "sample,q,d,rb,a_qd,imag,pass\n";
      int failed = 0;
      for (int i = 0; i < samples; ++i) {
        const auto s = random_satake(g, q, d, rb);
        const auto r = schur_positivity_check(s);
        failed += !r.pass;
        os << i << ',' << q << ',' << d << ',' << fmt_real(s.rb()) << ',' << fmt_real(r.a_qd) << ','
           << fmt_real(r.imag) << ',' << (r.pass ? "true" : "false") << '\n';
      }
      detail::emit(os.str(), out_path, out);
      if (failed) throw IdentityViolation("schur-check: classes with a_{q^d} < 1", failed);
    } else if (*bt) {
      const auto t = parse_tag(tag);
      std::ostringstream os;
      os << csv_preamble(cfg, "bound-table");
      BoundParams bp;
      bp.epsilon = cfg.epsilon;
      bp.H = cfg.H;
      if (t == TheoremTag::C) {
        bp.C = cfg.constant("C_C");
        os << "tag,d,Q,N_S,H,R,epsilon,C,bound,corollary\n";
        for (double dd : detail::parse_reals(grid_d))
          for (double Qv : detail::parse_reals(grid_a))
            for (double ns : detail::parse_reals(grid_ns)) {
              bp.d = static_cast<int>(dd);
              bp.Q = Qv;
              bp.N_S = ns;
              bp.N_chi = Qv;
              os << "C," << bp.d << ',' << fmt_real(Qv) << ',' << fmt_real(ns) << ',' << fmt_real(bp.H) << ','
                 << fmt_real(bp.R) << ',' << fmt_real(bp.epsilon) << ',' << fmt_real(bp.C) << ','
                 << fmt_real(theorem_bound(t, bp)) << ',' << fmt_real(corollary_bound(bp)) << '\n';
            }
      } else if (t == TheoremTag::B) {
        bp.C = cfg.constant("C_B");
        os << "tag,N_chi,N_S,d_K,C,bound\n";
        for (double N : detail::parse_reals(grid_a))
          for (double ns : detail::parse_reals(grid_ns)) {
            bp.N_chi = N;
            bp.N_S = ns;
            os << "B," << fmt_real(N) << ',' << fmt_real(ns) << ',' << fmt_real(bp.d_K) << ',' << fmt_real(bp.C) << ','
               << fmt_real(theorem_bound(t, bp)) << '\n';
          }
      } else {
        bp.C = cfg.constant("C_A");
        os << "tag,d_L,n_L,N_S,C,bound\n";
        for (double dl : detail::parse_reals(grid_a))
          for (double nl : detail::parse_reals(grid_nl))
            for (double ns : detail::parse_reals(grid_ns)) {
              bp.d_L = dl;
              bp.n_L = static_cast<int>(nl);
              bp.N_S = ns;
              os << "A," << fmt_real(dl) << ',' << bp.n_L << ',' << fmt_real(ns) << ',' << fmt_real(bp.C) << ','
                 << fmt_real(theorem_bound(t, bp)) << '\n';
            }
      }
      detail::emit(os.str(), out_path, out);
    } else if (*et) {
      if (!(dL > 1)) throw InputError("estimation-table: d_L must exceed 1");
      EstimationInput in;
      in.log_dL = std::log(dL);
      in.n_L = nL;
      in.n = n;
      in.log_NS = std::log(NS);
      in.beta0 = beta0;
      in.x = std::exp(xpow * in.log_dL);
      in.y = std::exp(ypow * std::log(in.x));
      in.delta = delta;
      in.constants = cfg.estimation_constants();
      const auto rep = estimation_report(in, j);
      std::ostringstream os;
      os << csv_preamble(cfg, "estimation-table") << "term,value,shape,ratio,variant\n";
      for (const auto& r : rep.rows)
        os << r.name << ',' << fmt_real(r.value) << ',' << fmt_real(r.shape) << ',' << fmt_real(r.ratio) << ','
           << r.note << '\n';
      os << "# leading=" << fmt_real(rep.leading) << " rest=" << fmt_real(rep.rest)
         << " rest_dL=" << fmt_real(rep.rest_dL) << " verdict=" << (rep.verdict ? "true" : "false")
         << " verdict_dL=" << (rep.verdict_dL ? "true" : "false") << '\n';
      detail::emit(os.str(), out_path, out);
    } else if (*fc) {
      const auto t = parse_tag(tag);
      std::vector<FitPoint> pts;
      if (sweep) {
        SweepOptions so;
        so.witness = wo;
        so.threads = threads;
        std::vector<WitnessReport> reps;
        if (t == TheoremTag::B) {
          reps = sweep_theorem_b(so);
        } else if (t == TheoremTag::A) {
          so.max_conductor = 100;
          so.max_S = 3;
          reps = sweep_theorem_a(so);
        } else {
          throw InputError("fit-constants: no standard sweep for form C; pass --input");
        }
        if (!table.empty()) {
          std::string text = csv_preamble(cfg, "fit-constants") + witness_csv_header();
          for (const auto& r : reps) text += witness_csv_row(r);
          detail::emit(text, table, out);
        }
        pts = fit_points(reps);
      } else {
        if (input.empty()) throw InputError("fit-constants: pass --input or --sweep");
        std::ifstream f(input);
        if (!f) throw InputError("fit-constants: cannot read " + input);
        pts = read_witness_csv(f, t);
      }
      const auto fit = fit_constants(pts);
      auto j0 = report_header(cfg, "fit-constants");
      j0["form"] = tag;
      j0["points"] = fit.used;
      j0["skipped"] = fit.skipped;
      j0["least_squares"] = fit.least_squares;
      j0["max_ratio"] = fit.max_ratio;
      if (!residuals.empty()) {
        std::string text = csv_preamble(cfg, "fit-constants") + "p,log_base,ratio,residual\n";
        for (const auto& r : fit.rows)
          text += std::to_string(r.point.p) + ',' + fmt_real(r.point.log_base) + ',' + fmt_real(r.ratio) + ',' +
                  fmt_real(r.residual) + '\n';
        detail::emit(text, residuals, out);
      }
      detail::emit(detail::dump(j0), out_path, out);
    }
    return kExitOk;
  } catch (const CertificationError& e) {
    err << "certification error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const IdentityViolation& e) {
    err << "identity violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const CapExhaustedError& e) {
    err << "cap exhausted: " << e.what() << "\n";
    return kExitViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace wtk
