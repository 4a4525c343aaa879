#include <catch2/catch_amalgamated.hpp>

#include "wtk/landau/factors.hpp"
#include "wtk/landau/smoothed.hpp"
#include "wtk/landau/weight.hpp"
#include "wtk/landau/witness.hpp"

using namespace wtk;

namespace {

DirichletCharacter chi4() { return primitive_characters(4)[0]; }
DirichletCharacter one() { return DirichletCharacter::principal(1); }

}  // namespace

TEST_CASE("weight function") {
  CHECK(omega(0) == 0);
  CHECK(omega(3) == 0);
  CHECK(omega(-1) == 0);
  CHECK(omega(1.5) == Catch::Approx(0.51341711903259202687).epsilon(1e-14));
  CHECK(omega(0.5) == Catch::Approx(std::exp(-2.0)));
  for (int i = 1; i < 3000; ++i) {
    const double x = i / 1000.0;
    CHECK(omega(x) >= 0);
    CHECK(omega(x) <= 1);
    if (x >= 1 && x <= 2) CHECK(omega(x) >= std::exp(-1.0) - 1e-15);
  }
}

TEST_CASE("Mellin transform of the weight") {
  CHECK(std::abs(omega_mellin(1.0) - 0.74925580037316444913) < 1e-12);
  CHECK(std::abs(omega_mellin(2.0) - 1.1238837005597466737) < 1e-12);
  CHECK(std::abs(omega_mellin(cplx(-0.5, 3)) - cplx(0.12904979874185163917, 0.072413827160869627751)) < 1e-12);
  MellinLine line(-0.5);
  for (double t : {0.0, 3.0, -7.5, 40.0}) CHECK(std::abs(line(t) - omega_mellin(cplx(-0.5, t))) < 1e-12);
  CHECK_THROWS_AS(line(2 * line.max_height()), DomainError);
  for (double sigma : {-0.5, -1.0}) {
    double m = 0;
    for (double t = 0; t <= 50; t += 0.5) m = std::max(m, std::abs(omega_mellin(cplx(sigma, t))) * std::pow(1 + t, 2));
    CHECK(m < 100);
  }
}

TEST_CASE("admissible windows") {
  auto a = aa_admissible(0.5, 0.1, {cplx(0, 0)});
  CHECK(a.admissible);
  CHECK(a.nearest == Catch::Approx(0.5));
  auto b = aa_admissible(0.95, 0.1, {cplx(0, 0)});
  CHECK_FALSE(b.admissible);
  REQUIRE(b.fallback_H);
  CHECK(std::abs(*b.fallback_H - 0.95) <= 0.05 + 1e-12);
  CHECK(detail::aa_distance(*b.fallback_H, {cplx(0, 0)}) >= 0.05 - 1e-12);
}

TEST_CASE("gamma and Euler correction factors") {
  CHECK(std::abs(g1_factor(cplx(-1, 0), {3}, {{3, {cplx(-1, 0)}}}) - 3.6) < 1e-14);
  CHECK_THROWS_AS(g1_factor(cplx(-1, 0), {5}, {{3, {cplx(-1, 0)}}}), InputError);
  CHECK(std::abs(g0_factor(cplx(-0.5, 3), {cplx(1, 0)}) - cplx(-0.062224991986336960215, -0.48003467327392757572)) < 1e-13);
  CHECK_THROWS_AS(g0_factor(cplx(0, 0), {cplx(0, 0)}), DomainError);
  for (double H : {0.5, 1.5}) {
    CHECK(std::abs(g0_growth_exponent({cplx(0, 0)}, H) - (0.5 + H)) < 0.15);
    CHECK(std::abs(g0_growth_exponent({cplx(0, 0), cplx(1, 0)}, H) - 2 * (0.5 + H)) < 0.15);
  }
  const double H = 0.5;
  for (std::int64_t p : {2, 3, 7})
    for (double th : {0.0, 1.0, 2.5}) {
      const cplx e = std::polar(1.0, th);
      CHECK(std::abs(g1_factor(cplx(-H, 0), {p}, {{p, {e}}})) <= g1_majorant({p}, 1, 0, H));
    }
}

TEST_CASE("smoothed sums against enumeration") {
  CHECK(std::abs(smoothed_sum_direct(chi4(), one(), ExclusionSet(), 100)) < 1e-12);
  CHECK(std::abs(smoothed_sum_direct(chi4(), one(), ExclusionSet({7}), 100) - 0.0011470374428405133447) < 1e-12);
  CHECK(std::abs(smoothed_sum_direct(chi4(), chi4(), ExclusionSet(), 100) - 37.462790018617036783) < 1e-10);
  CHECK_THROWS_AS(smoothed_sum_direct(chi4(), one(), ExclusionSet(), 0), InputError);
}

TEST_CASE("contour-shifted sum equals the direct sum") {
  AAWindow w{0.5, 0.1, {}};
  ShiftedSum ss(chi4(), one(), w);
  for (auto S : {ExclusionSet(), ExclusionSet({7})}) {
    auto r = ss.evaluate(S, 100);
    CHECK(std::abs(r.value - smoothed_sum_direct(chi4(), one(), S, 100)) < 1e-7);
  }
  auto c5 = primitive_characters(5)[0];
  auto r = smoothed_sum_shifted(c5, chi4(), ExclusionSet({3}), 60, w);
  CHECK(std::abs(r.value - smoothed_sum_direct(c5, chi4(), ExclusionSet({3}), 60)) < 1e-7);
  CHECK_THROWS_AS(ShiftedSum(chi4(), chi4(), w), PoleError);
  CHECK_THROWS_AS(ShiftedSum(chi4(), one(), AAWindow{1.0, 0.1, {}}), PreconditionError);
}

TEST_CASE("witness searches") {
  auto r = witness_search_char(chi4(), ExclusionSet({3, 7}));
  REQUIRE(r.witness_prime);
  CHECK(*r.witness_prime == 11);
  CHECK(r.bound_value == Catch::Approx(84));
  CHECK(*r.fitted_constant == Catch::Approx(0.541186).epsilon(1e-5));
  for (auto& c : primitive_characters(5))
    if (c.order() == 4) CHECK(*witness_search_char(c, {}).witness_prime == 2);
  CHECK_THROWS_AS(witness_search_char(one(), {}), NoWitnessError);
  CHECK(*witness_search_pair(chi4(), one(), ExclusionSet({3})).witness_prime == 7);
  CHECK_THROWS_AS(witness_search_pair(chi4(), chi4().induce(8), {}), NoWitnessError);

  auto qi = cyclotomic_field(4);
  CHECK(*witness_search_chebotarev(qi, 1 - qi.identity_class(), ExclusionSet({3, 7})).witness_prime == 11);
  CHECK(*witness_search_chebotarev(qi, qi.identity_class(), {}).witness_prime == 5);
  auto z5 = cyclotomic_field(5);
  CHECK(*witness_search_chebotarev(z5, z5.class_of(2), ExclusionSet({2})).witness_prime == 7);
  CHECK_THROWS_AS(witness_search_chebotarev(cyclotomic_field(2), 0, {}), PreconditionError);
}

TEST_CASE("witness search reports an exhausted cap") {
  WitnessOptions o;
  o.cap = 10;
  CHECK_THROWS_AS(witness_search_chebotarev(cyclotomic_field(4), cyclotomic_field(4).identity_class(), ExclusionSet({5}), o),
                  CapExhaustedError);
}

TEST_CASE("sieve segment does not change a witness") {
  WitnessOptions a, b;
  a.segment = 16;
  b.segment = 1 << 16;
  for (std::int64_t f : {7, 23, 41})
    for (auto& c : primitive_characters(f))
      CHECK(*witness_search_char(c, ExclusionSet({2, 3}), a).witness_prime ==
            *witness_search_char(c, ExclusionSet({2, 3}), b).witness_prime);
}

TEST_CASE("bound displays") {
  BoundParams p;
  p.N_chi = 4;
  p.N_S = 21;
  CHECK(theorem_bound(TheoremTag::B, p) == Catch::Approx(84));
  p.d_L = 4;
  p.n_L = 2;
  p.N_S = 1;
  CHECK(theorem_bound(TheoremTag::A, p) == Catch::Approx(4));
  p.Q = 4;
  p.N_S = 1;
  CHECK(theorem_bound(TheoremTag::C, p) == Catch::Approx(std::pow(4.0, 1.1)));
  p.d = 2;
  p.H = 0.5;
  p.R = 0;
  CHECK(theorem_c_general(p) == Catch::Approx(std::pow(4.0, 4.1)));
  p.R = 0.3;
  CHECK_THROWS_AS(theorem_c_general(p), PreconditionError);
  p.N_chi = 100;
  CHECK(corollary_bound(p) == Catch::Approx(std::pow(100.0, 0.6)));
  CHECK(parse_tag("A") == TheoremTag::A);
  CHECK_THROWS_AS(parse_tag("D"), InputError);
}

TEST_CASE("constant fitting") {
  auto f = fit_constants({{11, std::log(84.0)}});
  CHECK(f.least_squares == Catch::Approx(0.541186).epsilon(1e-5));
  CHECK(f.max_ratio == Catch::Approx(f.least_squares));
  auto g = fit_constants({{3, std::log(9.0)}, {5, std::log(25.0)}, {7, 0.0}});
  CHECK(g.least_squares == Catch::Approx(0.5));
  CHECK(g.skipped == 1);
  CHECK(g.rows.size() == 2);
  CHECK_THROWS_AS(fit_constants({}), InputError);
  CHECK_THROWS_AS(fit_constants({{7, 0.0}}), InputError);
}

TEST_CASE("subset enumeration") {
  auto s = small_subsets({2, 3, 5, 7}, 2);
  CHECK(s.size() == 11);
  CHECK(s[0].empty());
  CHECK(s[1].primes() == std::vector<std::int64_t>{2});
  CHECK(s[5].primes() == std::vector<std::int64_t>{2, 3});
  CHECK(small_subsets({2, 3, 5, 7}, 3).size() == 15);
}

TEST_CASE("sweeps do not depend on the thread count") {
  SweepOptions o;
  o.max_conductor = 40;
  auto a = sweep_theorem_b(o);
  o.threads = 4;
  auto b = sweep_theorem_b(o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].subject == b[i].subject);
    CHECK(a[i].witness_prime == b[i].witness_prime);
  }
  o.max_conductor = 20;
  o.max_S = 3;
  auto c = sweep_theorem_a(o);
  o.threads = 1;
  auto d = sweep_theorem_a(o);
  REQUIRE(c.size() == d.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].witness_prime == d[i].witness_prime);
}
