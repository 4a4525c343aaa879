#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "wtk/characters/abelian_extension.hpp"
#include "wtk/characters/dirichlet_character.hpp"

using namespace wtk;
using cd = std::complex<double>;

namespace {

std::int64_t phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace

TEST_CASE("unit group structure") {
  for (std::int64_t q : {1, 2, 3, 4, 8, 9, 15, 16, 24, 100, 97}) {
    auto g = UnitGroup::get(q);
    CHECK(g->size() == phi(q));
    std::int64_t prod = 1;
    for (auto o : g->orders()) prod *= o;
    CHECK(prod == phi(q));
    CHECK(static_cast<std::int64_t>(g->units().size()) == phi(q));
  }
  CHECK(UnitGroup::get(8)->rank() == 2);
  CHECK(UnitGroup::get(16)->orders() == std::vector<std::int64_t>{2, 4});
}

TEST_CASE("character counts and orthogonality") {
  for (std::int64_t q : {5, 8, 12, 21, 32}) {
    auto all = all_characters(q);
    CHECK(static_cast<std::int64_t>(all.size()) == phi(q));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        cd s = 0;
        for (std::int64_t a = 0; a < q; ++a) s += std::conj(all[i].value(a)) * all[j].value(a);
        CHECK(std::abs(s - (i == j ? cd(static_cast<double>(phi(q))) : cd(0))) < 1e-9);
      }
  }
  // primitive counts: f prod (1-2/p) for p || f, (1-1/p)^2 for p^2 | f
  CHECK(primitive_characters(1).size() == 1);
  CHECK(primitive_characters(2).empty());
  CHECK(primitive_characters(4).size() == 1);
  CHECK(primitive_characters(8).size() == 2);
  CHECK(primitive_characters(9).size() == 4);
  CHECK(primitive_characters(15).size() == 3);
}

TEST_CASE("values, multiplicativity and parity") {
  auto chi = DirichletCharacter::from_exponents(5, {1});
  CHECK(chi.value(2) == cd(0, 1));
  CHECK(chi.value(4) == cd(-1, 0));
  CHECK(chi.value(5) == cd(0, 0));
  CHECK(chi.order() == 4);
  CHECK(chi.parity_b() == 1);
  for (auto& c : all_characters(36))
    for (std::int64_t a = 1; a < 36; ++a)
      for (std::int64_t b = 1; b < 36; ++b) CHECK(std::abs(c.value(a * b) - c.value(a) * c.value(b)) < 1e-12);
  for (auto& c : all_characters(20)) CHECK(c.value(19) == cd(c.parity_b() ? -1 : 1, 0));
}

TEST_CASE("conductor, primitive and induced characters") {
  auto chi4 = primitive_characters(4)[0];
  auto up = chi4.induce(12);
  CHECK(up.modulus() == 12);
  CHECK(up.conductor() == 4);
  CHECK(up.primitive() == chi4);
  CHECK(up.value(3) == cd(0, 0));
  CHECK(up.value(7) == chi4.value(7));
  for (std::int64_t q : {24, 45, 64})
    for (auto& c : all_characters(q)) {
      auto p = c.primitive();
      CHECK(p.is_primitive());
      CHECK(q % p.modulus() == 0);
      for (std::int64_t a = 1; a < q; ++a)
        if (gcd64(a, q) == 1) CHECK(std::abs(p.value(a) - c.value(a)) < 1e-12);
    }
}

TEST_CASE("key round trip and malformed keys") {
  for (auto& c : all_characters(40)) CHECK(DirichletCharacter::from_key(c.key()) == c);
  CHECK_THROWS_AS(DirichletCharacter::from_key("40"), InputError);
  CHECK_THROWS_AS(DirichletCharacter::from_key("8|3|1"), InputError);
  CHECK_THROWS_AS(DirichletCharacter::from_exponents(8, {1}), InputError);
}

TEST_CASE("images must define a homomorphism") {
  CHECK_THROWS_AS(DirichletCharacter::from_images(5, {{1, 3}}), InputError);
  auto c = DirichletCharacter::from_images(5, {{1, 2}});
  CHECK(c.value(2) == cd(-1, 0));
}

TEST_CASE("Gauss sums and root numbers") {
  for (std::int64_t f = 3; f <= 60; ++f)
    for (auto& c : primitive_characters(f)) {
      CHECK(std::abs(std::norm(gauss_sum(c)) - static_cast<double>(f)) < 1e-9);
      cd W = root_number(c);
      CHECK((std::abs(std::abs(W) - 1) < 1e-12));
      if (c.is_real()) CHECK(std::abs(W - 1.0) < 1e-12);
      CHECK(std::abs(root_number(c.conj()) * W - 1.0) < 1e-12);
    }
  CHECK_THROWS_AS(root_number(primitive_characters(4)[0].induce(8)), PreconditionError);
}

TEST_CASE("product characters") {
  auto a = primitive_characters(5)[0], b = primitive_characters(4)[0];
  auto p = product_character(a, b);
  CHECK(p.modulus() == 20);
  for (std::int64_t n = 1; n < 60; ++n)
    if (gcd64(n, 20) == 1) CHECK(std::abs(p.value(n) - std::conj(a.value(n)) * b.value(n)) < 1e-12);
  CHECK(same_primitive(b, b.induce(28)));
  CHECK_FALSE(same_primitive(a, b));
}

TEST_CASE("abelian extensions: classes and Artin symbols") {
  auto qi = cyclotomic_field(4);
  CHECK(qi.degree() == 2);
  CHECK(qi.discriminant() == 4);
  CHECK(qi.ramified_primes() == std::vector<std::int64_t>{2});
  CHECK(qi.artin_symbol(5) == qi.identity_class());
  CHECK(qi.artin_symbol(7) != qi.identity_class());
  CHECK_THROWS_AS(qi.artin_symbol(2), RamifiedPrimeError);
  CHECK_THROWS_AS(qi.artin_symbol(9), InputError);

  // Q(sqrt 5) inside Q(zeta_20): 2 divides 20 but is unramified
  auto k = make_extension(20, {1, 9, 11, 19});
  CHECK(k.degree() == 2);
  CHECK(k.discriminant() == 5);
  CHECK_FALSE(k.is_ramified(2));
  CHECK(k.artin_symbol(2) != k.identity_class());
  CHECK(k.artin_symbol(11) == k.identity_class());

  CHECK_THROWS_AS(make_extension(8, {3, 5}), InputError);
  CHECK_THROWS_AS(make_extension(8, {2}), InputError);
}

TEST_CASE("local data at ramified primes") {
  auto z5 = cyclotomic_field(5);
  auto d = z5.local_data(5);
  CHECK(d.ramified());
  CHECK(d.inertia.size() == 4);
  auto z12 = cyclotomic_field(12);
  auto d2 = z12.local_data(2);
  CHECK(d2.inertia.size() == 2);
  // Frob_2 I_2 is the coset of 5 in (Z/12)^x
  const bool in_coset = z12.multiply(d2.frobenius, d2.inertia[0]) == z12.class_of(5) ||
                        z12.multiply(d2.frobenius, d2.inertia[1]) == z12.class_of(5);
  CHECK(in_coset);
}

TEST_CASE("conductor-discriminant against independent formulas") {
  for (std::int64_t n = 1; n <= 30; ++n) {
    CHECK(cyclotomic_field(n).discriminant() == cyclotomic_discriminant(n));
    for (auto& H : unit_subgroups(n)) {
      auto ext = make_extension(n, H);
      CHECK(ext.discriminant() == discriminant_by_ramification(ext));
    }
  }
  CHECK(cyclotomic_discriminant(7) == 16807);
  CHECK(cyclotomic_discriminant(8) == 256);
}

TEST_CASE("subgroup enumeration") {
  CHECK(unit_subgroups(8).size() == 5);
  CHECK(unit_subgroups(7).size() == 4);
  CHECK(unit_subgroups(1).size() == 1);
}

TEST_CASE("exclusion sets") {
  ExclusionSet S({7, 3, 7});
  CHECK(S.primes() == std::vector<std::int64_t>{3, 7});
  CHECK(S.norm_product() == 21);
  CHECK(S.to_string() == "3,7");
  CHECK(S.contains(7));
  CHECK_THROWS_AS(ExclusionSet({4}), InputError);
  CHECK(log_big(BigInt(1) << 2000) == Catch::Approx(2000 * std::log(2.0)).epsilon(1e-14));
}
