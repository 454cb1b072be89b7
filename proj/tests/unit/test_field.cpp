#include "kml/error.hpp"
#include "kml/field.hpp"
#include "kml/mat2.hpp"

#include "doctest.h"

#include <set>

using namespace kml;

namespace {

// Independent oracle: multiply residue polynomials by schoolbook product and
// reduction by the stored modulus.
std::vector<std::uint32_t> poly_mul_mod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                        const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  std::vector<std::uint32_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  const std::size_t h = modulus.size() - 1;
  for (std::size_t d = prod.size(); d-- > h;) {
    const std::uint32_t c = prod[d];
    if (!c) continue;
    for (std::size_t k = 0; k <= h; ++k) prod[d - h + k] = (prod[d - h + k] + p * p - c * modulus[k]) % p;
  }
  prod.resize(h);
  return prod;
}

}  // namespace

TEST_CASE("primes and prime divisors") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(prime_divisors(1).empty());
}

TEST_CASE("field axioms hold exhaustively for q <= 9") {
  for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    const FieldCtx F = FieldCtx::make(p, h);
    const std::uint32_t q = F.q();
    CAPTURE(q);
    REQUIRE(is_irreducible_mod_p(F.modulus(), p));
    CHECK(F.order(F.generator()) == q - 1);
    for (Elem a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.coefficients(F.mul(a, b)) == poly_mul_mod(F.coefficients(a), F.coefficients(b), F.modulus(), p));
        for (Elem c = 0; c < q; ++c) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        }
      }
    }
  }
}

TEST_CASE("smallest irreducible modulus") {
  // Compared from the constant term: x^2+x+1 and x^3+x^2+1 over F_2, x^2+1 over F_3.
  CHECK(FieldCtx::make(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(FieldCtx::make(2, 3).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(FieldCtx::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK_FALSE(is_irreducible_mod_p({1, 0, 1}, 2));
}

TEST_CASE("field rejects bad parameters") {
  CHECK_THROWS_AS(FieldCtx::make(4, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldCtx::make(2, 0), InvalidArgument);
  CHECK_THROWS_AS(FieldCtx::make(2, 30), InvalidArgument);
}

TEST_CASE("SL2 enumeration and projective line") {
  for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const FieldCtx F = FieldCtx::make(p, h);
    const std::uint32_t q = F.q();
    const auto sl2 = enumerate_sl2(F);
    CHECK(sl2.size() == q * (q * q - 1));
    CHECK(proj_line_size(F) == q + 1);
    // Transitive on P^1, and the stabiliser of the base point is the Borel of order q(q-1).
    std::set<std::uint32_t> orbit;
    std::size_t stab = 0;
    for (const auto& m : sl2) {
      CHECK(m.det == 1);
      const auto x = act_on_point(F, m, 0);
      orbit.insert(x);
      stab += x == 0;
      CHECK(act_on_point(F, inverse(F, m), x) == 0);
    }
    CHECK(orbit.size() == q + 1);
    CHECK(stab == q * (q - 1));
  }
}
