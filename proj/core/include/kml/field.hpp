#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kml {

/// Exact arithmetic in F_q, q = p^h.
///
/// Elements are encoded as integers in [0, q): the base-p digits of the code are
/// the coefficients of the residue polynomial, lowest degree first. So 0 and 1
/// are the additive and multiplicative identities and F_p sits inside as 0..p-1.
class FieldCtx {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint32_t kDefaultBound = 1u << 20;

  /// Builds F_{p^h} with the lexicographically smallest monic irreducible
  /// modulus (coefficients compared from the constant term upwards).
  static FieldCtx make(std::uint32_t p, std::uint32_t h,
                       std::uint32_t bound = kDefaultBound);

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t q() const { return q_; }
  /// Monic modulus, coefficients low-degree first (size h+1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// A generator of the multiplicative group.
  Elem generator() const { return generator_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;

  /// Discrete log to the stored generator; a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  /// Multiplicative order of a nonzero element.
  std::uint32_t order(Elem a) const;

  /// Coefficient vector of an element (size h, low degree first).
  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& c) const;

  std::string to_string(Elem a) const;

 private:
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  std::uint32_t h_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

bool is_prime(std::uint64_t n);

/// Irreducibility of a monic polynomial over F_p (coefficients low-degree
/// first): no roots in F_p, and Rabin's gcd test with x^{p^k} - x.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

/// Prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace kml
