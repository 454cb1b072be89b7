#include "kml/field.hpp"

#include <algorithm>
#include <sstream>

#include "kml/error.hpp"

namespace kml {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  Poly mm = m;
  trim(mm);
  const std::size_t dm = mm.size() - 1;
  const std::uint32_t lead_inv = inv_mod(mm.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = c * mm[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{p^k} mod m, by repeated p-th powering.
Poly frobenius_power(const Poly& m, std::uint32_t p, std::uint32_t k) {
  Poly x = poly_mod(Poly{0, 1}, m, p);
  for (std::uint32_t step = 0; step < k; ++step) {
    Poly base = x, acc{1};
    std::uint32_t e = p;
    while (e > 0) {
      if (e & 1u) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1u;
    }
    x = acc;
  }
  return x;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  Poly f = monic;
  trim(f);
  if (f.size() < 2) return false;
  const auto h = static_cast<std::uint32_t>(f.size() - 1);
  if (h == 1) return true;
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
    if (v == 0) return false;
  }
  if (h <= 3) return true;
  const Poly x{0, 1};
  if (!poly_sub(frobenius_power(f, p, h), x, p).empty()) return false;
  for (std::uint64_t r : prime_divisors(h)) {
    Poly g = poly_gcd(f, poly_sub(frobenius_power(f, p, h / static_cast<std::uint32_t>(r)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t h, std::uint32_t bound) {
  if (!is_prime(p)) throw InvalidArgument("field_make: p=" + std::to_string(p) + " is not prime");
  if (h == 0) throw InvalidArgument("field_make: h must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q > bound) {
      throw InvalidArgument("field_make: p^h exceeds the configured bound " + std::to_string(bound));
    }
  }
  FieldCtx F;
  F.p_ = p;
  F.h_ = h;
  F.q_ = static_cast<std::uint32_t>(q);

  // Candidates ordered lexicographically by (c_0, c_1, ..., c_{h-1}).
  const std::uint64_t count = q;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly cand(h + 1, 0);
    std::uint64_t rest = idx;
    for (std::uint32_t i = h; i-- > 0;) {
      cand[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    cand[h] = 1;
    if (is_irreducible_mod_p(cand, p)) {
      F.modulus_ = cand;
      break;
    }
  }
  if (F.modulus_.empty()) throw InternalError("field_make: no irreducible polynomial found");

  auto slow_mul = [&](Elem a, Elem b) {
    Poly pa = F.coefficients(a), pb = F.coefficients(b);
    trim(pa);
    trim(pb);
    Poly r = poly_mulmod(pa, pb, F.modulus_, p);
    r.resize(h, 0);
    return F.from_coefficients(r);
  };

  const std::uint32_t n = F.q_ - 1;
  const auto divisors = prime_divisors(n);
  for (Elem g = 1; g < F.q_; ++g) {
    bool ok = true;
    for (std::uint64_t r : divisors) {
      Elem acc = 1, base = g;
      std::uint64_t e = n / r;
      while (e > 0) {
        if (e & 1u) acc = slow_mul(acc, base);
        base = slow_mul(base, base);
        e >>= 1u;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      F.generator_ = g;
      break;
    }
  }
  if (F.generator_ == 0) throw InternalError("field_make: no multiplicative generator");

  F.exp_.assign(n, 0);
  F.log_.assign(F.q_, 0);
  Elem cur = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    F.exp_[k] = cur;
    F.log_[cur] = k;
    cur = slow_mul(cur, F.generator_);
  }
  if (cur != 1) throw InternalError("field_make: generator order mismatch");
  return F;
}

FieldCtx::Elem FieldCtx::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (h_ == 1) return (a + b) % p_;
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < h_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FieldCtx::Elem FieldCtx::neg(Elem a) const {
  if (p_ == 2) return a;
  if (h_ == 1) return (p_ - a) % p_;
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < h_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

FieldCtx::Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FieldCtx::Elem FieldCtx::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

FieldCtx::Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw InvalidArgument("field: inverse of zero");
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

FieldCtx::Elem FieldCtx::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw InvalidArgument("field: negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t n = q_ - 1;
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
  if (k < 0) k += n;
  return exp_[static_cast<std::size_t>(k)];
}

std::uint32_t FieldCtx::log(Elem a) const {
  if (a == 0) throw InvalidArgument("field: log of zero");
  return log_[a];
}

std::uint32_t FieldCtx::order(Elem a) const {
  const std::uint32_t n = q_ - 1;
  const std::uint32_t l = log(a);
  std::uint32_t g = n, x = l;
  while (x != 0) {
    std::uint32_t t = g % x;
    g = x;
    x = t;
  }
  return n / g;
}

std::vector<std::uint32_t> FieldCtx::coefficients(Elem a) const {
  std::vector<std::uint32_t> c(h_, 0);
  for (std::uint32_t i = 0; i < h_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FieldCtx::Elem FieldCtx::from_coefficients(const std::vector<std::uint32_t>& c) const {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < h_ && i < c.size(); ++i) {
    r += (c[i] % p_) * scale;
    scale *= p_;
  }
  return r;
}

std::string FieldCtx::to_string(Elem a) const {
  if (h_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << '(';
  auto c = coefficients(a);
  for (std::uint32_t i = 0; i < h_; ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

}  // namespace kml
