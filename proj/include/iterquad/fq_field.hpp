#pragma once

// Finite fields F_{p^k} in a polynomial basis over a fixed irreducible
// modulus. An element is stored as the integer sum c_i p^i of its basis
// coordinates, so element(i) == i and the prime subfield is {0, ..., p-1}.
// Multiplication goes through discrete log / antilog tables built once per
// field and shared between copies.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterquad/poly_factor.hpp"
#include "iterquad/prime_field.hpp"

namespace iterquad {

inline constexpr std::uint64_t kMaxTabulatedOrder = std::uint64_t{1} << 22;

class FqField {
 public:
  using Element = std::uint32_t;

  /// modulus: the non-leading coefficients c_0..c_{k-1} of a monic irreducible
  /// x^k + c_{k-1} x^{k-1} + ... + c_0 over F_p.
  FqField(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("FqField: characteristic must be prime");
    const std::size_t k = modulus.size();
    if (k == 0) throw std::invalid_argument("FqField: empty modulus");
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (q > kMaxTabulatedOrder / p) throw std::length_error("FqField: order exceeds table limit");
      q *= p;
    }
    for (auto c : modulus) {
      if (c >= p) throw std::invalid_argument("FqField: modulus coefficient out of range");
    }
    const PrimeField fp(p);
    std::vector<std::uint64_t> full = modulus;
    full.push_back(1);
    if (!is_irreducible(Poly<PrimeField>(fp, full))) {
      throw std::invalid_argument("FqField: modulus is not irreducible over F_" + std::to_string(p));
    }
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->k = static_cast<unsigned>(k);
    t->q = q;
    t->modulus = std::move(modulus);
    build_tables(*t);
    t_ = std::move(t);
  }

  /// F_{p^k} over the least monic irreducible of degree k, where polynomials
  /// are ordered by the integer encoding of their lower coefficients.
  static FqField make(std::uint64_t p, unsigned k) {
    if (k == 0) throw std::invalid_argument("FqField::make: degree must be positive");
    const PrimeField fp(p);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (count > kMaxTabulatedOrder / p) throw std::length_error("FqField::make: order exceeds table limit");
      count *= p;
    }
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint64_t> coeffs(k);
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        coeffs[i] = c % p;
        c /= p;
      }
      std::vector<std::uint64_t> full = coeffs;
      full.push_back(1);
      if (is_irreducible(Poly<PrimeField>(fp, full))) return FqField(p, std::move(coeffs));
    }
    throw std::logic_error("FqField::make: no irreducible polynomial found");
  }

  std::uint64_t characteristic() const { return t_->p; }
  std::uint64_t order() const { return t_->q; }
  unsigned degree() const { return t_->k; }
  const std::vector<std::uint64_t>& modulus() const { return t_->modulus; }
  Element generator() const { return t_->exp[1]; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }

  Element element(std::uint64_t i) const {
    if (i >= t_->q) throw std::out_of_range("FqField::element: index out of range");
    return static_cast<Element>(i);
  }
  std::uint64_t index(Element a) const { return a; }

  Element add(Element a, Element b) const {
    const std::uint64_t p = t_->p;
    std::uint64_t r = 0, scale = 1;
    for (unsigned i = 0; i < t_->k; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a = static_cast<Element>(a / p);
      b = static_cast<Element>(b / p);
      scale *= p;
    }
    return static_cast<Element>(r);
  }

  Element neg(Element a) const {
    const std::uint64_t p = t_->p;
    std::uint64_t r = 0, scale = 1;
    for (unsigned i = 0; i < t_->k; ++i) {
      const std::uint64_t d = a % p;
      r += (d == 0 ? 0 : p - d) * scale;
      a = static_cast<Element>(a / p);
      scale *= p;
    }
    return static_cast<Element>(r);
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t s = static_cast<std::uint64_t>(t_->log[a]) + t_->log[b];
    return t_->exp[s % (t_->q - 1)];
  }

  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("FqField: inverse of zero");
    const std::uint64_t n = t_->q - 1;
    return t_->exp[(n - t_->log[a]) % n];
  }

  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = t_->q - 1;
    const unsigned __int128 s = static_cast<unsigned __int128>(t_->log[a]) * (e % n);
    return t_->exp[static_cast<std::uint64_t>(s % n)];
  }

  /// Discrete log to the tabulated generator; a must be nonzero.
  std::uint64_t log(Element a) const {
    if (a == 0) throw std::domain_error("FqField: log of zero");
    return t_->log[a];
  }

  Element pth_root(Element a) const { return pow(a, t_->q / t_->p); }

  bool is_square(Element a) const {
    if (a == 0 || t_->p == 2) return true;
    return t_->log[a] % 2 == 0;
  }

  /// Square root with the smaller index of the two candidates.
  std::optional<Element> sqrt(Element a) const {
    if (a == 0) return Element{0};
    if (t_->p == 2) return pow(a, t_->q / 2);
    if (t_->log[a] % 2 != 0) return std::nullopt;
    const Element r = t_->exp[t_->log[a] / 2];
    const Element s = neg(r);
    return r < s ? r : s;
  }

  /// Basis coordinates c_0..c_{k-1} of a.
  std::vector<std::uint64_t> digits(Element a) const {
    std::vector<std::uint64_t> d(t_->k);
    for (unsigned i = 0; i < t_->k; ++i) {
      d[i] = a % t_->p;
      a = static_cast<Element>(a / t_->p);
    }
    return d;
  }

  Element from_digits(const std::vector<std::uint64_t>& d) const {
    if (d.size() > t_->k) throw std::invalid_argument("FqField::from_digits: too many coordinates");
    std::uint64_t r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = r * t_->p + d[i] % t_->p;
    return static_cast<Element>(r);
  }

  friend bool operator==(const FqField& a, const FqField& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
  }

 private:
  struct Tables {
    std::uint64_t p = 0;
    unsigned k = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    std::vector<Element> exp;        // exp[i] = g^i, length q - 1
    std::vector<std::uint32_t> log;  // log[exp[i]] = i; log[0] unused
  };

  // Schoolbook product of two encoded elements reduced by the modulus; only
  // used while the tables are built.
  static std::uint64_t slow_mul(const Tables& t, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t p = t.p;
    const unsigned k = t.k;
    std::vector<std::uint64_t> da(k), db(k), prod(2 * k, 0);
    for (unsigned i = 0; i < k; ++i) {
      da[i] = a % p;
      a /= p;
      db[i] = b % p;
      b /= p;
    }
    for (unsigned i = 0; i < k; ++i) {
      for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    for (unsigned i = 2 * k - 1; i >= k; --i) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (unsigned j = 0; j < k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - c) * t.modulus[j]) % p;
    }
    std::uint64_t r = 0;
    for (unsigned i = k; i-- > 0;) r = r * p + prod[i];
    return r;
  }

  static void build_tables(Tables& t) {
    const std::uint64_t n = t.q - 1;
    const std::vector<std::uint64_t> ell = detail::prime_divisors(n);
    auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(t, r, a);
        a = slow_mul(t, a, a);
        e >>= 1;
      }
      return r;
    };
    std::uint64_t g = 0;
    for (std::uint64_t cand = 1; cand < t.q && g == 0; ++cand) {
      bool primitive = true;
      for (auto l : ell) {
        if (slow_pow(cand, n / l) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) g = cand;
    }
    if (g == 0) throw std::logic_error("FqField: no generator found");
    t.exp.resize(n == 0 ? 1 : n);
    t.log.assign(t.q, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      t.exp[i] = static_cast<Element>(cur);
      t.log[cur] = static_cast<std::uint32_t>(i);
      cur = slow_mul(t, cur, g);
    }
    if (n == 0) t.exp[0] = 1;
  }

  std::shared_ptr<const Tables> t_;
};

/// Field homomorphism F_{p^k} -> F_{p^j} for k | j, sending the basis root x
/// to the smallest-index root of the small modulus in the big field. The
/// result is indexed by the small field's element index.
inline std::vector<FqField::Element> embedding(const FqField& small, const FqField& big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
    throw std::invalid_argument("embedding: F_{p^k} embeds in F_{p^j} only when k divides j");
  }
  const unsigned k = small.degree();
  const auto& mod = small.modulus();
  auto eval_modulus = [&](FqField::Element x) {
    FqField::Element r = big.one();
    for (unsigned i = k; i-- > 0;) r = big.add(big.mul(r, x), big.element(mod[i]));
    return r;
  };
  std::optional<FqField::Element> alpha;
  for (std::uint64_t i = 0; i < big.order() && !alpha; ++i) {
    if (eval_modulus(big.element(i)) == big.zero()) alpha = big.element(i);
  }
  if (!alpha) throw std::logic_error("embedding: modulus has no root in the larger field");
  std::vector<FqField::Element> image(small.order());
  for (std::uint64_t i = 0; i < small.order(); ++i) {
    const auto d = small.digits(small.element(i));
    FqField::Element r = big.zero();
    for (unsigned j = k; j-- > 0;) r = big.add(big.mul(r, *alpha), big.element(d[j]));
    image[i] = r;
  }
  return image;
}

}  // namespace iterquad
