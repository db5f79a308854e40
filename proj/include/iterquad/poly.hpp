#pragma once

// Dense univariate polynomials over a finite field, coefficients ascending.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iterquad/integer.hpp"
#include "iterquad/prime_field.hpp"

namespace iterquad {

inline constexpr std::size_t kKaratsubaThreshold = 32;

template <FiniteField F>
class Poly {
 public:
  using Field = F;
  using Element = typename F::Element;

  explicit Poly(F field) : field_(std::move(field)) {}
  Poly(F field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { normalize(); }

  static Poly constant(const F& field, Element c) { return Poly(field, {c}); }
  static Poly monomial(const F& field, Element c, std::size_t degree) {
    std::vector<Element> v(degree + 1, field.zero());
    v[degree] = c;
    return Poly(field, std::move(v));
  }
  static Poly x(const F& field) { return monomial(field, field.one(), 1); }

  const F& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return c_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == field_.one(); }
  Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Element leading() const { return c_.empty() ? field_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }

  Poly operator-() const {
    std::vector<Element> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.neg(c_[i]);
    return Poly(field_, std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const F& f = a.field_;
    std::vector<Element> v(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    const F& f = a.field_;
    std::vector<Element> v(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    return Poly(a.field_, multiply(a.field_, a.c_, b.c_));
  }

  Poly scaled(Element s) const {
    std::vector<Element> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], s);
    return Poly(field_, std::move(v));
  }

  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Element> v(k, field_.zero());
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(field_, std::move(v));
  }

  Element evaluate(Element x) const {
    Element r = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  static std::vector<Element> multiply(const F& f, const std::vector<Element>& a, const std::vector<Element>& b) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaThreshold) return schoolbook(f, a, b);
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<Element> pa(a), pb(b);
    pa.resize(n, f.zero());
    pb.resize(n, f.zero());
    std::vector<Element> out = karatsuba(f, pa, pb);
    out.resize(a.size() + b.size() - 1);
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  static std::vector<Element> schoolbook(const F& f, const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> out(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    return out;
  }

  // Equal-length inputs; result has length 2n - 1.
  static std::vector<Element> karatsuba(const F& f, const std::vector<Element>& a, const std::vector<Element>& b) {
    const std::size_t n = a.size();
    if (n < kKaratsubaThreshold) return schoolbook(f, a, b);
    const std::size_t h = n / 2;
    std::vector<Element> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
    std::vector<Element> b0(b.begin(), b.begin() + h), b1(b.begin() + h, b.end());
    const std::size_t hi = n - h;  // >= h
    std::vector<Element> sa(hi), sb(hi);
    for (std::size_t i = 0; i < hi; ++i) {
      sa[i] = f.add(a1[i], i < h ? a0[i] : f.zero());
      sb[i] = f.add(b1[i], i < h ? b0[i] : f.zero());
    }
    std::vector<Element> z0 = karatsuba(f, a0, b0);
    std::vector<Element> z2 = karatsuba(f, a1, b1);
    std::vector<Element> z1 = karatsuba(f, sa, sb);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = f.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = f.sub(z1[i], z2[i]);
    std::vector<Element> out(2 * n - 1, f.zero());
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = f.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = f.add(out[i + h], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = f.add(out[i + 2 * h], z2[i]);
    return out;
  }

  F field_;
  std::vector<Element> c_;
};

template <FiniteField F>
Poly<F> monic(const Poly<F>& a) {
  if (a.is_zero()) return a;
  return a.scaled(a.field().inv(a.leading()));
}

/// Quotient and remainder; b must be nonzero.
template <FiniteField F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const F& f = a.field();
  if (a.degree() < b.degree()) return {Poly<F>(f), a};
  std::vector<typename F::Element> r = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const auto lead_inv = f.inv(d.back());
  std::vector<typename F::Element> q(r.size() - db, f.zero());
  for (std::size_t i = r.size(); i-- > db;) {
    if (f.is_zero(r[i])) continue;
    const auto coef = f.mul(r[i], lead_inv);
    q[i - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(coef, d[j]));
  }
  r.resize(db);
  return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
}

template <FiniteField F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

template <FiniteField F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).first;
}

/// Monic gcd (zero if both inputs are zero).
template <FiniteField F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// The integer k mapped into the prime subfield of F.
template <FiniteField F>
typename F::Element scalar_from_int(const F& f, std::uint64_t k) {
  return f.element(k % f.characteristic());
}

template <FiniteField F>
Poly<F> derivative(const Poly<F>& a) {
  const F& f = a.field();
  if (a.degree() < 1) return Poly<F>(f);
  std::vector<typename F::Element> v(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = f.mul(a.coeffs()[i], scalar_from_int(f, i));
  return Poly<F>(f, std::move(v));
}

template <FiniteField F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return (a * b) % m;
}

template <FiniteField F>
Poly<F> powmod(const Poly<F>& base, const Integer& e, const Poly<F>& m) {
  if (e < 0) throw std::domain_error("powmod: negative exponent");
  Poly<F> result = Poly<F>::constant(base.field(), base.field().one()) % m;
  Poly<F> b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
  }
  return result;
}

template <FiniteField F>
Poly<F> powmod(const Poly<F>& base, std::uint64_t e, const Poly<F>& m) {
  return powmod(base, from_u64(e), m);
}

template <FiniteField F>
Poly<F> pow(const Poly<F>& base, std::uint64_t e) {
  Poly<F> result = Poly<F>::constant(base.field(), base.field().one());
  Poly<F> b = base;
  while (e) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

/// outer(inner) by Horner's rule.
template <FiniteField F>
Poly<F> compose(const Poly<F>& outer, const Poly<F>& inner) {
  const F& f = outer.field();
  Poly<F> r(f);
  for (std::size_t i = outer.coeffs().size(); i-- > 0;) r = r * inner + Poly<F>::constant(f, outer.coeffs()[i]);
  return r;
}

}  // namespace iterquad
