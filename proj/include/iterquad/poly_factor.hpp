#pragma once

// Irreducibility testing and complete factorization over F_q: square-free
// decomposition, distinct-degree splitting through a precomputed Frobenius
// matrix, and randomized equal-degree splitting (Cantor-Zassenhaus for odd q,
// trace map in characteristic 2).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "iterquad/poly.hpp"

namespace iterquad {

/// h -> h^q mod g as a linear map: since coefficients are fixed by the q-th
/// power, h(x)^q = sum_j h_j (x^q)^j, so only the images of x^j are stored.
template <FiniteField F>
class FrobeniusMap {
 public:
  explicit FrobeniusMap(const Poly<F>& modulus) : mod_(monic(modulus)) {
    const F& f = mod_.field();
    const int d = mod_.degree();
    if (d < 1) throw std::invalid_argument("FrobeniusMap: modulus must have positive degree");
    const Poly<F> xq = powmod(Poly<F>::x(f), from_u64(f.order()), mod_);
    rows_.reserve(static_cast<std::size_t>(d));
    Poly<F> cur = Poly<F>::constant(f, f.one());
    for (int j = 0; j < d; ++j) {
      rows_.push_back(padded(cur, static_cast<std::size_t>(d)));
      if (j + 1 < d) cur = mulmod(cur, xq, mod_);
    }
  }

  const Poly<F>& modulus() const { return mod_; }

  Poly<F> apply(const Poly<F>& h) const {
    const F& f = mod_.field();
    const Poly<F> r = h.degree() >= mod_.degree() ? h % mod_ : h;
    const std::size_t d = rows_.size();
    std::vector<typename F::Element> acc(d, f.zero());
    for (std::size_t j = 0; j < r.coeffs().size(); ++j) {
      const auto c = r.coeffs()[j];
      if (f.is_zero(c)) continue;
      const auto& row = rows_[j];
      for (std::size_t i = 0; i < d; ++i) acc[i] = f.add(acc[i], f.mul(c, row[i]));
    }
    return Poly<F>(f, std::move(acc));
  }

 private:
  static std::vector<typename F::Element> padded(const Poly<F>& p, std::size_t n) {
    std::vector<typename F::Element> v = p.coeffs();
    v.resize(n, p.field().zero());
    return v;
  }

  Poly<F> mod_;
  std::vector<std::vector<typename F::Element>> rows_;
};

namespace detail {

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// Rabin's test: g of degree d is irreducible iff x^{q^d} = x mod g and
/// gcd(x^{q^{d/l}} - x, g) = 1 for every prime l | d.
template <FiniteField F>
bool is_irreducible(const Poly<F>& g) {
  const int d = g.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const F& f = g.field();
  const Poly<F> m = monic(g);
  const FrobeniusMap<F> frob(m);
  const Poly<F> x = Poly<F>::x(f);
  std::vector<int> checkpoints;
  for (std::uint64_t l : detail::prime_divisors(static_cast<std::uint64_t>(d))) checkpoints.push_back(d / static_cast<int>(l));
  Poly<F> h = x;
  for (int i = 1; i <= d; ++i) {
    h = frob.apply(h);
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      if (gcd(h - x, m).degree() != 0) return false;
    }
  }
  return h == x % m;
}

template <FiniteField F>
struct PolyFactor {
  Poly<F> factor;  // monic irreducible (or square-free part during decomposition)
  int exponent = 1;
};

namespace detail {

template <FiniteField F>
Poly<F> pth_root(const Poly<F>& a) {
  const F& f = a.field();
  const std::uint64_t p = f.characteristic();
  std::vector<typename F::Element> v;
  for (std::size_t i = 0; i < a.coeffs().size(); i += p) v.push_back(f.pth_root(a.coeffs()[i]));
  return Poly<F>(f, std::move(v));
}

// Canonical order for reproducible output: degree, then coefficient indices.
template <FiniteField F>
bool poly_less(const Poly<F>& a, const Poly<F>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const F& f = a.field();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto ia = f.index(a.coeffs()[i]);
    const auto ib = f.index(b.coeffs()[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

}  // namespace detail

/// Square-free decomposition of a nonzero polynomial: monic pairwise coprime
/// square-free parts with multiplicities; the product of part^mult is monic(a).
template <FiniteField F>
std::vector<PolyFactor<F>> squarefree_decomposition(const Poly<F>& a) {
  if (a.is_zero()) throw std::domain_error("squarefree_decomposition of zero");
  std::vector<PolyFactor<F>> out;
  const Poly<F> g = monic(a);
  if (g.degree() == 0) return out;
  const F& f = g.field();
  Poly<F> c = gcd(g, derivative(g));
  Poly<F> w = g / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly<F> y = gcd(w, c);
    Poly<F> fac = w / y;
    if (fac.degree() > 0) out.push_back({monic(fac), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    const Poly<F> root = detail::pth_root(monic(c));
    const auto p = static_cast<int>(f.characteristic());
    for (auto& part : squarefree_decomposition(root)) out.push_back({part.factor, part.exponent * p});
  }
  return out;
}

/// Distinct-degree split of a monic square-free polynomial into
/// (product of all irreducible factors of degree d, d) pairs.
template <FiniteField F>
std::vector<PolyFactor<F>> distinct_degree_split(const Poly<F>& g) {
  std::vector<PolyFactor<F>> out;
  if (g.degree() < 1) return out;
  const F& f = g.field();
  const FrobeniusMap<F> frob(g);
  const Poly<F> x = Poly<F>::x(f);
  Poly<F> rest = monic(g);
  Poly<F> h = x;
  for (int i = 1; rest.degree() >= 2 * i; ++i) {
    h = frob.apply(h);
    Poly<F> part = gcd(rest, h - x);
    if (part.degree() > 0) {
      out.push_back({part, i});
      rest = rest / part;
    }
  }
  if (rest.degree() > 0) out.push_back({rest, rest.degree()});
  return out;
}

/// Split a monic square-free g whose irreducible factors all have degree d.
template <FiniteField F>
std::vector<Poly<F>> equal_degree_split(const Poly<F>& g, int d, std::mt19937_64& rng) {
  const int n = g.degree();
  if (n == d) return {g};
  if (n < d || n % d != 0) throw std::logic_error("equal_degree_split: degree mismatch");
  const F& f = g.field();
  const std::uint64_t q = f.order();
  const FrobeniusMap<F> frob(g);
  std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
  while (true) {
    std::vector<typename F::Element> coeffs(static_cast<std::size_t>(n));
    for (auto& c : coeffs) c = f.element(pick(rng));
    const Poly<F> a(f, std::move(coeffs));
    if (a.degree() < 1) continue;
    Poly<F> probe(f);
    if (q % 2 == 1) {
      // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
      Poly<F> s = a, t = a;
      for (int i = 1; i < d; ++i) {
        s = frob.apply(s);
        t = mulmod(t, s, g);
      }
      probe = powmod(t, (q - 1) / 2, g) - Poly<F>::constant(f, f.one());
    } else {
      // Absolute trace to F_2: sum of a^{2^i} for i < d * log2(q).
      int k = 0;
      for (std::uint64_t t = q; t > 1; t >>= 1) ++k;
      Poly<F> s = a, tr = a;
      for (int i = 1; i < k * d; ++i) {
        s = mulmod(s, s, g);
        tr = tr + s;
      }
      probe = tr;
    }
    Poly<F> u = gcd(g, probe);
    if (u.degree() > 0 && u.degree() < n) {
      auto left = equal_degree_split(u, d, rng);
      auto right = equal_degree_split(monic(g / u), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

/// Complete factorization into monic irreducibles with exponents, in
/// canonical order. The leading coefficient is dropped (callers compare monic).
template <FiniteField F>
std::vector<PolyFactor<F>> factor_poly(const Poly<F>& a, std::mt19937_64& rng, std::size_t degree_cap = 1024) {
  if (a.is_zero()) throw std::domain_error("factor_poly of zero");
  if (static_cast<std::size_t>(std::max(a.degree(), 0)) > degree_cap) {
    throw std::length_error("factor_poly: degree " + std::to_string(a.degree()) + " exceeds cap");
  }
  std::vector<PolyFactor<F>> out;
  for (const auto& sf : squarefree_decomposition(a)) {
    for (const auto& dd : distinct_degree_split(sf.factor)) {
      for (auto& irr : equal_degree_split(dd.factor, dd.exponent, rng)) out.push_back({monic(irr), sf.exponent});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor<F>& x, const PolyFactor<F>& y) {
    if (detail::poly_less(x.factor, y.factor)) return true;
    if (detail::poly_less(y.factor, x.factor)) return false;
    return x.exponent < y.exponent;
  });
  // Identical irreducibles from different square-free layers cannot occur,
  // but merge defensively so the output is a true multiset.
  std::vector<PolyFactor<F>> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().factor == pf.factor) {
      merged.back().exponent += pf.exponent;
    } else {
      merged.push_back(std::move(pf));
    }
  }
  return merged;
}

/// Square root of a polynomial, if it is a square in F_q[x].
template <FiniteField F>
std::optional<Poly<F>> sqrt_poly(const Poly<F>& a) {
  const F& f = a.field();
  if (a.is_zero()) return a;
  auto lead_root = f.sqrt(a.leading());
  if (!lead_root) return std::nullopt;
  Poly<F> root = Poly<F>::constant(f, *lead_root);
  for (const auto& part : squarefree_decomposition(a)) {
    if (part.exponent % 2 != 0) return std::nullopt;
    root = root * pow(part.factor, static_cast<std::uint64_t>(part.exponent / 2));
  }
  return root;
}

template <FiniteField F>
bool is_square_poly(const Poly<F>& a) {
  return sqrt_poly(a).has_value();
}

/// Distinct roots in F, ascending by element index.
template <FiniteField F>
std::vector<typename F::Element> roots(const Poly<F>& a, std::mt19937_64& rng) {
  std::vector<typename F::Element> out;
  for (const auto& pf : factor_poly(a, rng, static_cast<std::size_t>(std::max(a.degree(), 0)))) {
    if (pf.factor.degree() == 1) out.push_back(a.field().neg(pf.factor.coeffs()[0]));
  }
  const F& f = a.field();
  std::sort(out.begin(), out.end(), [&](auto x, auto y) { return f.index(x) < f.index(y); });
  return out;
}

}  // namespace iterquad
