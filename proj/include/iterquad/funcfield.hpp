#pragma once

// Rational function fields F_q(t): polynomials and fractions in t, their
// valuations at finite places and at infinity, square tests, and the
// function-field analogue of the integer construction, where valuations at
// two places replace the 2-adic argument.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterquad/fq_field.hpp"
#include "iterquad/poly_factor.hpp"
#include "iterquad/quadmap.hpp"

namespace iterquad {

using FqPoly = Poly<FqField>;

/// num/den with den monic and gcd(num, den) = 1.
class FqRat {
 public:
  explicit FqRat(const FqField& f) : num_(f), den_(FqPoly::constant(f, f.one())) {}
  explicit FqRat(FqPoly num) : num_(std::move(num)), den_(FqPoly::constant(num_.field(), num_.field().one())) {}
  FqRat(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static FqRat constant(const FqField& f, FqField::Element c) { return FqRat(FqPoly::constant(f, c)); }

  const FqField& field() const { return num_.field(); }
  const FqPoly& num() const { return num_; }
  const FqPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend FqRat operator+(const FqRat& a, const FqRat& b) { return FqRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
  friend FqRat operator-(const FqRat& a, const FqRat& b) { return FqRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
  friend FqRat operator*(const FqRat& a, const FqRat& b) { return FqRat(a.num_ * b.num_, a.den_ * b.den_); }
  friend FqRat operator/(const FqRat& a, const FqRat& b) {
    if (b.is_zero()) throw std::domain_error("FqRat: division by zero");
    return FqRat(a.num_ * b.den_, a.den_ * b.num_);
  }
  FqRat operator-() const { return FqRat(-num_, den_); }
  FqRat scaled(FqField::Element c) const { return FqRat(num_.scaled(c), den_); }

  friend bool operator==(const FqRat& a, const FqRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("FqRat: zero denominator");
    const FqField& f = num_.field();
    if (num_.is_zero()) {
      den_ = FqPoly::constant(f, f.one());
      return;
    }
    const FqPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const auto li = f.inv(den_.leading());
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }

  FqPoly num_;
  FqPoly den_;
};

/// A place of F_q(t): a monic irreducible polynomial, or infinity.
struct Place {
  std::optional<FqPoly> prime;
  static Place infinity() { return {}; }
  static Place finite(const FqPoly& p) {
    if (p.degree() < 1) throw std::invalid_argument("Place: finite place needs positive degree");
    return {monic(p)};
  }
  bool is_infinite() const { return !prime.has_value(); }
};

inline int valuation(const FqPoly& a, const FqPoly& prime) {
  if (a.is_zero()) throw std::domain_error("valuation of zero");
  int v = 0;
  FqPoly t = a;
  while (true) {
    auto [q, r] = divmod(t, prime);
    if (!r.is_zero()) return v;
    t = std::move(q);
    ++v;
  }
}

/// v_P(num) - v_P(den) at a finite place; deg(den) - deg(num) at infinity.
inline int valuation(const FqRat& x, const Place& P) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  if (P.is_infinite()) return x.den().degree() - x.num().degree();
  return valuation(x.num(), *P.prime) - valuation(x.den(), *P.prime);
}

/// Squares in F_q(t): both parts of the reduced fraction are squares (the
/// denominator is monic, so leading coefficients are checked on the numerator).
/// Zero counts as a square.
inline bool is_square_fqrat(const FqRat& x) {
  if (x.is_zero()) return true;
  return is_square_poly(x.num()) && is_square_poly(x.den());
}

inline std::optional<FqRat> sqrt_fqrat(const FqRat& x) {
  if (x.is_zero()) return x;
  auto n = sqrt_poly(x.num());
  auto d = sqrt_poly(x.den());
  if (!n || !d) return std::nullopt;
  return FqRat(*n, *d);
}

struct QuadMapFq {
  FqRat gamma;
  FqRat m;

  /// Coefficients of x^2, x^1, x^0.
  std::array<FqRat, 3> coefficients() const {
    const FqField& F = gamma.field();
    return {FqRat::constant(F, F.one()), gamma.scaled(F.neg(scalar_from_int(F, 2))), gamma * gamma + gamma + m};
  }

  FqRat operator()(const FqRat& x) const {
    const FqRat d = x - gamma;
    return d * d + gamma + m;
  }
};

/// f0^1(0), ..., f0^N(0) for f0 = x^2 + m over F_q(t).
inline std::vector<FqRat> base_orbit(const FqRat& m, unsigned N) {
  std::vector<FqRat> out;
  out.reserve(N);
  FqRat a(m.field());
  for (unsigned i = 0; i < N; ++i) {
    a = a * a + m;
    out.push_back(a);
  }
  return out;
}

/// f^1(gamma), ..., f^N(gamma).
inline std::vector<FqRat> critical_values(const QuadMapFq& f, unsigned N) {
  auto base = base_orbit(f.m, N);
  for (auto& v : base) v = v + f.gamma;
  return base;
}

struct FqAltfundLevel {
  unsigned index = 0;
  bool entry_is_square = false;
  std::optional<std::array<FqRat, 2>> elements;
  bool passed = false;
};

struct FqCriterionResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::optional<unsigned> failing_index;
  bool reducible_by_root = false;
  std::vector<FqAltfundLevel> levels;
};

/// The half-difference criterion over F_q(t); odd characteristic only.
inline FqCriterionResult check_altfund_fq(const QuadMapFq& f, unsigned n, const Limits& limits = {}) {
  if (n < 2) throw std::invalid_argument("check_altfund_fq: n must be at least 2");
  check_depth(n, limits);
  const FqField& F = f.gamma.field();
  if (F.characteristic() == 2) throw std::invalid_argument("check_altfund_fq: characteristic must be odd");
  const auto half = F.inv(scalar_from_int(F, 2));
  const auto values = critical_values(f, n);
  FqCriterionResult r;
  const FqRat first = -values[0];
  r.reducible_by_root = first.is_zero();
  if (is_square_fqrat(first)) {
    r.failing_index = 1;
    return r;
  }
  for (unsigned i = 2; i <= n; ++i) {
    FqAltfundLevel level;
    level.index = i;
    const auto root = sqrt_fqrat(values[i - 1]);
    if (!root) {
      level.passed = true;
      r.levels.push_back(std::move(level));
      continue;
    }
    level.entry_is_square = true;
    const FqRat u = i == 2 ? first + f.gamma : values[i - 2] - f.gamma;
    const FqRat plus = (u + *root).scaled(half);
    const FqRat minus = (u - *root).scaled(half);
    level.passed = !is_square_fqrat(plus) && !is_square_fqrat(minus);
    level.elements = std::array<FqRat, 2>{plus, minus};
    const bool ok = level.passed;
    r.levels.push_back(std::move(level));
    if (!ok) {
      r.failing_index = i;
      return r;
    }
  }
  r.verdict = Verdict::IRREDUCIBLE_CERTIFIED;
  return r;
}

/// Valuation evidence: at Q1 (a finite place where m has odd positive
/// valuation c1) every f0^i(0) has valuation c1 and so do the level-n
/// half-differences; at infinity (valuation c2 < 0, odd) gamma has valuation
/// (2^{n-1} - 1) c2 and every f^i(gamma), i < n, shares it.
struct RatffCertificate {
  FqPoly q1;
  int c1 = 0;
  std::vector<int> q1_base_valuations;   // v_Q1(f0^i(0)), i = 1..n
  std::array<int, 2> q1_altfund_valuations{};
  int c2 = 0;
  int v_inf_gamma = 0;
  std::vector<int> inf_value_valuations;  // v_inf(f^i(gamma)), i = 1..n-1
  bool verified = false;
};

struct RatffConstruction {
  unsigned n = 0;
  QuadMapFq map;
  RatffCertificate certificate;
  FqCriterionResult altfund;
  std::vector<FqCriterionResult> later_levels;  // levels n+1, n+2; reported only
};

namespace detail {

inline std::optional<FqPoly> odd_multiplicity_prime(const FqPoly& a) {
  std::mt19937_64 rng(0x5eed);
  for (const auto& pf : factor_poly(a, rng)) {
    if (pf.exponent % 2 == 1) return pf.factor;
  }
  return std::nullopt;
}

}  // namespace detail

/// gamma = m^{2^{n-1}} - f0^n(0) for m = g/h with deg g odd, deg h even,
/// deg g > deg h. Then f^n is irreducible over F_q(t) and its reduction is
/// reducible at every place where m is integral.
inline RatffConstruction construct_ratffcor(unsigned n, const FqRat& m, const Limits& limits = {}) {
  const FqField& F = m.field();
  if (F.characteristic() == 2) throw HypothesisViolation("characteristic", "the field must have odd characteristic");
  if (n < 3) throw HypothesisViolation("n", "construction needs n >= 3, got " + std::to_string(n));
  check_depth(n + 2, limits);
  if (m.is_zero()) throw HypothesisViolation("degree", "m must be nonzero");
  const int dn = m.num().degree(), dd = m.den().degree();
  if (dn % 2 == 0) throw HypothesisViolation("degree", "numerator of m must have odd degree, got " + std::to_string(dn));
  if (dd % 2 != 0) throw HypothesisViolation("degree", "denominator of m must have even degree, got " + std::to_string(dd));
  if (dn <= dd) throw HypothesisViolation("degree", "numerator degree must exceed denominator degree");

  const auto base = base_orbit(m, n + 2);
  FqRat mpow = m;
  for (unsigned i = 1; i < n; ++i) mpow = mpow * mpow;  // m^{2^{n-1}}
  RatffConstruction out{n, QuadMapFq{mpow - base[n - 1], m}, {FqPoly(F), 0, {}, {}, 0, 0, {}, false}, {}, {}};
  const QuadMapFq& f = out.map;
  RatffCertificate& cert = out.certificate;

  const auto q1 = detail::odd_multiplicity_prime(m.num());
  if (!q1) throw std::logic_error("construct_ratffcor: odd-degree numerator without an odd-multiplicity prime");
  const Place Q1 = Place::finite(*q1);
  cert.q1 = *q1;
  cert.c1 = valuation(m, Q1);
  bool ok = cert.c1 > 0 && cert.c1 % 2 == 1;
  for (unsigned i = 1; i <= n; ++i) {
    cert.q1_base_valuations.push_back(valuation(base[i - 1], Q1));
    ok = ok && cert.q1_base_valuations.back() == cert.c1;
  }
  FqRat mhalf = m;
  for (unsigned i = 2; i < n; ++i) mhalf = mhalf * mhalf;  // m^{2^{n-2}}
  const FqRat p1 = base[n - 2] + mhalf, p2 = base[n - 2] - mhalf;
  cert.q1_altfund_valuations = {p1.is_zero() ? 0 : valuation(p1, Q1), p2.is_zero() ? 0 : valuation(p2, Q1)};
  ok = ok && !p1.is_zero() && !p2.is_zero() && cert.q1_altfund_valuations[0] == cert.c1 && cert.q1_altfund_valuations[1] == cert.c1;

  const Place inf = Place::infinity();
  cert.c2 = valuation(m, inf);
  ok = ok && cert.c2 < 0 && (-cert.c2) % 2 == 1;
  cert.v_inf_gamma = f.gamma.is_zero() ? 0 : valuation(f.gamma, inf);
  ok = ok && !f.gamma.is_zero() && cert.v_inf_gamma == static_cast<int>((1u << (n - 1)) - 1) * cert.c2;
  const auto values = critical_values(f, n);
  for (unsigned i = 1; i < n; ++i) {
    const int v = values[i - 1].is_zero() ? 0 : valuation(values[i - 1], inf);
    cert.inf_value_valuations.push_back(v);
    ok = ok && !values[i - 1].is_zero() && v == cert.v_inf_gamma;
  }
  cert.verified = ok;
  if (!ok) throw std::logic_error("construct_ratffcor: valuation certificate failed to recompute");

  out.altfund = check_altfund_fq(f, n, limits);
  if (out.altfund.verdict != Verdict::IRREDUCIBLE_CERTIFIED) {
    throw std::logic_error("construct_ratffcor: constructed map is not certified at level n");
  }
  for (unsigned i = n + 1; i <= n + 2; ++i) out.later_levels.push_back(check_altfund_fq(f, i, limits));
  return out;
}

struct N2Remedy {
  QuadMapFq map;
  FqCriterionResult altfund;
};

/// gamma = (m + r)^2 - m^2 - m for a constant r with r/2 a non-square, so
/// f^2(gamma) = (m + r)^2 and the level-2 half-difference is r/2.
inline N2Remedy construct_n2_remedy(const FqRat& m, FqField::Element r) {
  const FqField& F = m.field();
  if (F.characteristic() == 2) throw HypothesisViolation("characteristic", "the field must have odd characteristic");
  if (m.is_zero() || m.num().degree() % 2 == 0 || m.den().degree() % 2 != 0 || m.num().degree() <= m.den().degree()) {
    throw HypothesisViolation("degree", "m must have odd-degree numerator exceeding an even-degree denominator");
  }
  const auto half_r = F.mul(r, F.inv(scalar_from_int(F, 2)));
  if (F.is_square(half_r)) throw HypothesisViolation("residue", "r/2 must be a non-square in the constant field");
  const FqRat mr = m + FqRat::constant(F, r);
  N2Remedy out{QuadMapFq{mr * mr - m * m - m, m}, {}};
  const auto values = critical_values(out.map, 2);
  if (!(values[1] == mr * mr)) throw std::logic_error("construct_n2_remedy: f^2(gamma) differs from (m + r)^2");
  if (is_square_fqrat(-values[0])) throw std::logic_error("construct_n2_remedy: -f(gamma) is a square");
  out.altfund = check_altfund_fq(out.map, 2);
  if (out.altfund.verdict != Verdict::IRREDUCIBLE_CERTIFIED) throw std::logic_error("construct_n2_remedy: level 2 not certified");
  return out;
}

/// n-fold self-composition of a monic quadratic over any finite field.
template <FiniteField F>
Poly<F> iterate_quadratic(const Poly<F>& g, unsigned n, std::size_t degree_cap = std::size_t{1} << 14) {
  if (g.degree() != 2 || !g.is_monic()) throw std::invalid_argument("iterate_quadratic: expects a monic quadratic");
  if (n >= 63 || (std::size_t{1} << n) > degree_cap) throw std::length_error("iterate_quadratic: degree cap exceeded");
  const F& f = g.field();
  const Poly<F> b = Poly<F>::constant(f, g.coeff(1));
  const Poly<F> c = Poly<F>::constant(f, g.coeff(0));
  Poly<F> h = Poly<F>::x(f);
  for (unsigned i = 0; i < n; ++i) h = h * h + b * h + c;
  return h;
}

namespace detail {

inline FqField::Element evaluate_embedded(const FqPoly& a, const std::vector<FqField::Element>& image, const FqField& big,
                                          FqField::Element c) {
  FqField::Element r = big.zero();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) r = big.add(big.mul(r, c), image[a.field().index(a.coeffs()[i])]);
  return r;
}

inline FqField::Element evaluate_embedded(const FqRat& a, const std::vector<FqField::Element>& image, const FqField& big,
                                          FqField::Element c) {
  const auto d = evaluate_embedded(a.den(), image, big, c);
  if (d == big.zero()) throw std::domain_error("specialize: pole at the chosen point");
  return big.mul(evaluate_embedded(a.num(), image, big, c), big.inv(d));
}

}  // namespace detail

/// Degrees (ascending, with multiplicity) of the irreducible factors over
/// F_{p^j} of f^n specialized at t = c, for c in F_{p^j}.
inline std::vector<int> specialize_and_factor(const QuadMapFq& f, unsigned n, const FqField& big, FqField::Element c,
                                              std::mt19937_64& rng, std::size_t degree_cap = std::size_t{1} << 10) {
  const auto image = embedding(f.gamma.field(), big);
  const auto g = detail::evaluate_embedded(f.gamma, image, big, c);
  const auto mm = detail::evaluate_embedded(f.m, image, big, c);
  // (x - g)^2 + g + m = x^2 - 2g x + g^2 + g + m
  const Poly<FqField> quad(big, {big.add(big.add(big.mul(g, g), g), mm), big.neg(big.add(g, g)), big.one()});
  const Poly<FqField> h = iterate_quadratic(quad, n, degree_cap);
  std::vector<int> degrees;
  for (const auto& pf : factor_poly(h, rng, degree_cap)) {
    for (int e = 0; e < pf.exponent; ++e) degrees.push_back(pf.factor.degree());
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

/// Human-readable form over F_p (k = 1) or with bracketed coordinate lists.
inline std::string to_string(const FqPoly& a, const std::string& var = "t") {
  if (a.is_zero()) return "0";
  const FqField& F = a.field();
  auto coeff_str = [&](FqField::Element c) {
    if (F.degree() == 1) return std::to_string(F.index(c));
    std::string s = "[";
    const auto d = F.digits(c);
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
  };
  std::string out;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto c = a.coeffs()[i];
    if (F.is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    const bool unit = c == F.one() && i > 0;
    if (!unit) out += coeff_str(c);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace iterquad
