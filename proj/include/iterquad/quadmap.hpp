#pragma once

// Quadratic maps f(x) = (x - gamma)^2 + gamma + m over the integers, their
// critical orbits, and the square-based irreducibility and stability tests
// that drive every construction in the library.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterquad/factor.hpp"
#include "iterquad/integer.hpp"
#include "iterquad/squares.hpp"

namespace iterquad {

struct Limits {
  unsigned orbit_depth_cap = 12;
};

/// A constructor's hypothesis did not hold; `clause` names which one.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string clause, const std::string& detail)
      : std::invalid_argument(clause + ": " + detail), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

struct QuadMapZ {
  Integer gamma;
  Integer m;

  /// Coefficients of x^2, x^1, x^0.
  std::array<Integer, 3> coefficients() const { return {Integer(1), Integer(-2 * gamma), Integer(gamma * gamma + gamma + m)}; }

  Integer operator()(const Integer& x) const {
    const Integer d = x - gamma;
    return d * d + gamma + m;
  }

  friend bool operator==(const QuadMapZ&, const QuadMapZ&) = default;
};

/// base[i - 1] = f0^i(0) for f0 = x^2 + m; f^i(gamma) = base[i - 1] + gamma.
struct CriticalOrbit {
  QuadMapZ map;
  std::vector<Integer> base;

  unsigned depth() const { return static_cast<unsigned>(base.size()); }
  const Integer& f0(unsigned i) const { return base.at(i - 1); }
  Integer value(unsigned i) const { return base.at(i - 1) + map.gamma; }
};

inline void check_depth(unsigned n, const Limits& limits) {
  if (n > limits.orbit_depth_cap) {
    throw std::length_error("orbit depth " + std::to_string(n) + " exceeds cap " + std::to_string(limits.orbit_depth_cap));
  }
}

/// f0^1(0), ..., f0^N(0) for f0 = x^2 + m.
inline std::vector<Integer> base_orbit(const Integer& m, unsigned N) {
  std::vector<Integer> out;
  out.reserve(N);
  Integer a = 0;
  for (unsigned i = 0; i < N; ++i) {
    a = a * a + m;
    out.push_back(a);
  }
  return out;
}

inline CriticalOrbit orbit(const QuadMapZ& f, unsigned N, const Limits& limits = {}) {
  if (N < 1) throw std::invalid_argument("orbit: depth must be at least 1");
  check_depth(N, limits);
  return {f, base_orbit(f.m, N)};
}

/// entries[i - 1] is the i-th member of -f(gamma), f^2(gamma), ..., f^N(gamma).
inline std::vector<Integer> adjusted_sequence(const CriticalOrbit& o) {
  std::vector<Integer> out;
  out.reserve(o.depth());
  for (unsigned i = 1; i <= o.depth(); ++i) out.push_back(i == 1 ? Integer(-o.value(1)) : o.value(i));
  return out;
}

inline std::vector<Integer> adjusted_sequence(const QuadMapZ& f, unsigned N, const Limits& limits = {}) {
  return adjusted_sequence(orbit(f, N, limits));
}

enum class Verdict { IRREDUCIBLE_CERTIFIED, INCONCLUSIVE };

inline const char* to_string(Verdict v) {
  return v == Verdict::IRREDUCIBLE_CERTIFIED ? "IRREDUCIBLE_CERTIFIED" : "INCONCLUSIVE";
}

/// One level of the half-difference test: the pair (u +- sqrt(f^i(gamma)))/2
/// examined when f^i(gamma) itself is a square.
struct AltfundLevel {
  unsigned index = 0;
  bool entry_is_square = false;
  std::optional<std::array<Rational, 2>> elements;
  bool passed = false;
};

struct CriterionResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::optional<unsigned> failing_index;  // first index where the test could not conclude
  bool reducible_by_root = false;  // f(gamma) = 0, so f = (x - gamma)^2 and every iterate is a square
  std::vector<AltfundLevel> levels;  // filled by check_altfund only
};

/// Certified iff none of -f(gamma), f^2(gamma), ..., f^n(gamma) is a square.
/// Over Q a square entry only means the test is silent.
inline CriterionResult check_fund(const QuadMapZ& f, unsigned n, const Limits& limits = {}) {
  if (n < 1) throw std::invalid_argument("check_fund: n must be at least 1");
  const auto seq = adjusted_sequence(f, n, limits);
  CriterionResult r;
  r.reducible_by_root = seq[0] == 0;
  for (unsigned i = 1; i <= n; ++i) {
    if (is_square_integer(seq[i - 1])) {
      r.failing_index = i;
      return r;
    }
  }
  r.verdict = Verdict::IRREDUCIBLE_CERTIFIED;
  return r;
}

/// Like check_fund, but a square f^i(gamma) = t^2 is still acceptable when both
/// (u + t)/2 and (u - t)/2 are non-squares, with u = -f(gamma) + gamma at i = 2
/// and u = f^{i-1}(gamma) - gamma for i >= 3.
inline CriterionResult check_altfund(const QuadMapZ& f, unsigned n, const Limits& limits = {}) {
  if (n < 2) throw std::invalid_argument("check_altfund: n must be at least 2");
  const CriticalOrbit o = orbit(f, n, limits);
  CriterionResult r;
  const Integer first = -o.value(1);
  r.reducible_by_root = first == 0;
  if (is_square_integer(first)) {
    r.failing_index = 1;
    return r;
  }
  for (unsigned i = 2; i <= n; ++i) {
    AltfundLevel level;
    level.index = i;
    const Integer v = o.value(i);
    const auto root = exact_sqrt(v);
    if (!root) {
      level.passed = true;
      r.levels.push_back(std::move(level));
      continue;
    }
    level.entry_is_square = true;
    const Integer u = i == 2 ? Integer(first + f.gamma) : Integer(o.value(i - 1) - f.gamma);
    const Rational plus = make_rational(u + *root, 2);
    const Rational minus = make_rational(u - *root, 2);
    level.elements = std::array<Rational, 2>{plus, minus};
    level.passed = !is_square_rational(plus) && !is_square_rational(minus);
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

enum class CertificateKind { NUMFIELD_Q, DEDDOM_STAB, NONE };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::NUMFIELD_Q:
      return "NUMFIELD_Q";
    case CertificateKind::DEDDOM_STAB:
      return "DEDDOM_STAB";
    case CertificateKind::NONE:
      break;
  }
  return "NONE";
}

struct StabilityCertificate {
  CertificateKind kind = CertificateKind::NONE;
  std::vector<std::string> evidence;
  std::optional<Integer> prime;  // the prime used by DEDDOM_STAB
  std::string note;
};

/// Stability over Q from the 2-adic argument: gamma + m odd and -(gamma + m)
/// not a square.
inline StabilityCertificate check_numfield_Q(const QuadMapZ& f) {
  StabilityCertificate c;
  const Integer s = f.gamma + f.m;
  const bool odd = mpz_odd_p(s.get_mpz_t()) != 0;
  const Integer neg = -s;
  const bool nonsquare = !is_square_integer(neg);
  c.evidence.push_back("gamma + m = " + to_string(s) + (odd ? " is odd" : " is even"));
  c.evidence.push_back("-(gamma + m) = " + to_string(neg) + (nonsquare ? " is not a square" : " is a square"));
  if (odd && nonsquare) c.kind = CertificateKind::NUMFIELD_Q;
  return c;
}

/// Stability from a prime p with v_p(m) odd and positive and v_p(gamma) > v_p(m).
inline StabilityCertificate check_deddomstab(const QuadMapZ& f, const FactorBudget& budget = {}) {
  StabilityCertificate c;
  if (f.m == 0) {
    c.note = "m = 0 has no prime of positive valuation";
    return c;
  }
  const Factorization fz = factor(f.m, budget);
  for (const auto& pe : fz.factors) {
    const auto vm = pe.exponent;
    if (vm % 2 == 0) continue;
    const bool gamma_zero = f.gamma == 0;
    const int vg = gamma_zero ? 0 : valuation(f.gamma, pe.prime);
    if (gamma_zero || vg > vm) {
      c.kind = CertificateKind::DEDDOM_STAB;
      c.prime = pe.prime;
      c.evidence.push_back("v_" + to_string(pe.prime) + "(m) = " + std::to_string(vm) + " is odd and positive");
      c.evidence.push_back("v_" + to_string(pe.prime) + "(gamma) = " + (gamma_zero ? std::string("infinity") : std::to_string(vg)) +
                           " exceeds it");
      return c;
    }
  }
  if (!fz.complete()) c.note = "budget: unfactored cofactor " + to_string(fz.cofactor) + " not examined";
  return c;
}

/// Recompute a certificate's hypotheses from scratch.
inline bool recheck(const StabilityCertificate& c, const QuadMapZ& f) {
  switch (c.kind) {
    case CertificateKind::NUMFIELD_Q:
      return check_numfield_Q(f).kind == CertificateKind::NUMFIELD_Q;
    case CertificateKind::DEDDOM_STAB: {
      if (!c.prime || f.m == 0) return false;
      const auto vm = valuation(f.m, *c.prime);
      if (vm % 2 == 0) return false;
      return f.gamma == 0 || valuation(f.gamma, *c.prime) > vm;
    }
    case CertificateKind::NONE:
      break;
  }
  return false;
}

struct RigidDivisibility {
  bool holds = false;
  unsigned k = 0;  // first index with p | f0^k(0)
  int e = 0;  // v_p(f0^k(0))
};

/// Whether v_p(f0^{kj}(0)) = v_p(f0^k(0)) for every multiple kj <= N of the
/// first index k at which p divides the base orbit.
inline RigidDivisibility rigid_divisibility_probe(const Integer& m, const Integer& p, unsigned N, const Limits& limits = {}) {
  check_depth(N, limits);
  const auto base = base_orbit(m, N);
  RigidDivisibility r;
  for (unsigned i = 1; i <= N; ++i) {
    const Integer& v = base[i - 1];
    if (v == 0) throw std::domain_error("rigid_divisibility_probe: orbit reaches 0, valuation undefined");
    const auto e = valuation(v, p);
    if (e > 0) {
      r.k = i;
      r.e = e;
      break;
    }
  }
  if (r.k == 0) throw std::invalid_argument("rigid_divisibility_probe: p divides no f0^k(0) with k <= N");
  r.holds = true;
  for (unsigned j = 2 * r.k; j <= N; j += r.k) {
    if (base[j - 1] == 0 || valuation(base[j - 1], p) != r.e) r.holds = false;
  }
  return r;
}

/// s must be odd when m is even or n is odd, and even otherwise.
inline bool qcor_wants_odd_s(unsigned n, const Integer& m) { return mpz_even_p(m.get_mpz_t()) || n % 2 == 1; }

/// gamma = s - f0^n(0) for a square s of the right parity exceeding
/// (f0^{n-1}(0))^2. Then f^i is irreducible over Q and reducible modulo every
/// prime for all i >= n.
inline QuadMapZ construct_qcor(unsigned n, const Integer& m, const Integer& s, const Limits& limits = {}) {
  if (n < 2) throw HypothesisViolation("n", "construction needs n >= 2, got " + std::to_string(n));
  check_depth(n, limits);
  if (!is_square_integer(s)) throw HypothesisViolation("squareness", "s = " + to_string(s) + " is not a perfect square");
  const bool want_odd = qcor_wants_odd_s(n, m);
  const bool s_odd = mpz_odd_p(s.get_mpz_t()) != 0;
  if (want_odd != s_odd) {
    throw HypothesisViolation("parity", std::string("s must be ") + (want_odd ? "odd" : "even") + " for n = " + std::to_string(n) +
                                            ", m = " + to_string(m));
  }
  const auto base = base_orbit(m, n);
  const Integer prev_sq = base[n - 2] * base[n - 2];
  if (s <= prev_sq) {
    throw HypothesisViolation("size", "s = " + to_string(s) + " must exceed (f0^{n-1}(0))^2 = " + to_string(prev_sq));
  }
  QuadMapZ f{s - base[n - 1], m};
  if (check_numfield_Q(f).kind != CertificateKind::NUMFIELD_Q || f.gamma + base[n - 1] != s) {
    throw std::logic_error("construct_qcor: constructed map fails its own certificate");
  }
  return f;
}

/// The `count` smallest admissible s, ascending: squares a^2 with
/// a > |f0^{n-1}(0)| of the parity construct_qcor requires.
inline std::vector<Integer> suggest_s(unsigned n, const Integer& m, std::size_t count, const Limits& limits = {}) {
  if (n < 2) throw HypothesisViolation("n", "construction needs n >= 2");
  check_depth(n, limits);
  const Integer b = abs(base_orbit(m, n - 1).back());
  const bool want_odd = qcor_wants_odd_s(n, m);
  std::vector<Integer> out;
  Integer a = b + 1;
  if ((mpz_odd_p(a.get_mpz_t()) != 0) != want_odd) a += 1;
  while (out.size() < count) {
    out.push_back(a * a);
    a += 2;
  }
  return out;
}

/// True iff some member of -f(gamma), f^2(gamma), ..., f^n(gamma) is a square
/// modulo the odd prime p (0 included), which over F_p is equivalent to the
/// reduction of f^n being reducible.
inline bool check_deddom_reducibility(const QuadMapZ& f, unsigned n, const Integer& p, const Limits& limits = {}) {
  if (n < 1) throw std::invalid_argument("check_deddom_reducibility: n must be at least 1");
  const auto seq = adjusted_sequence(f, n, limits);
  for (const auto& v : seq) {
    if (legendre(v, p) != -1) return true;
  }
  return false;
}

}  // namespace iterquad
