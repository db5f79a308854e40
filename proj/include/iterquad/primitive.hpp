#pragma once

// Primitive examples: stable integer quadratics whose (n-1)-st iterate stays
// irreducible modulo a positive density of primes while the n-th iterate is
// reducible modulo every prime.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterquad/factor.hpp"
#include "iterquad/modpoly.hpp"
#include "iterquad/quadmap.hpp"
#include "iterquad/sieve.hpp"

namespace iterquad {

enum class StarStatus { WITNESS, FAILED, UNKNOWN };

inline const char* to_string(StarStatus s) {
  switch (s) {
    case StarStatus::WITNESS:
      return "WITNESS";
    case StarStatus::FAILED:
      return "FAILED";
    case StarStatus::UNKNOWN:
      break;
  }
  return "UNKNOWN";
}

struct StarEntry {
  unsigned index = 0;
  StarStatus status = StarStatus::UNKNOWN;
  std::optional<Integer> prime;
  int multiplicity = 0;
};

struct ConditionStarResult {
  std::vector<StarEntry> entries;  // indices 1..n-1
  bool all_witnessed() const {
    return std::all_of(entries.begin(), entries.end(), [](const StarEntry& e) { return e.status == StarStatus::WITNESS; });
  }
};

/// For each 1 <= i <= n-1, look for an odd prime dividing f^i(gamma) to odd
/// multiplicity and dividing no earlier f^k(gamma). Smallest such prime wins.
inline ConditionStarResult condition_star(const QuadMapZ& f, unsigned n, const FactorBudget& budget = {},
                                          const Limits& limits = {}) {
  if (n < 2) throw std::invalid_argument("condition_star: n must be at least 2");
  const CriticalOrbit o = orbit(f, n - 1, limits);
  ConditionStarResult out;
  for (unsigned i = 1; i <= n - 1; ++i) {
    StarEntry e;
    e.index = i;
    const Integer v = o.value(i);
    if (v == 0) {
      e.status = StarStatus::FAILED;
      out.entries.push_back(e);
      continue;
    }
    const Factorization fz = factor(v, budget);
    for (const auto& pe : fz.factors) {
      if (pe.prime == 2 || pe.exponent % 2 == 0) continue;
      bool fresh = true;
      for (unsigned k = 1; k < i && fresh; ++k) fresh = !divides(pe.prime, o.value(k));
      if (fresh) {
        e.status = StarStatus::WITNESS;
        e.prime = pe.prime;
        e.multiplicity = pe.exponent;
        break;
      }
    }
    if (e.status != StarStatus::WITNESS) e.status = fz.complete() ? StarStatus::FAILED : StarStatus::UNKNOWN;
    out.entries.push_back(e);
  }
  return out;
}

enum class WitnessStrategy { SCAN, CRT };

inline const char* to_string(WitnessStrategy s) { return s == WitnessStrategy::SCAN ? "SCAN" : "CRT"; }

struct WitnessResult {
  std::optional<std::uint64_t> prime;
  WitnessStrategy strategy = WitnessStrategy::SCAN;
  std::uint64_t candidates_tried = 0;
  std::string note;
  // CRT only: the progression p = residue mod modulus that was scanned.
  std::optional<std::uint64_t> modulus;
  std::optional<std::uint64_t> residue;
};

inline constexpr std::uint64_t kWitnessScanCap = 100000;

namespace detail {

// Every entry of the adjusted sequence through k is a nonzero non-residue.
inline bool residue_chain_holds(const std::vector<Integer>& seq, unsigned k, std::uint64_t p) {
  for (unsigned i = 0; i < k; ++i) {
    if (legendre_u64(mod_u64(seq[i], p), p) != -1) return false;
  }
  return true;
}

inline bool validate_witness(const QuadMapZ& f, const std::vector<Integer>& seq, unsigned k, std::uint64_t p) {
  const bool chain = residue_chain_holds(seq, k, p);
  const bool irreducible = is_irreducible_mod(iterate_mod(reduce(f, p), k));
  if (chain != irreducible) {
    throw std::logic_error("witness validation disagreement at p = " + std::to_string(p) +
                           ": residue chain and direct irreducibility test differ");
  }
  return chain;
}

inline std::uint64_t crt_combine(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2, std::uint64_t m2) {
  // Moduli are coprime; solve x = r1 mod m1, x = r2 mod m2.
  const std::uint64_t inv = invmod(m1 % m2, m2);
  const std::uint64_t t = mulmod(submod(r2 % m2, r1 % m2, m2), inv, m2);
  return r1 + m1 * t;
}

}  // namespace detail

/// A prime p such that the reduction of f^k is irreducible mod p. SCAN walks
/// the odd primes in order; CRT builds the congruence class of p from
/// quadratic reciprocity (p = 3 mod 4, every prime factor of the other
/// entries a residue, one designated prime q a non-residue) and scans that
/// progression. Each returned prime passes both the residue chain and a
/// direct irreducibility test.
inline WitnessResult find_witness_prime(const QuadMapZ& f, unsigned k, WitnessStrategy strategy = WitnessStrategy::SCAN,
                                        std::uint64_t cap = kWitnessScanCap, const FactorBudget& budget = {},
                                        const Limits& limits = {}) {
  if (k < 1 || k > 10) throw std::invalid_argument("find_witness_prime: k must lie in [1, 10]");
  const auto seq = adjusted_sequence(f, k, limits);
  WitnessResult out;
  out.strategy = strategy;

  if (strategy == WitnessStrategy::SCAN) {
    std::uint64_t bound = 1 << 16;
    std::uint64_t last = 2;
    while (out.candidates_tried < cap) {
      for (std::uint64_t p : primes_up_to(bound)) {
        if (p <= last) continue;
        last = p;
        if (++out.candidates_tried > cap) break;
        if (detail::residue_chain_holds(seq, k, p)) {
          if (!detail::validate_witness(f, seq, k, p)) throw std::logic_error("find_witness_prime: inconsistent validation");
          out.prime = p;
          return out;
        }
      }
      bound *= 4;
    }
    out.candidates_tried = std::min(out.candidates_tried, cap);
    out.note = "no witness among the first " + std::to_string(cap) + " odd primes";
    return out;
  }

  // CRT: -f(gamma) = q c with q prime to the first power and q dividing no
  // later entry; the later entries must be negative.
  const Integer& first = seq[0];
  if (first <= 0) {
    out.note = "CRT hypotheses not met: -f(gamma) must be positive";
    return out;
  }
  for (unsigned i = 1; i < k; ++i) {
    if (seq[i] >= 0) {
      out.note = "CRT hypotheses not met: f^" + std::to_string(i + 1) + "(gamma) must be negative";
      return out;
    }
  }
  const Factorization fz_first = factor(first, budget);
  if (!fz_first.complete()) {
    out.note = "CRT needs complete factorizations; -f(gamma) has cofactor " + to_string(fz_first.cofactor);
    return out;
  }
  std::optional<Integer> q;
  for (const auto& pe : fz_first.factors) {
    if (pe.exponent != 1) continue;
    bool clear = true;
    for (unsigned i = 1; i < k && clear; ++i) clear = !divides(pe.prime, seq[i]);
    if (clear) {
      q = pe.prime;
      break;
    }
  }
  if (!q) {
    out.note = "CRT hypotheses not met: no prime divides -f(gamma) exactly once while sparing later entries";
    return out;
  }
  std::vector<Integer> others;  // primes of c * a_1 * ... * a_k
  for (const auto& pe : fz_first.factors) {
    if (pe.prime != *q) others.push_back(pe.prime);
  }
  for (unsigned i = 1; i < k; ++i) {
    const Factorization fz = factor(seq[i], budget);
    if (!fz.complete()) {
      out.note = "CRT needs complete factorizations; f^" + std::to_string(i + 1) + "(gamma) has cofactor " + to_string(fz.cofactor);
      return out;
    }
    for (const auto& pe : fz.factors) others.push_back(pe.prime);
  }
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());

  const bool two_residue = !others.empty() && others.front() == 2;
  const bool two_is_q = *q == 2;
  std::uint64_t modulus = (two_residue || two_is_q) ? 8 : 4;
  std::uint64_t residue = two_residue ? 7 : (two_is_q ? 3 : 3);
  auto add_condition = [&](const Integer& r, int want) -> bool {
    if (!fits_u64(r)) return false;
    const std::uint64_t rr = to_u64(r);
    // With p = 3 mod 4, reciprocity gives (r/p) = (p/r) (-1/r).
    const int minus_one = (rr % 4 == 1) ? 1 : -1;
    const int target = want * minus_one;
    std::uint64_t a = 1;
    while (legendre_u64(a, rr) != target) ++a;
    const unsigned __int128 next = static_cast<unsigned __int128>(modulus) * rr;
    if (next >> 63) return false;
    residue = detail::crt_combine(residue, modulus, a, rr);
    modulus = static_cast<std::uint64_t>(next);
    residue %= modulus;
    return true;
  };
  for (const auto& r : others) {
    if (r == 2) continue;
    if (!add_condition(r, +1)) {
      out.note = "CRT modulus exceeds 2^63";
      return out;
    }
  }
  if (!two_is_q && !add_condition(*q, -1)) {
    out.note = "CRT modulus exceeds 2^63";
    return out;
  }
  out.modulus = modulus;
  out.residue = residue;
  for (std::uint64_t p = residue; out.candidates_tried < cap; p += modulus) {
    if (p > (std::uint64_t{1} << 62)) break;
    if (!is_prime_u64(p)) continue;
    ++out.candidates_tried;
    if (!detail::residue_chain_holds(seq, k, p)) {
      throw std::logic_error("find_witness_prime: CRT progression prime " + std::to_string(p) + " fails the residue chain");
    }
    if (!detail::validate_witness(f, seq, k, p)) throw std::logic_error("find_witness_prime: inconsistent validation");
    out.prime = p;
    return out;
  }
  out.note = "no prime in the CRT progression within the cap";
  return out;
}

struct PrimexParameters {
  Integer m;
  Integer q;
};

inline PrimexParameters reallast_parameters(unsigned n) {
  if (n < 2) throw std::invalid_argument("reallast_parameters: n must be at least 2");
  if (n == 2) return {3, 5};
  if (n % 3 == 1) return {4, 3};
  return {1, 3};
}

struct SpotCheck {
  std::uint64_t p = 0;
  bool criterion_reducible = false;           // residue chain through level n fails
  std::optional<bool> oracle_reducible;       // direct factorization, when 2^n is small enough
};

struct PrimitiveExample {
  unsigned n = 0;
  QuadMapZ map;
  Integer q;
  StabilityCertificate certificate;
  Integer fn_gamma;  // f^n(gamma), a perfect square
  WitnessResult witness;
  std::optional<WitnessResult> crt_witness;
  std::vector<SpotCheck> spot_checks;
  std::string note;
};

inline constexpr unsigned kSpotCheckOracleLevel = 6;

/// gamma = -2 f0^{n-1}(0) + 1 - m with (m, q) from reallast_parameters; every
/// claimed property is recomputed and a failure is an internal error.
inline PrimitiveExample construct_primex(unsigned n, std::uint64_t spot_bound = 500, const FactorBudget& budget = {},
                                         const Limits& limits = {}) {
  if (n < 2) throw HypothesisViolation("n", "primitive examples need n >= 2");
  check_depth(n, limits);
  const auto [m, q] = reallast_parameters(n);
  const auto base = base_orbit(m, n);
  const Integer b = base[n - 2];
  PrimitiveExample ex;
  ex.n = n;
  ex.q = q;
  ex.map = QuadMapZ{-2 * b + 1 - m, m};
  const CriticalOrbit o = orbit(ex.map, n, limits);

  auto fail = [&](const std::string& what) { throw std::logic_error("construct_primex(" + std::to_string(n) + "): " + what); };
  const Integer first = -o.value(1);
  if (valuation(first, q) != 1) fail("q does not divide -f(gamma) exactly once");
  for (unsigned i = 2; i <= n; ++i) {
    if (divides(q, o.value(i))) fail("q divides f^" + std::to_string(i) + "(gamma)");
  }
  for (unsigned i = 2; i + 1 <= n; ++i) {
    if (o.value(i) >= 0) fail("f^" + std::to_string(i) + "(gamma) is not negative");
  }
  ex.certificate = check_numfield_Q(ex.map);
  if (ex.certificate.kind != CertificateKind::NUMFIELD_Q) fail("no stability certificate");
  ex.fn_gamma = o.value(n);
  if (ex.fn_gamma != (b - 1) * (b - 1)) fail("f^n(gamma) differs from (f0^{n-1}(0) - 1)^2");

  if (n - 1 <= 10) {
    ex.witness = find_witness_prime(ex.map, n - 1, WitnessStrategy::SCAN, kWitnessScanCap, budget, limits);
    ex.crt_witness = find_witness_prime(ex.map, n - 1, WitnessStrategy::CRT, kWitnessScanCap, budget, limits);
  } else {
    ex.note = "witness search skipped: degree 2^" + std::to_string(n - 1) + " exceeds the oracle cap";
  }

  std::mt19937_64 rng(0x5eed);
  for (std::uint64_t p : primes_up_to(spot_bound)) {
    if (p == 2) continue;
    SpotCheck sc;
    sc.p = p;
    sc.criterion_reducible = check_deddom_reducibility(ex.map, n, from_u64(p), limits);
    if (!sc.criterion_reducible) fail("f^n is not reducible modulo " + std::to_string(p));
    if (n <= kSpotCheckOracleLevel) {
      sc.oracle_reducible = !is_irreducible_mod(iterate_mod(reduce(ex.map, p), n));
      if (!*sc.oracle_reducible) fail("oracle finds f^n irreducible modulo " + std::to_string(p));
    }
    ex.spot_checks.push_back(sc);
  }
  return ex;
}

struct MinimalityCandidate {
  Integer m;
  Integer gamma;
  CertificateKind certificate = CertificateKind::NONE;
  std::optional<std::uint64_t> witness_prime;
};

struct MinimalityReport {
  std::vector<MinimalityCandidate> survivors;  // ascending by |gamma|, then m, then gamma
  std::optional<Integer> min_abs_gamma;
};

/// Scan |m| <= m_bound (m outside {-2, -1, 0}) over gamma = +-2 f0^{n-1}(0) + 1 - m.
/// A survivor has f^n(gamma) square, a stability certificate, and a prime
/// (found within witness_cap) where f^{n-1} stays irreducible.
inline MinimalityReport minimality_scan(unsigned n, const Integer& m_bound, std::uint64_t witness_cap = 4096,
                                        const FactorBudget& budget = {}, const Limits& limits = {}) {
  if (n < 2) throw std::invalid_argument("minimality_scan: n must be at least 2");
  check_depth(n, limits);
  MinimalityReport out;
  for (Integer m = -m_bound; m <= m_bound; ++m) {
    if (m >= -2 && m <= 0) continue;
    const auto base = base_orbit(m, n);
    const Integer b = base[n - 2];
    for (int sign : {-1, 1}) {
      MinimalityCandidate c;
      c.m = m;
      c.gamma = sign * 2 * b + 1 - m;
      const QuadMapZ f{c.gamma, m};
      if (!is_square_integer(base[n - 1] + c.gamma)) continue;
      auto cert = check_numfield_Q(f);
      if (cert.kind == CertificateKind::NONE) cert = check_deddomstab(f, budget);
      if (cert.kind == CertificateKind::NONE) continue;
      c.certificate = cert.kind;
      const auto w = find_witness_prime(f, n - 1, WitnessStrategy::SCAN, witness_cap, budget, limits);
      if (!w.prime) continue;
      c.witness_prime = w.prime;
      out.survivors.push_back(c);
    }
  }
  std::sort(out.survivors.begin(), out.survivors.end(), [](const MinimalityCandidate& x, const MinimalityCandidate& y) {
    const Integer ax = abs(x.gamma), ay = abs(y.gamma);
    if (ax != ay) return ax < ay;
    if (x.m != y.m) return x.m < y.m;
    return x.gamma < y.gamma;
  });
  if (!out.survivors.empty()) out.min_abs_gamma = abs(out.survivors.front().gamma);
  return out;
}

}  // namespace iterquad
