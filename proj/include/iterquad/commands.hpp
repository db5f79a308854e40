#pragma once

// End-to-end runs behind the command-line tool: build an object, recompute
// every claim about it, and package the result for reporting. A claim that
// fails to recompute raises std::logic_error.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iterquad/config.hpp"
#include "iterquad/funcfield.hpp"
#include "iterquad/modpoly.hpp"
#include "iterquad/quadmap.hpp"
#include "iterquad/report.hpp"
#include "iterquad/sieve.hpp"
#include "iterquad/squares.hpp"

namespace iterquad {

inline constexpr std::uint64_t kSpotPrimeBound = 500;
inline constexpr unsigned kSpecializationMaxJ = 4;
inline constexpr std::uint64_t kSpecializationMaxPoints = 4096;

/// Spot checks at every odd prime p <= spot_bound. The residue chain must
/// report f^n reducible; for n <= kSpotCheckOracleLevel a direct Rabin test
/// over F_p must agree.
inline std::vector<report::DeddomSample> deddom_samples(const QuadMapZ& f, unsigned n, std::uint64_t spot_bound,
                                                       const Config& cfg) {
  std::vector<report::DeddomSample> out;
  const bool oracle = n <= kSpotCheckOracleLevel && (std::size_t{1} << n) <= cfg.degree_cap;
  for (std::uint64_t p : primes_up_to(spot_bound)) {
    if (p == 2) continue;
    report::DeddomSample s;
    s.p = p;
    s.criterion_reducible = check_deddom_reducibility(f, n, from_u64(p), cfg.limits());
    if (oracle) {
      s.oracle_reducible = !is_irreducible_mod(iterate_mod(reduce(f, p), n, cfg.degree_cap));
      if (*s.oracle_reducible != s.criterion_reducible) {
        throw std::logic_error("deddom criterion and direct factorization disagree at p = " + std::to_string(p));
      }
    }
    out.push_back(s);
  }
  return out;
}

/// Rational construction with f^n(gamma) = s, a perfect square. When s is
/// absent the least admissible value is used.
inline report::QConstruction run_construct_q(unsigned n, const Integer& m, const std::optional<Integer>& s_in, const Config& cfg,
                                             std::uint64_t spot_bound = kSpotPrimeBound) {
  const Limits limits = cfg.limits();
  report::QConstruction c;
  c.n = n;
  c.m = m;
  c.s = s_in ? *s_in : suggest_s(n, m, 1, limits).at(0);
  c.map = construct_qcor(n, m, c.s, limits);
  c.certificates.push_back(check_numfield_Q(c.map));
  c.certificates.push_back(check_deddomstab(c.map, cfg.budget));
  for (const auto& cert : c.certificates) {
    if (cert.kind != CertificateKind::NONE && !recheck(cert, c.map)) throw std::logic_error("stability certificate fails recheck");
  }
  c.adjusted_sequence = adjusted_sequence(c.map, n, limits);
  if (!is_square_integer(c.adjusted_sequence.back())) throw std::logic_error("f^n(gamma) is not a perfect square");
  c.altfund = check_altfund(c.map, n, limits);
  c.samples = deddom_samples(c.map, n, spot_bound, cfg);
  for (const auto& s : c.samples) {
    if (!s.criterion_reducible) throw std::logic_error("f^n is irreducible modulo " + std::to_string(s.p));
  }
  return c;
}

/// Parse "c0,c1,..." (ascending powers of t) into a polynomial over F. Each
/// entry is an element index; for a prime field any integer is reduced mod p.
inline FqPoly parse_fq_poly(const FqField& F, const std::string& text) {
  std::vector<FqField::Element> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Integer v = parse_integer(item);
    if (F.degree() == 1) {
      coeffs.push_back(F.element(mod_u64(v, F.characteristic())));
    } else {
      if (v < 0 || !fits_u64(v) || to_u64(v) >= F.order()) {
        throw std::invalid_argument("coefficient '" + item + "' is not an element index of F_" + std::to_string(F.order()));
      }
      coeffs.push_back(F.element(to_u64(v)));
    }
  }
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  return FqPoly(F, coeffs);
}

/// Exhaustive specialization over F_{p^j}: at every t = c without a pole the
/// specialized f^n must split, so the all-2^n cycle type never appears.
inline report::SpecializationCheck specialization_check(const QuadMapFq& f, unsigned n, unsigned j, const Config& cfg) {
  const FqField& small = f.m.field();
  const FqField big = FqField::make(small.characteristic(), j);
  const auto image = embedding(small, big);
  std::mt19937_64 rng(cfg.seed);
  report::SpecializationCheck out;
  out.j = j;
  const int full = 1 << n;
  for (std::uint64_t i = 0; i < big.order(); ++i) {
    const auto c = big.element(i);
    const bool pole = detail::evaluate_embedded(f.gamma.den(), image, big, c) == big.zero() ||
                      detail::evaluate_embedded(f.m.den(), image, big, c) == big.zero();
    if (pole) {
      ++out.poles;
      continue;
    }
    ++out.points;
    const auto degrees = specialize_and_factor(f, n, big, c, rng, cfg.factor_degree_cap);
    if (degrees.size() == 1 && degrees[0] == full) ++out.full_cycles;
  }
  return out;
}

inline report::FqConstruction run_construct_fq(std::uint64_t p, unsigned k, unsigned n, const std::string& m_num,
                                               const std::optional<std::string>& m_den, const Config& cfg) {
  const FqField F = FqField::make(p, k);
  const FqPoly num = parse_fq_poly(F, m_num);
  const FqPoly den = m_den ? parse_fq_poly(F, *m_den) : FqPoly::constant(F, F.one());
  if (den.is_zero()) throw HypothesisViolation("degree", "denominator of m must be nonzero");
  report::FqConstruction c{construct_ratffcor(n, FqRat(num, den), cfg.limits()), {}};
  if (n <= kSpotCheckOracleLevel && (std::size_t{1} << n) <= cfg.factor_degree_cap) {
    std::uint64_t order = 1;
    for (unsigned j = 1; j <= kSpecializationMaxJ; ++j) {
      order *= p;
      if (order > kSpecializationMaxPoints) break;
      if (j % k != 0) continue;
      auto s = specialization_check(c.result.map, n, j, cfg);
      if (s.full_cycles != 0) {
        throw std::logic_error("a specialization over F_" + std::to_string(order) + " keeps f^n irreducible");
      }
      c.specializations.push_back(s);
    }
  }
  return c;
}

/// Outcome of re-deriving a saved report from its own parameters.
struct VerifyOutcome {
  bool reproduced = true;
  std::vector<std::string> mismatches;
};

/// Rebuild a rational construction report from (n, m, s) and compare the
/// recomputed report field by field. Seeds and caps come from cfg.
inline VerifyOutcome verify_construction_report(const nlohmann::json& saved, const Config& cfg) {
  VerifyOutcome out;
  if (saved.value("kind", "") != "q") throw std::invalid_argument("verify: only rational construction reports are supported");
  const unsigned n = saved.at("n").get<unsigned>();
  const Integer m = parse_integer(saved.at("m").get<std::string>());
  const Integer s = parse_integer(saved.at("s").get<std::string>());
  const std::uint64_t bound = saved.at("deddom_check_sample").empty()
                                  ? 0
                                  : std::stoull(saved.at("deddom_check_sample").back().at("p").get<std::string>());
  const auto fresh = report::construction_json(run_construct_q(n, m, s, cfg, bound), cfg);
  for (const char* key : {"gamma", "map", "certificates", "adjusted_sequence", "altfund", "deddom_check_sample"}) {
    if (fresh.at(key) != saved.at(key)) {
      out.reproduced = false;
      out.mismatches.push_back(key);
    }
  }
  return out;
}

}  // namespace iterquad
