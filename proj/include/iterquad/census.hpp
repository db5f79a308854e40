#pragma once

// Prime-by-prime behaviour of a fixed integer quadratic: orbits of the critical
// point modulo p, stability of the reduction, a parallel census over all primes
// up to a bound with per-segment checkpoints, the square-class span of the
// adjusted sequence, and the heuristic expected number of stable primes.

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "iterquad/f2.hpp"
#include "iterquad/modular.hpp"
#include "iterquad/quadmap.hpp"
#include "iterquad/sieve.hpp"
#include "iterquad/square_class.hpp"
#include "iterquad/squares.hpp"

namespace iterquad {

/// a_0 = gamma, a_i = f(a_{i-1}) modulo `modulus`; a_r = a_s with r minimal.
struct OrbitModP {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> values;  // a_0 .. a_{r-1}
  std::uint64_t tail_length = 0;      // s
  std::uint64_t cycle_length = 0;     // r - s

  std::uint64_t r() const { return tail_length + cycle_length; }
  /// a_i for any i >= 0, folding indices past r back onto the cycle.
  std::uint64_t at(std::uint64_t i) const {
    if (i < values.size()) return values[i];
    return values[tail_length + (i - tail_length) % cycle_length];
  }
};

namespace detail {

struct ReducedMap {
  std::uint64_t n, gamma, m;
  std::uint64_t step(std::uint64_t x) const {
    const std::uint64_t d = submod(x, gamma, n);
    return addmod(addmod(mulmod(d, d, n), gamma, n), m, n);
  }
};

inline ReducedMap reduced(const QuadMapZ& f, std::uint64_t n) { return {n, mod_u64(f.gamma, n), mod_u64(f.m, n)}; }

}  // namespace detail

inline constexpr std::uint64_t kDirectOrbitLimit = 1 << 20;

/// Orbit of the critical point modulo any n >= 2. Small moduli store every
/// value while iterating; larger ones locate the cycle with Brent's method
/// first and materialize afterwards.
inline OrbitModP orbit_mod(const QuadMapZ& f, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("orbit_mod: modulus must be at least 2");
  const auto g = detail::reduced(f, n);
  OrbitModP o;
  o.modulus = n;
  if (n <= kDirectOrbitLimit) {
    std::vector<std::int64_t> seen(n, -1);
    std::uint64_t x = g.gamma;
    for (std::uint64_t i = 0;; ++i) {
      if (seen[x] >= 0) {
        o.tail_length = static_cast<std::uint64_t>(seen[x]);
        o.cycle_length = i - o.tail_length;
        return o;
      }
      seen[x] = static_cast<std::int64_t>(i);
      o.values.push_back(x);
      x = g.step(x);
    }
  }
  // Brent: cycle length lambda, then tail length mu.
  std::uint64_t power = 1, lambda = 1;
  std::uint64_t tortoise = g.gamma, hare = g.step(g.gamma);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = g.step(hare);
    ++lambda;
  }
  std::uint64_t mu = 0;
  tortoise = hare = g.gamma;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = g.step(hare);
  while (tortoise != hare) {
    tortoise = g.step(tortoise);
    hare = g.step(hare);
    ++mu;
  }
  o.tail_length = mu;
  o.cycle_length = lambda;
  o.values.reserve(mu + lambda);
  std::uint64_t x = g.gamma;
  for (std::uint64_t i = 0; i < mu + lambda; ++i) {
    o.values.push_back(x);
    x = g.step(x);
  }
  return o;
}

inline OrbitModP orbit_mod_p(const QuadMapZ& f, std::uint64_t p) {
  if (p == 2 || !is_prime_u64(p)) throw std::invalid_argument("orbit_mod_p: p must be an odd prime");
  return orbit_mod(f, p);
}

struct StabilityVerdict {
  std::uint64_t p = 0;
  bool stable = false;
  std::optional<std::uint64_t> failing_index;  // 1 stands for -f(gamma)
};

/// Stable iff -f(gamma) and every a_i, i >= 2, are non-squares modulo p.
/// Indices 2..r+1 reach every value the orbit takes from a_2 on.
inline StabilityVerdict is_stable_mod_p(const QuadMapZ& f, std::uint64_t p, const OrbitModP& o) {
  StabilityVerdict v;
  v.p = p;
  if (legendre_u64(o.at(1) == 0 ? 0 : p - o.at(1), p) != -1) {
    v.failing_index = 1;
    return v;
  }
  for (std::uint64_t i = 2; i <= o.r() + 1; ++i) {
    if (legendre_u64(o.at(i), p) != -1) {
      v.failing_index = i;
      return v;
    }
  }
  (void)f;
  v.stable = true;
  return v;
}

inline StabilityVerdict is_stable_mod_p(const QuadMapZ& f, std::uint64_t p) { return is_stable_mod_p(f, p, orbit_mod_p(f, p)); }

struct CensusOptions {
  unsigned workers = 1;
  unsigned prefix_depth = 20;
  unsigned kill_depth = 25;
  std::uint64_t segment_span = std::uint64_t{1} << 22;
  std::optional<std::filesystem::path> checkpoint_dir;
  const std::atomic<bool>* cancel = nullptr;
};

struct CensusCandidate {
  std::uint64_t p = 0;
  std::optional<unsigned> kill_depth;  // first index in (prefix, kill] with a square
  bool stable = false;
  std::optional<std::uint64_t> failing_index;
  std::uint64_t tail_length = 0;
  std::uint64_t cycle_length = 0;
};

struct CensusReport {
  QuadMapZ map;
  std::uint64_t bound = 0;
  unsigned prefix_depth = 0;
  unsigned kill_depth = 0;
  std::vector<std::uint64_t> stable_primes;
  std::vector<CensusCandidate> candidates;
  std::uint64_t primes_scanned = 0;  // odd primes examined
  std::uint64_t segments_total = 0;
  std::uint64_t segments_done = 0;
  unsigned workers = 1;
  bool complete() const { return segments_done == segments_total; }
};

namespace detail {

struct SegmentResult {
  bool done = false;
  std::uint64_t primes = 0;
  std::vector<CensusCandidate> candidates;
};

inline nlohmann::json segment_to_json(const QuadMapZ& f, std::uint64_t bound, const CensusOptions& o, std::size_t idx,
                                      const SegmentResult& r) {
  nlohmann::json j;
  j["gamma"] = to_string(f.gamma);
  j["m"] = to_string(f.m);
  j["bound"] = bound;
  j["prefix_depth"] = o.prefix_depth;
  j["kill_depth"] = o.kill_depth;
  j["segment_span"] = o.segment_span;
  j["segment"] = idx;
  j["primes"] = r.primes;
  j["candidates"] = nlohmann::json::array();
  for (const auto& c : r.candidates) {
    j["candidates"].push_back({{"p", c.p}, {"kill_depth", c.kill_depth ? nlohmann::json(*c.kill_depth) : nlohmann::json()}});
  }
  return j;
}

inline std::optional<SegmentResult> load_segment(const std::filesystem::path& file, const QuadMapZ& f, std::uint64_t bound,
                                                 const CensusOptions& o, std::size_t idx) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // torn write from an interrupted run; recompute
  }
  if (j.value("gamma", "") != to_string(f.gamma) || j.value("m", "") != to_string(f.m) || j.value("bound", 0ULL) != bound ||
      j.value("prefix_depth", 0U) != o.prefix_depth || j.value("kill_depth", 0U) != o.kill_depth ||
      j.value("segment_span", 0ULL) != o.segment_span || j.value("segment", std::size_t{0}) != idx) {
    throw std::runtime_error("checkpoint " + file.string() + " belongs to a different census");
  }
  SegmentResult r;
  r.done = true;
  r.primes = j.at("primes").get<std::uint64_t>();
  for (const auto& c : j.at("candidates")) {
    CensusCandidate cc;
    cc.p = c.at("p").get<std::uint64_t>();
    if (!c.at("kill_depth").is_null()) cc.kill_depth = c.at("kill_depth").get<unsigned>();
    r.candidates.push_back(cc);
  }
  return r;
}

inline void store_segment(const std::filesystem::path& file, const nlohmann::json& j) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

// Prefix test for one prime: the first `prefix` entries of the adjusted
// sequence are nonzero non-residues. Survivors continue to `kill`.
inline std::optional<CensusCandidate> screen_prime(const QuadMapZ& f, std::uint64_t p, unsigned prefix, unsigned kill) {
  const auto g = reduced(f, p);
  std::uint64_t a = g.step(g.gamma);  // f(gamma)
  if (legendre_u64(a == 0 ? 0 : p - a, p) != -1) return std::nullopt;
  for (unsigned i = 2; i <= prefix; ++i) {
    a = g.step(a);
    if (legendre_u64(a, p) != -1) return std::nullopt;
  }
  CensusCandidate c;
  c.p = p;
  for (unsigned i = prefix + 1; i <= kill; ++i) {
    a = g.step(a);
    if (legendre_u64(a, p) != -1) {
      c.kill_depth = i;
      break;
    }
  }
  return c;
}

}  // namespace detail

/// All odd primes p <= bound split into fixed segments; each segment is an
/// independent unit of work, so the report does not depend on the number of
/// workers. Candidates are resolved by the full orbit test afterwards.
inline CensusReport census_scan(const QuadMapZ& f, std::uint64_t bound, const CensusOptions& opt = {}) {
  if (bound < 3) throw std::invalid_argument("census_scan: bound must be at least 3");
  if (opt.prefix_depth < 1 || opt.kill_depth < opt.prefix_depth) throw std::invalid_argument("census_scan: need 1 <= prefix <= kill");
  const PrimeSieve sieve(bound, opt.segment_span);
  const std::size_t nseg = sieve.segment_count();
  std::vector<detail::SegmentResult> results(nseg);
  if (opt.checkpoint_dir) {
    std::filesystem::create_directories(*opt.checkpoint_dir);
    for (std::size_t i = 0; i < nseg; ++i) {
      auto loaded = detail::load_segment(*opt.checkpoint_dir / ("segment_" + std::to_string(i) + ".json"), f, bound, opt, i);
      if (loaded) results[i] = std::move(*loaded);
    }
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      while (true) {
        if (opt.cancel && opt.cancel->load()) return;
        const std::size_t i = next.fetch_add(1);
        if (i >= nseg) return;
        if (results[i].done) continue;
        detail::SegmentResult r;
        sieve.for_each_in_segment(i, [&](std::uint64_t p) {
          if (p == 2) return;
          ++r.primes;
          if (auto c = detail::screen_prime(f, p, opt.prefix_depth, opt.kill_depth)) r.candidates.push_back(*c);
        });
        r.done = true;
        if (opt.checkpoint_dir) {
          detail::store_segment(*opt.checkpoint_dir / ("segment_" + std::to_string(i) + ".json"),
                                detail::segment_to_json(f, bound, opt, i, r));
        }
        results[i] = std::move(r);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  const unsigned nw = std::max(1u, opt.workers);
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < nw; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  CensusReport rep;
  rep.map = f;
  rep.bound = bound;
  rep.prefix_depth = opt.prefix_depth;
  rep.kill_depth = opt.kill_depth;
  rep.segments_total = nseg;
  rep.workers = nw;
  for (auto& r : results) {
    if (!r.done) continue;
    ++rep.segments_done;
    rep.primes_scanned += r.primes;
    for (auto& c : r.candidates) {
      const OrbitModP o = orbit_mod_p(f, c.p);
      const StabilityVerdict v = is_stable_mod_p(f, c.p, o);
      c.stable = v.stable;
      c.failing_index = v.failing_index;
      c.tail_length = o.tail_length;
      c.cycle_length = o.cycle_length;
      if (c.stable) rep.stable_primes.push_back(c.p);
      rep.candidates.push_back(c);
    }
  }
  return rep;
}

struct SpanReport {
  unsigned k = 0;
  std::optional<unsigned> zero_index;  // some S_i = 0: reducible modulo every prime
  std::size_t rank = 0;
  Integer affine_span_size{0};
  bool origin_in_affine_span = false;
  std::vector<unsigned> witness;                 // 1-based indices of an odd subset with square product
  std::optional<Rational> predicted_density;     // 2^{-rank} when the affine span avoids the origin
  std::vector<unsigned> unknown_cofactor_indices;
  bool prefix_based = true;
  std::vector<Integer> elements;  // S_1..S_k
};

/// Square-class span of the first k members of the adjusted sequence.
inline SpanReport span_analysis(const QuadMapZ& f, unsigned k, const FactorBudget& budget = {}, const Limits& limits = {}) {
  if (k < 1) throw std::invalid_argument("span_analysis: k must be at least 1");
  const CriticalOrbit o = orbit(f, k, limits);
  SpanReport rep;
  rep.k = k;
  rep.elements = adjusted_sequence(o);
  // An eventually periodic base orbit makes S finite; once a repeat shows up
  // inside the prefix, the prefix already contains all of S.
  for (unsigned i = 1; i < k && rep.prefix_based; ++i) {
    for (unsigned j = 0; j < i; ++j) {
      if (o.base[i] == o.base[j]) {
        rep.prefix_based = false;
        break;
      }
    }
  }
  std::vector<SquareClass> classes;
  std::vector<unsigned> used;
  for (unsigned i = 1; i <= k; ++i) {
    const Integer& s = rep.elements[i - 1];
    if (s == 0) {
      if (!rep.zero_index) rep.zero_index = i;
      continue;
    }
    SquareClass sc = square_class(s, budget);
    if (!sc.cofactor_known) {
      rep.unknown_cofactor_indices.push_back(i);
      continue;
    }
    classes.push_back(std::move(sc));
    used.push_back(i);
  }
  if (!classes.empty()) {
    const auto vectors = square_class_vectors(classes);
    const auto res = f2_solve_affine(vectors);
    rep.rank = res.rank;
    rep.origin_in_affine_span = res.origin_in_affine_span;
    if (res.witness) {
      for (auto idx : *res.witness) rep.witness.push_back(used[idx]);
    }
  }
  if (rep.origin_in_affine_span) {
    rep.affine_span_size = pow(Integer(2), rep.rank);
  } else if (rep.rank > 0) {
    rep.affine_span_size = pow(Integer(2), rep.rank - 1);
  }
  if (!rep.zero_index && !rep.origin_in_affine_span && rep.rank > 0) {
    rep.predicted_density = Rational(1, pow(Integer(2), rep.rank));
  }
  return rep;
}

struct TailCheck {
  std::uint64_t p = 0;
  bool stable = false;
  std::uint64_t tail_length = 0;
  std::uint64_t pre_cycle_value = 0;  // a_{r-1}
  bool holds = true;                  // vacuous for unstable primes
};

/// For x^2 + 1: a stable prime has an orbit of 0 with tail length 2, and the
/// value just before the cycle closes is -1.
inline std::vector<TailCheck> tail_length_property(const std::vector<std::uint64_t>& primes) {
  const QuadMapZ f{0, 1};
  std::vector<TailCheck> out;
  for (std::uint64_t p : primes) {
    const OrbitModP o = orbit_mod_p(f, p);
    TailCheck t;
    t.p = p;
    t.stable = is_stable_mod_p(f, p, o).stable;
    t.tail_length = o.tail_length;
    t.pre_cycle_value = o.values[o.r() - 1];
    if (t.stable) t.holds = t.tail_length == 2 && t.pre_cycle_value == p - 1;
    out.push_back(t);
  }
  return out;
}

struct PrescreenReport {
  unsigned depth = 0;
  std::vector<std::uint64_t> primes;         // odd p with f^n(0) = -1 mod p for some n <= depth
  std::vector<std::uint64_t> primes_3mod4;
  std::vector<unsigned> first_level;         // matching n for each entry of primes
};

/// Necessary condition for stability of x^2 + 1 at p: p divides some
/// f^n(0) + 1 = g^n(1) with g(x) = (x - 1)^2 + 2.
inline PrescreenReport prescreen_g_orbit(std::uint64_t bound, unsigned depth) {
  PrescreenReport rep;
  rep.depth = depth;
  PrimeSieve(bound).for_each([&](std::uint64_t p) {
    if (p == 2) return;
    std::uint64_t a = 0;
    for (unsigned n = 1; n <= depth; ++n) {
      a = addmod(mulmod(a, a, p), 1, p);
      if (a == p - 1) {
        rep.primes.push_back(p);
        rep.first_level.push_back(n);
        if (p % 4 == 3) rep.primes_3mod4.push_back(p);
        return;
      }
    }
  });
  return rep;
}

struct HeuristicSum {
  std::uint64_t bound = 0;
  std::string partial_sum;        // 50 significant digits
  std::uint64_t evaluated_up_to = 0;  // largest prime whose term was evaluated
  std::string truncation_bound;   // majorant for skipped terms p <= bound with sqrt(p) > cutoff
  std::string tail_bound;         // majorant for all terms p > bound
};

inline constexpr unsigned kHeuristicCutoff = 230;

namespace detail {

// sum_{i >= a} (2i + 1) / 2^i = (2a + 3) 2^{1-a}, formatted with 6 digits.
inline std::string block_majorant(std::uint64_t a) {
  mpfr_t r;
  mpfr_init2(r, 200);
  mpfr_set_ui(r, 2 * a + 3, MPFR_RNDU);
  mpfr_mul_2si(r, r, 1 - static_cast<long>(a), MPFR_RNDU);
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.6Re", r);
  mpfr_clear(r);
  return buf;
}

}  // namespace detail

/// sum over primes p <= bound of 2^{-sqrt(p)} at 200-bit precision.
inline HeuristicSum heuristic_sum(std::uint64_t bound) {
  if (bound < 2) throw std::invalid_argument("heuristic_sum: bound must be at least 2");
  HeuristicSum h;
  h.bound = bound;
  const std::uint64_t cutoff_p = std::uint64_t{kHeuristicCutoff} * kHeuristicCutoff;
  const std::uint64_t eval_bound = std::min(bound, cutoff_p);
  mpfr_t sum, term;
  mpfr_init2(sum, 200);
  mpfr_init2(term, 200);
  mpfr_set_zero(sum, 1);
  for (std::uint64_t p : primes_up_to(eval_bound)) {
    mpfr_set_ui(term, p, MPFR_RNDN);
    mpfr_sqrt(term, term, MPFR_RNDN);
    mpfr_neg(term, term, MPFR_RNDN);
    mpfr_exp2(term, term, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    h.evaluated_up_to = p;
  }
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.49Re", sum);
  h.partial_sum = buf;
  mpfr_clear(sum);
  mpfr_clear(term);
  h.truncation_bound = bound > cutoff_p ? detail::block_majorant(kHeuristicCutoff) : "0";
  h.tail_bound = detail::block_majorant(detail::isqrt_u64(bound + 1));
  return h;
}

}  // namespace iterquad
