#pragma once

// Bounded integer factorization: trial division, then Pollard rho with Brent's
// cycle detection. Whatever the budget cannot split is returned as an explicit
// cofactor; listed primes are always certified by is_prime().

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "iterquad/integer.hpp"
#include "iterquad/modular.hpp"
#include "iterquad/primality.hpp"
#include "iterquad/sieve.hpp"

namespace iterquad {

struct FactorBudget {
  Integer trial_bound{1000000};
  std::uint64_t rho_iterations{10'000'000};
  std::chrono::milliseconds time_cap{60'000};

  void validate() const {
    if (trial_bound <= 0 || rho_iterations == 0 || time_cap.count() <= 0) {
      throw std::invalid_argument("FactorBudget: all limits must be positive");
    }
  }
};

struct PrimePower {
  Integer prime;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // ascending primes
  Integer cofactor{1};              // 1, or an unsplit composite (> 1)

  bool complete() const { return cofactor == 1; }

  Integer product() const {
    Integer r = cofactor;
    for (const auto& f : factors) r *= pow(f.prime, static_cast<unsigned long>(f.exponent));
    return sign < 0 ? Integer(-r) : r;
  }
};

namespace detail {

inline const std::vector<std::uint32_t>& trial_primes(std::uint64_t limit) {
  static const std::vector<std::uint32_t> standard = small_primes(1'000'000);
  if (limit <= 1'000'000) return standard;
  thread_local std::uint64_t cached_limit = 0;
  thread_local std::vector<std::uint32_t> cached;
  if (cached_limit != limit) {
    cached = small_primes(limit);
    cached_limit = limit;
  }
  return cached;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds cap) : end_(std::chrono::steady_clock::now() + cap) {}
  bool passed() const { return std::chrono::steady_clock::now() > end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

// Brent's variant of Pollard rho on x -> x^2 + c mod n. Returns a nontrivial
// divisor or 0 when the iteration allowance runs out.
inline std::uint64_t brent_u64(std::uint64_t n, std::uint64_t& iterations_left, const Deadline& deadline) {
  if (n % 2 == 0) return 2;
  constexpr std::uint64_t kBatch = 128;
  for (std::uint64_t c = 1; c < 64 && iterations_left > 0; ++c) {
    auto step = [&](std::uint64_t v) { return addmod(mulmod(v, v, n), c, n); };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        if (iterations_left <= lim) {
          iterations_left = 0;
          break;
        }
        iterations_left -= lim;
      }
      if (iterations_left == 0 || deadline.passed()) break;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (deadline.passed()) break;
  }
  return 0;
}

inline Integer brent_big(const Integer& n, std::uint64_t& iterations_left, const Deadline& deadline) {
  constexpr std::uint64_t kBatch = 128;
  Integer y, x, ys, q, g, t;
  for (unsigned long c = 1; c < 64 && iterations_left > 0; ++c) {
    auto step = [&](Integer& v) {
      mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
      mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    y = 2;
    q = 1;
    g = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          t = x - y;
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        if (iterations_left <= lim) {
          iterations_left = 0;
          break;
        }
        iterations_left -= lim;
      }
      if (iterations_left == 0 || deadline.passed()) break;
    }
    if (g == n) {
      do {
        step(ys);
        t = x - ys;
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (deadline.passed()) break;
  }
  return 0;
}

}  // namespace detail

/// Factor x != 0 within the budget. The result always re-multiplies to x.
inline Factorization factor(const Integer& x, const FactorBudget& budget = {}) {
  if (x == 0) throw std::domain_error("factor: zero has no factorization");
  budget.validate();
  Factorization out;
  out.sign = x < 0 ? -1 : 1;
  Integer n = abs(x);
  std::map<Integer, int> found;

  const std::uint64_t trial_limit = fits_u64(budget.trial_bound) ? to_u64(budget.trial_bound) : ~std::uint64_t{0};
  const auto& primes = detail::trial_primes(std::min<std::uint64_t>(trial_limit, 100'000'000));
  for (std::uint32_t p : primes) {
    if (p > trial_limit) break;
    if (Integer(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] += e;
    }
  }

  detail::Deadline deadline(budget.time_cap);
  Integer unsplit = 1;
  // Work list of (value, multiplicity) still to be resolved.
  std::vector<std::pair<Integer, int>> work;
  if (n > 1) work.emplace_back(n, 1);
  while (!work.empty()) {
    auto [v, mult] = work.back();
    work.pop_back();
    if (v == 1) continue;
    if (is_prime(v)) {
      found[v] += mult;
      continue;
    }
    if (mpz_perfect_square_p(v.get_mpz_t())) {
      work.emplace_back(isqrt(v), 2 * mult);
      continue;
    }
    std::uint64_t allowance = budget.rho_iterations;
    Integer d;
    if (fits_u64(v) && v < (Integer(1) << 63)) {
      d = from_u64(detail::brent_u64(to_u64(v), allowance, deadline));
    } else {
      d = detail::brent_big(v, allowance, deadline);
    }
    if (d == 0) {
      unsplit *= pow(v, static_cast<unsigned long>(mult));
      continue;
    }
    Integer rest = v / d;
    // Split off shared powers so the two parts are coprime-ish before recursing.
    const Integer g = gcd(d, rest);
    if (g > 1 && g != d) {
      work.emplace_back(g, mult);
      work.emplace_back(d / g, mult);
      work.emplace_back(rest, mult);
    } else {
      work.emplace_back(d, mult);
      work.emplace_back(rest, mult);
    }
  }

  for (auto& [p, e] : found) out.factors.push_back({p, e});
  out.cofactor = unsplit;
  return out;
}

}  // namespace iterquad
