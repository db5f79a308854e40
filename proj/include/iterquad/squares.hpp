#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "iterquad/integer.hpp"
#include "iterquad/modular.hpp"
#include "iterquad/primality.hpp"

namespace iterquad {

inline std::optional<Integer> exact_sqrt(const Integer& x) {
  if (x < 0) return std::nullopt;
  Integer r = isqrt(x);
  if (r * r != x) return std::nullopt;
  return r;
}

inline bool is_square_integer(const Integer& x) { return exact_sqrt(x).has_value(); }

/// Square root of a rational square (num and den both squares, x >= 0).
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  auto n = exact_sqrt(Integer(c.get_num()));
  if (!n) return std::nullopt;
  auto d = exact_sqrt(Integer(c.get_den()));
  if (!d) return std::nullopt;
  return make_rational(*n, *d);
}

inline bool is_square_rational(const Rational& x) { return exact_sqrt(x).has_value(); }

/// Legendre symbol (a/p) for an odd prime p. The primality of p is checked.
inline int legendre(const Integer& a, const Integer& p) {
  if (p <= 2 || mpz_even_p(p.get_mpz_t())) throw std::invalid_argument("legendre: modulus must be an odd prime");
  if (!is_prime(p)) throw std::invalid_argument("legendre: modulus is not prime: " + to_string(p));
  if (fits_u64(p)) {
    const std::uint64_t pp = to_u64(p);
    const std::uint64_t r = mod_u64(a, pp);
    if (r == 0) return 0;
    // Euler's criterion.
    return powmod(r, (pp - 1) / 2, pp) == 1 ? 1 : -1;
  }
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

/// Legendre symbol for a word-sized odd prime; no primality check.
inline int legendre_u64(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return jacobi(a, p);
}

}  // namespace iterquad
