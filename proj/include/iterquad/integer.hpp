#pragma once

// Exact integer and rational types. All orbit values live here; they grow
// doubly exponentially, so nothing in the library truncates to machine words
// except where a modulus is known to fit.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iterquad {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  Integer out;
  if (out.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  return out;
}

inline std::string to_string(const Integer& x) { return x.get_str(10); }

inline std::string to_string(const Rational& x) { return x.get_str(10); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool fits_u64(const Integer& x) { return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer& x) {
  if (!fits_u64(x)) throw std::out_of_range("integer does not fit in 64 bits: " + to_string(x));
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof out, 0, 0, x.get_mpz_t());
  return count == 0 ? 0 : out;
}

inline Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

inline Integer from_i64(std::int64_t v) {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

/// Least non-negative residue of x modulo p.
inline std::uint64_t mod_u64(const Integer& x, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8, "LP64 target expected");
  if (p == 0) throw std::domain_error("modulus zero");
  return static_cast<std::uint64_t>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p)));
}

/// Floor of the square root of a non-negative integer.
inline Integer isqrt(const Integer& x) {
  if (x < 0) throw std::domain_error("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }

/// p-adic valuation of a nonzero integer; p >= 2.
inline int valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::domain_error("valuation base must be >= 2");
  Integer t = x;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace iterquad
