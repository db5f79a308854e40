#pragma once

// Miller-Rabin. Deterministic below 2^64 (the first twelve prime bases are a
// proven witness set there); 40 pseudo-random strong-probable-prime rounds
// above, drawn from a fixed-seed generator so results are reproducible.

#include <array>
#include <cstdint>
#include <random>

#include "iterquad/integer.hpp"
#include "iterquad/modular.hpp"

namespace iterquad {

inline constexpr int kProbablePrimeRounds = 40;

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline bool strong_probable_prime(const Integer& n, const Integer& a, const Integer& d, unsigned long s) {
  const Integer n1 = n - 1;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Primality of |n| is not implied: negative inputs are not prime.
inline bool is_prime(const Integer& n, int rounds = kProbablePrimeRounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Integer d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  if (!detail::strong_probable_prime(n, 2, d, s)) return false;

  // Seed from the low limb of n so the base sequence is a pure function of n.
  std::mt19937_64 rng(mpz_getlimbn(n.get_mpz_t(), 0) ^ 0x9E3779B97F4A7C15ull);
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  const Integer span = n - 3;
  for (int i = 0; i < rounds; ++i) {
    const Integer a = gen.get_z_range(span) + 2;
    if (!detail::strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

}  // namespace iterquad
