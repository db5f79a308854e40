#include <gtest/gtest.h>

#include <random>
#include <set>

#include "iterquad/f2.hpp"
#include "iterquad/factor.hpp"
#include "iterquad/integer.hpp"
#include "iterquad/primality.hpp"
#include "iterquad/quadmap.hpp"
#include "iterquad/sieve.hpp"
#include "iterquad/square_class.hpp"
#include "iterquad/squares.hpp"

using namespace iterquad;

namespace {

// Independent oracles: naive arithmetic on machine integers.
bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int euler_legendre(std::int64_t a, std::int64_t p) {
  std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

Integer random_integer(std::mt19937_64& rng, unsigned digits) {
  std::string s(1, static_cast<char>('1' + rng() % 9));
  for (unsigned i = 1; i < digits; ++i) s += static_cast<char>('0' + rng() % 10);
  return parse_integer(s);
}

}  // namespace

TEST(IsSquareInteger, Examples) {
  EXPECT_TRUE(is_square_integer(0));
  EXPECT_TRUE(is_square_integer(16));
  EXPECT_FALSE(is_square_integer(2));
  EXPECT_FALSE(is_square_integer(-4));
  const Integer a = base_orbit(1, 8).back();
  EXPECT_EQ(to_string(Integer(a + 1)), "44127887745906175987803");
  EXPECT_TRUE(is_square_integer((a + 1) * (a + 1)));
}

TEST(IsSquareInteger, SquaresAndNeighbours) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Integer x = random_integer(rng, 1 + rng() % 50);
    ASSERT_TRUE(is_square_integer(x * x));
    // strictly between x^2 and (x+1)^2 = x^2 + 2x + 1
    Integer k = 1 + (random_integer(rng, 1 + rng() % 50) % (2 * x));
    ASSERT_FALSE(is_square_integer(x * x + k)) << to_string(x) << " + " << to_string(k);
  }
}

TEST(IsSquareRational, Examples) {
  EXPECT_FALSE(is_square_rational(make_rational(1, 2)));
  EXPECT_TRUE(is_square_rational(make_rational(9, 4)));
  EXPECT_TRUE(is_square_rational(Rational(0)));
  EXPECT_FALSE(is_square_rational(make_rational(-1, 4)));
  EXPECT_EQ(*exact_sqrt(make_rational(18, 8)), make_rational(3, 2));
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(2, 7), 1);
  EXPECT_EQ(legendre(3, 7), -1);
  EXPECT_EQ(legendre(14, 7), 0);
  EXPECT_EQ(legendre(-1, 3), -1);
  EXPECT_THROW(legendre(3, 9), std::invalid_argument);
  EXPECT_THROW(legendre(3, 2), std::invalid_argument);
}

TEST(Legendre, MatchesEnumerationAndIsMultiplicative) {
  std::mt19937_64 rng(2);
  const auto primes = primes_up_to(400);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t p = static_cast<std::int64_t>(primes[1 + rng() % (primes.size() - 1)]);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 100000) - 50000;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 100000) - 50000;
    ASSERT_EQ(legendre(a, p), euler_legendre(a, p));
    ASSERT_EQ(legendre(Integer(a) * b, p), legendre(a, p) * legendre(b, p));
    ASSERT_EQ(legendre_u64(static_cast<std::uint64_t>(a + 50000), static_cast<std::uint64_t>(p)), euler_legendre(a + 50000, p));
  }
}

TEST(Legendre, MultiplicativeForLargePrimes) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 200) {
    Integer p = random_integer(rng, 30);
    if (!is_prime(p) || p % 2 == 0) continue;
    const Integer a = random_integer(rng, 40), b = random_integer(rng, 35);
    ASSERT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    ++checked;
  }
}

TEST(Primes, Examples) {
  EXPECT_EQ(primes_up_to(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(primes_up_to(100).size(), 25u);
  EXPECT_EQ(PrimeSieve(10000000).count(), 664579u);
}

TEST(Primes, SieveMatchesTrialDivision) {
  const auto ps = primes_up_to(20000);
  std::set<std::uint64_t> set(ps.begin(), ps.end());
  for (std::uint64_t n = 0; n <= 20000; ++n) ASSERT_EQ(set.count(n) == 1, naive_prime(n)) << n;
}

TEST(Primes, SegmentsPartitionTheRange) {
  const PrimeSieve small_span(100000, 4096);
  std::vector<std::uint64_t> joined;
  for (std::size_t i = 0; i < small_span.segment_count(); ++i) small_span.for_each_in_segment(i, [&](std::uint64_t p) { joined.push_back(p); });
  EXPECT_EQ(joined, primes_up_to(100000));
}

TEST(Primality, AgreesWithTrialDivisionAndKnownValues) {
  for (std::uint64_t n = 0; n < 50000; ++n) ASSERT_EQ(is_prime_u64(n), naive_prime(n)) << n;
  EXPECT_TRUE(is_prime_u64(18446744073709551557ull));  // largest prime below 2^64
  EXPECT_FALSE(is_prime_u64(3215031751ull));          // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_TRUE(is_prime(parse_integer("170141183460469231731687303715884105727")));  // 2^127 - 1
  EXPECT_FALSE(is_prime(parse_integer("170141183460469231731687303715884105729")));
}

TEST(Factor, Examples) {
  auto f677 = factor(677);
  ASSERT_EQ(f677.factors.size(), 1u);
  EXPECT_EQ(f677.factors[0].prime, 677);
  EXPECT_EQ(f677.factors[0].exponent, 1);
  EXPECT_TRUE(f677.complete());

  auto f = factor(-360);
  EXPECT_EQ(f.sign, -1);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0].prime, 2);
  EXPECT_EQ(f.factors[0].exponent, 3);
  EXPECT_EQ(f.factors[1].prime, 3);
  EXPECT_EQ(f.factors[1].exponent, 2);
  EXPECT_EQ(f.factors[2].prime, 5);
  EXPECT_EQ(f.factors[2].exponent, 1);

  // f0^6(0) for m = 1, and a trial-division oracle for it
  const Integer v = base_orbit(1, 6).back();
  EXPECT_EQ(v, 458330);
  auto fv = factor(v);
  EXPECT_TRUE(fv.complete());
  std::uint64_t rest = 458330;
  for (const auto& pe : fv.factors) {
    for (int e = 0; e < pe.exponent; ++e) {
      ASSERT_EQ(rest % to_u64(pe.prime), 0u);
      rest /= to_u64(pe.prime);
    }
    EXPECT_TRUE(naive_prime(to_u64(pe.prime)));
  }
  EXPECT_EQ(rest, 1u);
}

TEST(Factor, RoundTripIncludingSign) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Integer x = random_integer(rng, 1 + rng() % 24);
    if (rng() % 2) x = -x;
    const auto f = factor(x);
    ASSERT_EQ(f.product(), x);
    ASSERT_TRUE(f.complete());
    for (const auto& pe : f.factors) ASSERT_TRUE(is_prime(pe.prime));
  }
  // product of two 15-digit primes exercises the rho stage
  const Integer p = parse_integer("100000000000031"), q = parse_integer("100000000000067");
  const auto f = factor(p * q);
  ASSERT_TRUE(f.complete());
  EXPECT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.product(), p * q);
}

TEST(Factor, RejectsZeroAndHonoursBudget) {
  EXPECT_THROW(factor(0), std::domain_error);
  FactorBudget tiny;
  tiny.trial_bound = 100;
  tiny.rho_iterations = 10;
  const Integer p = parse_integer("1000000000000000003"), q = parse_integer("1000000000000000009");
  const auto f = factor(p * q, tiny);
  EXPECT_FALSE(f.complete());
  EXPECT_EQ(f.product(), p * q);
}

TEST(SquareClass, Examples) {
  auto c2 = square_class(2);
  EXPECT_EQ(c2.sign, 1);
  EXPECT_EQ(c2.support, (std::vector<Integer>{2}));
  auto c8 = square_class(-8);
  EXPECT_EQ(c8.sign, -1);
  EXPECT_EQ(c8.support, (std::vector<Integer>{2}));
  auto c45 = square_class(45);
  EXPECT_EQ(c45.sign, 1);
  EXPECT_EQ(c45.support, (std::vector<Integer>{5}));
  EXPECT_TRUE(square_class(36).is_identity());
}

TEST(SquareClass, InvariantUnderSquareFactors) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Integer x = random_integer(rng, 1 + rng() % 10);
    if (rng() % 2) x = -x;
    const Integer y = random_integer(rng, 1 + rng() % 6);
    const auto a = square_class(x), b = square_class(x * y * y);
    ASSERT_EQ(a.sign, b.sign);
    ASSERT_EQ(a.support, b.support);
    ASSERT_EQ(a.representative(), b.representative());
    ASSERT_TRUE(is_square_integer(x * a.representative()));
  }
}

namespace {

AffineSpanResult span_of(const std::vector<Integer>& xs) {
  std::vector<SquareClass> classes;
  for (const auto& x : xs) classes.push_back(square_class(x));
  const auto vecs = square_class_vectors(classes);
  return f2_solve_affine(vecs);
}

}  // namespace

TEST(F2SolveAffine, Examples) {
  auto r = span_of({2, -1, -2});
  EXPECT_EQ(r.rank, 2u);
  EXPECT_TRUE(r.origin_in_affine_span);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (std::vector<std::size_t>{0, 1, 2}));

  r = span_of({2});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_FALSE(r.origin_in_affine_span);

  r = span_of({2, 3, 6});
  EXPECT_EQ(r.rank, 2u);
  EXPECT_TRUE(r.origin_in_affine_span);
}

TEST(F2SolveAffine, WitnessIsOddAndMultipliesToASquare) {
  std::mt19937_64 rng(6);
  const std::vector<Integer> pool{-1, 2, 3, 5, 6, 7, 10, 11, 14, 15, -2, -3, -5, 12, 18, 20};
  int with_origin = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<Integer> xs;
    const std::size_t k = 1 + rng() % 6;
    for (std::size_t j = 0; j < k; ++j) xs.push_back(pool[rng() % pool.size()]);
    const auto r = span_of(xs);
    // brute force over all odd subsets
    bool brute = false;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      if (__builtin_popcount(mask) % 2 == 0) continue;
      Integer prod = 1;
      for (std::size_t j = 0; j < k; ++j)
        if (mask >> j & 1) prod *= xs[j];
      brute = brute || is_square_integer(prod);
    }
    ASSERT_EQ(r.origin_in_affine_span, brute);
    if (r.witness) {
      ++with_origin;
      ASSERT_EQ(r.witness->size() % 2, 1u);
      Integer prod = 1;
      for (auto j : *r.witness) prod *= xs[j];
      ASSERT_TRUE(is_square_integer(prod));
    }
  }
  EXPECT_GT(with_origin, 0);
}

TEST(Integer, ValuationAndHelpers) {
  EXPECT_EQ(valuation(48, 2), 4);
  EXPECT_EQ(valuation(-45, 3), 2);
  EXPECT_EQ(valuation(7, 3), 0);
  EXPECT_THROW(valuation(0, 3), std::domain_error);
  EXPECT_EQ(parse_integer("-0012"), -12);
  EXPECT_THROW(parse_integer("12a"), std::invalid_argument);
  EXPECT_EQ(mod_u64(-1, 7), 6u);
}
