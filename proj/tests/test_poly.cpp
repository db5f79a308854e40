#include <gtest/gtest.h>

#include <random>

#include "iterquad/fq_field.hpp"
#include "iterquad/poly.hpp"
#include "iterquad/poly_factor.hpp"
#include "iterquad/prime_field.hpp"

using namespace iterquad;

namespace {

template <FiniteField F>
Poly<F> random_poly(const F& f, int degree, std::mt19937_64& rng, bool monic_lead = true) {
  std::vector<typename F::Element> c;
  for (int i = 0; i < degree; ++i) c.push_back(f.element(rng() % f.order()));
  c.push_back(monic_lead ? f.one() : f.element(1 + rng() % (f.order() - 1)));
  return Poly<F>(f, c);
}

// Gauss's count of monic irreducibles of degree d over F_q.
std::uint64_t necklace_count(std::uint64_t q, unsigned d) {
  auto mobius = [](unsigned n) {
    int m = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    return n > 1 ? -m : m;
  };
  std::int64_t total = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < d / e; ++i) pw *= static_cast<std::int64_t>(q);
    total += mobius(e) * pw;
  }
  return static_cast<std::uint64_t>(total / d);
}

template <FiniteField F>
void check_field_axioms(const F& f) {
  const std::uint64_t q = f.order();
  std::uint64_t squares = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    const auto a = f.element(i);
    ASSERT_EQ(f.index(a), i);
    ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
    ASSERT_EQ(f.sub(a, a), f.zero());
    ASSERT_EQ(f.mul(a, f.one()), a);
    if (!f.is_zero(a)) {
      ASSERT_EQ(f.mul(a, f.inv(a)), f.one());
    }
    if (f.is_square(a)) {
      ++squares;
      const auto r = f.sqrt(a);
      ASSERT_TRUE(r.has_value());
      ASSERT_EQ(f.mul(*r, *r), a);
    } else {
      ASSERT_FALSE(f.sqrt(a).has_value());
    }
    auto pr = f.pth_root(a);
    auto back = pr;
    for (std::uint64_t k = 1; k < f.characteristic(); ++k) back = f.mul(back, pr);
    ASSERT_EQ(back, a);
    for (std::uint64_t j = 0; j < q; j += 1 + q / 17) {
      const auto b = f.element(j);
      ASSERT_EQ(f.add(a, b), f.add(b, a));
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      for (std::uint64_t k = 0; k < q; k += 1 + q / 7) {
        const auto c = f.element(k);
        ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      }
    }
  }
  // 0 plus (q-1)/2 nonzero squares in odd characteristic, every element in characteristic 2
  EXPECT_EQ(squares, f.characteristic() == 2 ? q : (q + 1) / 2);
}

}  // namespace

TEST(PrimeField, Axioms) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 13u, 101u}) check_field_axioms(PrimeField(p));
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
}

TEST(FqField, Axioms) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 2}, {3, 4}, {7, 2}, {2, 5}}) {
    SCOPED_TRACE(std::to_string(p) + "^" + std::to_string(k));
    check_field_axioms(FqField::make(p, k));
  }
}

TEST(FqField, LeastModulusAndGenerator) {
  const FqField f9 = FqField::make(3, 2);
  EXPECT_EQ(f9.modulus(), (std::vector<std::uint64_t>{1, 0}));  // x^2 + 1
  const auto g = f9.generator();
  std::set<FqField::Element> seen;
  auto x = f9.one();
  for (int i = 0; i < 8; ++i, x = f9.mul(x, g)) seen.insert(x);
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_THROW(FqField(3, {0, 0}), std::invalid_argument);  // x^2 is reducible
}

TEST(FqField, EmbeddingIsAHomomorphism) {
  for (auto [p, k, j] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{3, 1, 2}, {3, 2, 4}, {5, 1, 3}, {2, 2, 4}}) {
    const FqField small = FqField::make(p, k), big = FqField::make(p, j);
    const auto e = embedding(small, big);
    ASSERT_EQ(e.size(), small.order());
    for (std::uint64_t a = 0; a < small.order(); ++a) {
      for (std::uint64_t b = 0; b < small.order(); ++b) {
        ASSERT_EQ(e[small.add(a, b)], big.add(e[a], e[b]));
        ASSERT_EQ(e[small.mul(a, b)], big.mul(e[a], e[b]));
      }
    }
  }
  EXPECT_EQ(embedding(FqField::make(3, 1), FqField::make(3, 2)), (std::vector<FqField::Element>{0, 1, 2}));
}

TEST(Poly, DivisionAndGcd) {
  std::mt19937_64 rng(11);
  const PrimeField f(7);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_poly(f, rng() % 30, rng, false), b = random_poly(f, rng() % 12, rng, false);
    const auto [q, r] = divmod(a, b);
    ASSERT_EQ(q * b + r, a);
    ASSERT_LT(r.degree(), b.degree());
    const auto g = gcd(a, b);
    ASSERT_TRUE(g.is_monic());
    ASSERT_TRUE((a % g).is_zero());
    ASSERT_TRUE((b % g).is_zero());
  }
}

TEST(Poly, KaratsubaMatchesSchoolbook) {
  std::mt19937_64 rng(12);
  const PrimeField f(101);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_poly(f, 40 + rng() % 100, rng), b = random_poly(f, 40 + rng() % 100, rng);
    // evaluate at several points: (ab)(x) = a(x) b(x)
    const auto ab = a * b;
    ASSERT_EQ(ab.degree(), a.degree() + b.degree());
    for (std::uint64_t x = 0; x < 101; x += 7) ASSERT_EQ(ab.evaluate(x), f.mul(a.evaluate(x), b.evaluate(x)));
  }
}

TEST(Poly, ComposeAndPowmod) {
  const PrimeField f(5);
  const Poly<PrimeField> g(f, {1, 0, 1});  // x^2 + 1
  const auto gg = compose(g, g);
  EXPECT_EQ(gg, g * g + Poly<PrimeField>::constant(f, 1));
  const Poly<PrimeField> m(f, {2, 0, 0, 1});
  EXPECT_EQ(powmod(g, std::uint64_t{13}, m), pow(g, 13) % m);
}

TEST(PolyFactor, IrreducibleCountsMatchGaussFormula) {
  std::mt19937_64 rng(13);
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {2, 6}, {3, 3}, {3, 4}, {5, 3}, {9, 2}, {4, 3}}) {
    const FqField f = FqField::make(q == 9 ? 3 : q == 4 ? 2 : q, q == 9 || q == 4 ? 2 : 1);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) total *= q;
    std::uint64_t irreducible = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<FqField::Element> c;
      for (std::uint64_t v = code, i = 0; i < d; ++i, v /= q) c.push_back(f.element(v % q));
      c.push_back(f.one());
      const Poly<FqField> g(f, c);
      const bool irr = is_irreducible(g);
      irreducible += irr;
      const auto fac = factor_poly(g, rng);
      ASSERT_EQ(irr, fac.size() == 1 && fac[0].exponent == 1);
    }
    EXPECT_EQ(irreducible, necklace_count(q, d)) << "q=" << q << " d=" << d;
  }
}

TEST(PolyFactor, ProductRoundTrip) {
  std::mt19937_64 rng(14);
  const std::vector<FqField> fields{FqField::make(2, 1), FqField::make(3, 1), FqField::make(7, 1), FqField::make(3, 2),
                                    FqField::make(2, 3), FqField::make(5, 2)};
  for (const auto& f : fields) {
    for (int i = 0; i < 40; ++i) {
      // build with forced repeated factors
      auto a = random_poly(f, 1 + rng() % 8, rng);
      auto b = random_poly(f, 1 + rng() % 4, rng);
      const auto g = a * b * b * random_poly(f, rng() % 10, rng);
      const auto fac = factor_poly(g, rng);
      Poly<FqField> prod = Poly<FqField>::constant(f, f.one());
      for (const auto& pf : fac) {
        ASSERT_TRUE(pf.factor.is_monic());
        ASSERT_TRUE(is_irreducible(pf.factor));
        prod = prod * pow(pf.factor, pf.exponent);
      }
      ASSERT_EQ(prod, g);
    }
  }
}

TEST(PolyFactor, KnownFactorizations) {
  std::mt19937_64 rng(15);
  const PrimeField f2(2), f7(7);
  auto fac = factor_poly(Poly<PrimeField>(f2, {1, 0, 0, 0, 1}), rng);  // x^4 + 1 over F_2
  ASSERT_EQ(fac.size(), 1u);
  EXPECT_EQ(fac[0].factor, Poly<PrimeField>(f2, {1, 1}));
  EXPECT_EQ(fac[0].exponent, 4);
  fac = factor_poly(Poly<PrimeField>(f7, {5, 0, 1}), rng);  // x^2 - 2 over F_7
  ASSERT_EQ(fac.size(), 2u);
  const Poly<PrimeField> a(f7, {4, 1}), b(f7, {3, 1});  // x - 3 and x - 4
  EXPECT_TRUE((fac[0].factor == a && fac[1].factor == b) || (fac[0].factor == b && fac[1].factor == a));
}

TEST(PolyFactor, SquareRootsAndRoots) {
  std::mt19937_64 rng(16);
  const FqField f = FqField::make(5, 2);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(f, rng() % 6, rng, false);
    const auto sq = a * a;
    const auto r = sqrt_poly(sq);
    ASSERT_TRUE(r.has_value());
    ASSERT_EQ(*r * *r, sq);
    const auto rts = roots(sq, rng);
    for (auto x : rts) ASSERT_EQ(sq.evaluate(x), f.zero());
    std::uint64_t brute = 0;
    for (std::uint64_t x = 0; x < f.order(); ++x) brute += sq.evaluate(f.element(x)) == f.zero();
    ASSERT_EQ(rts.size(), brute);
  }
  EXPECT_FALSE(is_square_poly(Poly<FqField>(f, {0, 1})));
}
