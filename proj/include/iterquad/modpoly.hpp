#pragma once

// Reductions of quadratic maps modulo a prime and the direct factorization
// oracle used to cross-check the square-based criteria.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "iterquad/poly_factor.hpp"
#include "iterquad/prime_field.hpp"
#include "iterquad/quadmap.hpp"

namespace iterquad {

using ModPoly = Poly<PrimeField>;

inline constexpr std::size_t kIterateDegreeCap = std::size_t{1} << 14;
inline constexpr std::size_t kFactorDegreeCap = std::size_t{1} << 10;

/// x^2 - 2 gamma x + (gamma^2 + gamma + m) with coefficients reduced mod p.
inline ModPoly reduce(const QuadMapZ& f, std::uint64_t p) {
  const PrimeField F(p);
  const auto c = f.coefficients();
  return ModPoly(F, {F.from_integer(c[2]), F.from_integer(c[1]), F.one()});
}

/// n-fold self-composition of a monic quadratic g.
inline ModPoly iterate_mod(const ModPoly& g, unsigned n, std::size_t degree_cap = kIterateDegreeCap) {
  if (g.degree() != 2 || !g.is_monic()) throw std::invalid_argument("iterate_mod: expects a monic quadratic");
  if (n >= 63 || (std::size_t{1} << n) > degree_cap) {
    throw std::length_error("iterate_mod: degree 2^" + std::to_string(n) + " exceeds cap " + std::to_string(degree_cap));
  }
  const PrimeField& F = g.field();
  const ModPoly b = ModPoly::constant(F, g.coeff(1));
  const ModPoly c = ModPoly::constant(F, g.coeff(0));
  ModPoly h = ModPoly::x(F);
  for (unsigned i = 0; i < n; ++i) h = h * h + b * h + c;
  return h;
}

inline bool is_irreducible_mod(const ModPoly& g) { return is_irreducible(g); }

inline std::vector<PolyFactor<PrimeField>> factor_mod(const ModPoly& g, std::mt19937_64& rng, std::size_t degree_cap = kFactorDegreeCap) {
  if (!g.is_monic()) throw std::invalid_argument("factor_mod: expects a monic polynomial");
  return factor_poly(g, rng, degree_cap);
}

struct CycleType {
  std::vector<int> degrees;  // ascending, with multiplicity
  bool separable = true;
  bool full_cycle() const { return degrees.size() == 1 && separable; }
};

/// Degrees of the irreducible factors of the reduction of f^n mod p. When
/// p divides the discriminant the factor list is still produced but the
/// result is flagged as inseparable.
inline CycleType frobenius_cycle_type(const QuadMapZ& f, unsigned n, std::uint64_t p, std::mt19937_64& rng,
                                      std::size_t degree_cap = kFactorDegreeCap) {
  if (p == 2) throw std::invalid_argument("frobenius_cycle_type: p must be odd");
  const ModPoly h = iterate_mod(reduce(f, p), n, degree_cap);
  CycleType ct;
  ct.separable = gcd(h, derivative(h)).degree() == 0;
  for (const auto& pf : factor_poly(h, rng, degree_cap)) {
    for (int e = 0; e < pf.exponent; ++e) ct.degrees.push_back(pf.factor.degree());
  }
  std::sort(ct.degrees.begin(), ct.degrees.end());
  return ct;
}

}  // namespace iterquad
