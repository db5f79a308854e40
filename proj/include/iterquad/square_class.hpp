#pragma once

#include <vector>

#include "iterquad/factor.hpp"
#include "iterquad/integer.hpp"
#include "iterquad/squares.hpp"

namespace iterquad {

/// Representative of a nonzero rational's class in Q*/Q*^2: a sign and the
/// primes of odd exponent. When factoring stops early the leftover composite
/// is kept as `cofactor` and the class is only known up to it.
struct SquareClass {
  int sign = 1;
  std::vector<Integer> support;  // strictly increasing primes
  bool cofactor_known = true;
  Integer cofactor{1};

  Integer representative() const {
    Integer r = sign < 0 ? Integer(-1) : Integer(1);
    for (const auto& p : support) r *= p;
    return r * cofactor;
  }

  bool is_identity() const { return sign > 0 && support.empty() && cofactor_known; }

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

inline SquareClass square_class(const Integer& x, const FactorBudget& budget = {}) {
  if (x == 0) throw std::domain_error("square_class: zero has no square class");
  const Factorization fz = factor(x, budget);
  SquareClass sc;
  sc.sign = fz.sign;
  for (const auto& pe : fz.factors) {
    if (pe.exponent % 2 != 0) sc.support.push_back(pe.prime);
  }
  if (!fz.complete() && !is_square_integer(fz.cofactor)) {
    sc.cofactor_known = false;
    sc.cofactor = fz.cofactor;
  }
  return sc;
}

}  // namespace iterquad
