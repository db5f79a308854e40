#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "iterquad/integer.hpp"
#include "iterquad/modular.hpp"
#include "iterquad/primality.hpp"

namespace iterquad {

/// What the polynomial layer needs from a coefficient field. element(i) for
/// i < order() enumerates the field; for i < characteristic() it must be the
/// image of the integer i.
template <class F>
concept FiniteField = std::copy_constructible<F> && requires(const F& f, typename F::Element a, std::uint64_t i) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.sub(a, a) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.order() } -> std::same_as<std::uint64_t>;
  { f.element(i) } -> std::same_as<typename F::Element>;
  { f.index(a) } -> std::same_as<std::uint64_t>;
  { f.pth_root(a) } -> std::same_as<typename F::Element>;
  { f.is_square(a) } -> std::convertible_to<bool>;
  { f.sqrt(a) } -> std::same_as<std::optional<typename F::Element>>;
};

/// The prime field F_p, p < 2^63.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p)) {
      throw std::invalid_argument("PrimeField: not a prime below 2^63: " + std::to_string(p));
    }
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t order() const { return p_; }
  unsigned degree() const { return 1; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Element from_integer(const Integer& v) const { return mod_u64(v, p_); }

  Element add(Element a, Element b) const { return addmod(a, b, p_); }
  Element sub(Element a, Element b) const { return submod(a, b, p_); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return mulmod(a, b, p_); }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return invmod(a, p_);
  }
  Element pow(Element a, std::uint64_t e) const { return powmod(a, e, p_); }
  bool is_zero(Element a) const { return a == 0; }

  /// Element with index i in [0, p): just the residue i.
  Element element(std::uint64_t i) const { return i % p_; }
  std::uint64_t index(Element a) const { return a; }
  Element pth_root(Element a) const { return a; }

  bool is_square(Element a) const {
    if (a == 0 || p_ == 2) return true;
    return powmod(a, (p_ - 1) / 2, p_) == 1;
  }

  /// Tonelli-Shanks; nullopt for non-residues.
  std::optional<Element> sqrt(Element a) const {
    a %= p_;
    if (a == 0 || p_ == 2) return a;
    if (!is_square(a)) return std::nullopt;
    std::uint64_t q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (is_square(z)) ++z;
    std::uint64_t m = static_cast<std::uint64_t>(s);
    std::uint64_t c = powmod(z, q, p_);
    std::uint64_t t = powmod(a, q, p_);
    std::uint64_t r = powmod(a, (q + 1) / 2, p_);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p_);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p_);
      m = i;
      c = mulmod(b, b, p_);
      t = mulmod(t, c, p_);
      r = mulmod(r, b, p_);
    }
    return std::min(r, p_ - r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

}  // namespace iterquad
