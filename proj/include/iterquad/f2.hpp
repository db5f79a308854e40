#pragma once

// Linear algebra over F_2 on packed bit vectors, specialised to the one
// question the stability analysis asks: does some odd-size subset of the
// given vectors sum to zero (the origin lies in their affine span)?

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "iterquad/square_class.hpp"

namespace iterquad {

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) {
      words_[i / 64] |= std::uint64_t{1} << (i % 64);
    } else {
      words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  F2Vector& operator^=(const F2Vector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::optional<std::size_t> lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
    }
    return std::nullopt;
  }

  F2Vector extended(std::size_t extra) const {
    F2Vector out(size_ + extra);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    return out;
  }

  friend bool operator==(const F2Vector&, const F2Vector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AffineSpanResult {
  std::size_t rank = 0;
  bool origin_in_affine_span = false;
  std::optional<std::vector<std::size_t>> witness;  // indices of an odd subset summing to zero
};

namespace detail {

// Incremental echelon basis keyed by pivot column, each row remembering which
// input vectors it combines.
struct EchelonBasis {
  std::map<std::size_t, std::pair<F2Vector, F2Vector>> rows;  // pivot -> (row, combination)

  // Reduce v (with combination c) against the basis; returns the reduced pair.
  std::pair<F2Vector, F2Vector> reduce(F2Vector v, F2Vector c) const {
    while (auto piv = v.lowest_set()) {
      auto it = rows.find(*piv);
      if (it == rows.end()) break;
      v ^= it->second.first;
      c ^= it->second.second;
    }
    return {std::move(v), std::move(c)};
  }

  bool insert(F2Vector v, F2Vector c) {
    auto [rv, rc] = reduce(std::move(v), std::move(c));
    // Fully reduce so that later lookups only need pivot columns.
    while (true) {
      auto piv = rv.lowest_set();
      if (!piv) return false;
      auto it = rows.find(*piv);
      if (it == rows.end()) {
        rows.emplace(*piv, std::make_pair(std::move(rv), std::move(rc)));
        return true;
      }
      rv ^= it->second.first;
      rc ^= it->second.second;
    }
  }
};

}  // namespace detail

/// Rank of the vectors, and whether an odd-cardinality subset sums to zero.
/// Decided by solving V x = 0 together with the parity row 1.x = 1.
inline AffineSpanResult f2_solve_affine(std::span<const F2Vector> vectors) {
  AffineSpanResult out;
  if (vectors.empty()) return out;
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("f2_solve_affine: vectors of different length");
  }
  const std::size_t count = vectors.size();

  detail::EchelonBasis plain;
  for (std::size_t i = 0; i < count; ++i) {
    if (plain.insert(vectors[i], F2Vector(count))) ++out.rank;
  }

  // Append a parity coordinate equal to 1 and ask whether e_parity is in the span.
  detail::EchelonBasis augmented;
  for (std::size_t i = 0; i < count; ++i) {
    F2Vector v = vectors[i].extended(1);
    v.set(dim);
    F2Vector c(count);
    c.set(i);
    augmented.insert(std::move(v), std::move(c));
  }
  F2Vector target(dim + 1);
  target.set(dim);
  auto [residual, combo] = augmented.reduce(target, F2Vector(count));
  if (residual.is_zero()) {
    out.origin_in_affine_span = true;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < count; ++i) {
      if (combo.get(i)) idx.push_back(i);
    }
    out.witness = std::move(idx);
  }
  return out;
}

/// Coordinates for square classes: coordinate 0 is the sign (-1 is a basis
/// element of Q*/Q*^2), then one coordinate per prime in the union of supports.
inline std::vector<F2Vector> square_class_vectors(std::span<const SquareClass> classes) {
  std::vector<Integer> primes;
  for (const auto& sc : classes) {
    if (!sc.cofactor_known) {
      throw std::invalid_argument("square_class_vectors: class with unfactored cofactor " + to_string(sc.cofactor));
    }
    primes.insert(primes.end(), sc.support.begin(), sc.support.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<F2Vector> out;
  out.reserve(classes.size());
  for (const auto& sc : classes) {
    F2Vector v(primes.size() + 1);
    if (sc.sign < 0) v.set(0);
    for (const auto& p : sc.support) {
      auto pos = std::lower_bound(primes.begin(), primes.end(), p) - primes.begin();
      v.set(static_cast<std::size_t>(pos) + 1);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace iterquad
