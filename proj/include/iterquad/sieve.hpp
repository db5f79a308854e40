#pragma once

// Segmented sieve of Eratosthenes over odd numbers. Segments are independent:
// any segment can be sieved on its own given the shared base primes, which is
// what lets census workers run without shared mutable state and lets a scan
// resume from any segment boundary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iterquad {

namespace detail {

inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

class PrimeSieve {
 public:
  static constexpr std::uint64_t kDefaultSegmentSpan = std::uint64_t{1} << 22;

  explicit PrimeSieve(std::uint64_t bound, std::uint64_t segment_span = kDefaultSegmentSpan)
      : bound_(bound), span_(segment_span) {
    if (bound < 2) throw std::invalid_argument("PrimeSieve: bound must be >= 2");
    if (bound > (std::uint64_t{1} << 62)) throw std::invalid_argument("PrimeSieve: bound too large");
    if (segment_span < 64 || segment_span % 2 != 0) throw std::invalid_argument("PrimeSieve: bad segment span");
    base_ = std::make_shared<const std::vector<std::uint32_t>>(detail::small_primes(detail::isqrt_u64(bound)));
  }

  std::uint64_t bound() const { return bound_; }
  std::uint64_t segment_span() const { return span_; }
  std::size_t segment_count() const { return static_cast<std::size_t>(bound_ / span_ + 1); }

  /// Half-open range [lo, hi) covered by segment i.
  std::pair<std::uint64_t, std::uint64_t> segment_range(std::size_t i) const {
    const std::uint64_t lo = static_cast<std::uint64_t>(i) * span_;
    const std::uint64_t hi = std::min(lo + span_, bound_ + 1);
    return {lo, hi};
  }

  std::vector<std::uint64_t> segment(std::size_t i) const {
    std::vector<std::uint64_t> out;
    for_each_in_segment(i, [&](std::uint64_t p) { out.push_back(p); });
    return out;
  }

  template <class Fn>
  void for_each_in_segment(std::size_t i, Fn&& fn) const {
    auto [lo, hi] = segment_range(i);
    if (lo >= hi) return;
    if (lo <= 2 && 2 < hi) fn(std::uint64_t{2});
    // Odd numbers lo' = first odd >= max(lo, 3); slot k represents lo' + 2k.
    std::uint64_t start = std::max<std::uint64_t>(lo, 3);
    if ((start & 1) == 0) ++start;
    if (start >= hi) return;
    const std::uint64_t slots = (hi - start + 1) / 2;
    std::vector<std::uint8_t> composite(slots, 0);
    for (std::uint32_t bp : *base_) {
      if (bp == 2) continue;
      const std::uint64_t p = bp;
      if (p * p >= hi) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      if ((first & 1) == 0) first += p;
      for (std::uint64_t j = (first - start) / 2; j < slots; j += p) composite[j] = 1;
    }
    for (std::uint64_t k = 0; k < slots; ++k) {
      if (!composite[k]) fn(start + 2 * k);
    }
  }

  template <class Fn>
  void for_each(Fn&& fn, std::size_t first_segment = 0) const {
    for (std::size_t i = first_segment; i < segment_count(); ++i) for_each_in_segment(i, fn);
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for_each([&](std::uint64_t) { ++c; });
    return c;
  }

 private:
  std::uint64_t bound_;
  std::uint64_t span_;
  std::shared_ptr<const std::vector<std::uint32_t>> base_;
};

/// All primes <= bound, ascending.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  PrimeSieve(bound).for_each([&](std::uint64_t p) { out.push_back(p); });
  return out;
}

}  // namespace iterquad
