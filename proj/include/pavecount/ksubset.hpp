#pragma once

#include "pavecount/bigcount.hpp"
#include "pavecount/error.hpp"

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace pavecount {

/// Largest supported ground set; a subset of [n] fits in one 32-bit word.
inline constexpr int kMaxGround = 32;

using Mask = std::uint32_t;

namespace detail {

inline constexpr auto kBinomialTable = [] {
  std::array<std::array<std::uint64_t, kMaxGround + 1>, kMaxGround + 1> t{};
  for (int n = 0; n <= kMaxGround; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
  }
  return t;
}();

inline void check_ground(int n) {
  if (n < 0 || n > kMaxGround)
    throw ParameterError("ground-set size " + std::to_string(n) + " outside [0, " +
                         std::to_string(kMaxGround) + "]");
}

inline Mask low_bits(int n) {
  return n >= 32 ? ~Mask{0} : static_cast<Mask>((std::uint64_t{1} << n) - 1);
}

}  // namespace detail

/// Machine-word binomial for n <= 32 (used for indexing). Zero outside 0 <= k <= n.
constexpr std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kMaxGround) return 0;
  return detail::kBinomialTable[n][k];
}

/// Exact binomial coefficient. Returns 0 when k < 0 or k > n.
inline BigCount binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n <= kMaxGround) return BigCount(detail::kBinomialTable[n][k]);
  if (k > n - k) k = n - k;
  BigCount acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;  // exact: acc is C(n-k+i, i) here
  }
  return acc;
}

/// A subset of [n] = {1..n}, stored as a bit-vector (element e <-> bit e-1).
/// Equal sets compare and hash equal regardless of how they were built.
class KSubset {
public:
  KSubset() = default;

  KSubset(int n, std::span<const int> members) : n_(static_cast<std::uint8_t>(n)) {
    detail::check_ground(n);
    for (int e : members) {
      if (e < 1 || e > n)
        throw ParameterError("element " + std::to_string(e) + " not in [1, " + std::to_string(n) + "]");
      const Mask bit = Mask{1} << (e - 1);
      if (mask_ & bit) throw ParameterError("duplicate element " + std::to_string(e));
      mask_ |= bit;
    }
  }

  KSubset(int n, std::initializer_list<int> members)
      : KSubset(n, std::span<const int>(members.begin(), members.size())) {}

  static KSubset from_mask(int n, Mask mask) {
    detail::check_ground(n);
    if ((mask & ~detail::low_bits(n)) != 0) throw ParameterError("mask has bits outside [n]");
    KSubset s;
    s.n_ = static_cast<std::uint8_t>(n);
    s.mask_ = mask;
    return s;
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return std::popcount(mask_); }
  Mask mask() const noexcept { return mask_; }
  bool empty() const noexcept { return mask_ == 0; }

  bool contains(int e) const noexcept { return e >= 1 && e <= n_ && ((mask_ >> (e - 1)) & 1U); }

  /// Ascending 1-based members.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k()));
    for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  bool is_subset_of(const KSubset& other) const noexcept { return (mask_ & ~other.mask_) == 0; }

  KSubset complement() const { return from_mask(n_, ~mask_ & detail::low_bits(n_)); }

  friend bool operator==(const KSubset&, const KSubset&) = default;

  // Same size: colexicographic. Mixed sizes: by size first.
  friend std::strong_ordering operator<=>(const KSubset& a, const KSubset& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.k() <=> b.k(); c != 0) return c;
    return a.mask_ <=> b.mask_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : members()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

private:
  std::uint8_t n_ = 0;
  Mask mask_ = 0;
};

inline int intersection_size(const KSubset& x, const KSubset& y) {
  if (x.n() != y.n())
    throw ParameterError("intersection of subsets of different ground sets (" + std::to_string(x.n()) +
                         " vs " + std::to_string(y.n()) + ")");
  return std::popcount(x.mask() & y.mask());
}

inline void check_nk(int n, int k) {
  detail::check_ground(n);
  if (k < 0 || k > n)
    throw ParameterError("subset size " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
}

/// Lazy colexicographic stream of the k-subsets of [n].
class KSubsetRange {
public:
  class iterator {
  public:
    using value_type = KSubset;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(int n, std::uint64_t cur, std::uint64_t end) : n_(n), cur_(cur), end_(end) {}

    KSubset operator*() const { return KSubset::from_mask(n_, static_cast<Mask>(cur_)); }

    iterator& operator++() {
      if (cur_ == 0) {  // k = 0: a single empty subset
        cur_ = end_;
        return *this;
      }
      // Gosper: next larger word with the same popcount = next set in colex order.
      const std::uint64_t c = cur_ & (~cur_ + 1);
      const std::uint64_t r = cur_ + c;
      cur_ = (((r ^ cur_) >> 2) / c) | r;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }

    friend bool operator==(const iterator& a, const iterator& b) { return a.cur_ == b.cur_; }

  private:
    int n_ = 0;
    std::uint64_t cur_ = 0;
    std::uint64_t end_ = 0;
  };

  KSubsetRange(int n, int k) : n_(n), k_(k) { check_nk(n, k); }

  iterator begin() const {
    const std::uint64_t first = (std::uint64_t{1} << k_) - 1;
    return {n_, first, end_word()};
  }
  iterator end() const { return {n_, end_word(), end_word()}; }

  std::uint64_t size() const { return binomial_u64(n_, k_); }

private:
  // First word of popcount k that does not fit in n bits (or a sentinel for k = 0).
  std::uint64_t end_word() const {
    if (k_ == 0) return std::uint64_t{1} << 63;
    return ((std::uint64_t{1} << (k_ - 1)) - 1) | (std::uint64_t{1} << n_);
  }

  int n_;
  int k_;
};

inline KSubsetRange enumerate_ksubsets(int n, int k) { return KSubsetRange(n, k); }

inline std::vector<KSubset> all_ksubsets(int n, int k) {
  std::vector<KSubset> out;
  out.reserve(static_cast<std::size_t>(binomial_u64(n, k)));
  for (const KSubset& s : enumerate_ksubsets(n, k)) out.push_back(s);
  return out;
}

/// Colex rank: sum over the i-th smallest element c_i (0-based) of C(c_i, i+1).
inline std::uint64_t colex_rank(Mask mask) {
  std::uint64_t idx = 0;
  int i = 1;
  for (Mask m = mask; m != 0; m &= m - 1, ++i) idx += binomial_u64(std::countr_zero(m), i);
  return idx;
}

inline Mask colex_unrank(int k, std::uint64_t idx, int n) {
  Mask mask = 0;
  int c = n;
  for (int i = k; i >= 1; --i) {
    do {
      --c;
    } while (binomial_u64(c, i) > idx);
    idx -= binomial_u64(c, i);
    mask |= Mask{1} << c;
  }
  return mask;
}

inline std::uint64_t subset_rank(const KSubset& x) { return colex_rank(x.mask()); }

inline KSubset subset_unrank(int n, int k, std::uint64_t idx) {
  check_nk(n, k);
  if (idx >= binomial_u64(n, k))
    throw ParameterError("rank " + std::to_string(idx) + " out of range for C(" + std::to_string(n) + "," +
                         std::to_string(k) + ")");
  return KSubset::from_mask(n, colex_unrank(k, idx, n));
}

}  // namespace pavecount

template <>
struct std::hash<pavecount::KSubset> {
  std::size_t operator()(const pavecount::KSubset& s) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{static_cast<unsigned>(s.n())} << 32) | s.mask());
  }
};
