#pragma once

#include "pavecount/bitset.hpp"
#include "pavecount/error.hpp"
#include "pavecount/ksubset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pavecount {

struct ExchangeCounterexample {
  KSubset b1;
  KSubset b2;
  int e = 0;  // element of b1 \ b2 with no valid partner in b2 \ b1
};

/// Result of checking the basis-exchange axiom.
struct ExchangeVerdict {
  std::optional<ExchangeCounterexample> counterexample;
  bool valid() const noexcept { return !counterexample.has_value(); }
};

namespace detail {

inline std::vector<Mask> normalize_bases(int n, int r, std::span<const Mask> bases) {
  check_nk(n, r);
  if (bases.empty()) throw ParameterError("a matroid needs at least one basis");
  const Mask ground = low_bits(n);
  for (Mask b : bases) {
    if ((b & ~ground) != 0) throw ParameterError("basis is not a subset of [" + std::to_string(n) + "]");
    if (std::popcount(b) != r)
      throw ParameterError("basis " + KSubset::from_mask(n, b).to_string() + " does not have size " + std::to_string(r));
  }
  std::vector<Mask> out(bases.begin(), bases.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline VertexBits membership(int n, int r, const std::vector<Mask>& bases) {
  VertexBits bits(static_cast<std::size_t>(binomial_u64(n, r)));
  for (Mask b : bases) bits.set(static_cast<std::size_t>(colex_rank(b)));
  return bits;
}

// First failing (B1, B2, e) in ascending (B1, B2, e) order.
inline ExchangeVerdict exchange_check(int n, const std::vector<Mask>& bases, const VertexBits& member) {
  for (Mask b1 : bases)
    for (Mask b2 : bases) {
      const Mask only1 = b1 & ~b2;
      const Mask only2 = b2 & ~b1;
      for (Mask m = only1; m != 0; m &= m - 1) {
        const Mask e = m & (~m + 1);
        bool found = false;
        for (Mask f = only2; f != 0 && !found; f &= f - 1) {
          const Mask swapped = (b1 & ~e) | (f & (~f + 1));
          found = member.test(static_cast<std::size_t>(colex_rank(swapped)));
        }
        if (!found)
          return {ExchangeCounterexample{KSubset::from_mask(n, b1), KSubset::from_mask(n, b2), std::countr_zero(e) + 1}};
      }
    }
  return {};
}

}  // namespace detail

/// Basis-exchange axiom over an explicit candidate family of r-subsets of [n].
inline ExchangeVerdict check_basis_exchange(int n, int r, std::span<const KSubset> bases) {
  std::vector<Mask> masks;
  for (const auto& b : bases) {
    if (b.n() != n) throw ParameterError("candidate basis " + b.to_string() + " is not a subset of [" + std::to_string(n) + "]");
    masks.push_back(b.mask());
  }
  const auto norm = detail::normalize_bases(n, r, masks);
  return detail::exchange_check(n, norm, detail::membership(n, r, norm));
}

/// Subsets reported by a flat scan.
struct FlatReport {
  std::vector<KSubset> hyperplanes;        // all, ordered by (size, colex)
  std::vector<KSubset> large_hyperplanes;  // those of size >= r
  std::vector<KSubset> circuits;           // circuits of size <= r+1
};

/// A matroid on [n] given by its basis family. Immutable; equality is equality
/// of (n, r, bases) as labeled sets.
class Matroid {
public:
  enum class Validate { yes, no };

  Matroid(int n, int r, std::span<const Mask> bases, Validate validate = Validate::yes)
      : n_(n), r_(r), bases_(detail::normalize_bases(n, r, bases)), member_(detail::membership(n, r, bases_)) {
    if (validate == Validate::yes) {
      auto v = detail::exchange_check(n_, bases_, member_);
      if (!v.valid())
        throw ParameterError("basis exchange fails for B1=" + v.counterexample->b1.to_string() + ", B2=" +
                             v.counterexample->b2.to_string() + ", e=" + std::to_string(v.counterexample->e));
    }
  }

  Matroid(int n, int r, std::span<const KSubset> bases, Validate validate = Validate::yes)
      : Matroid(n, r, to_masks(n, bases), validate) {}

  static Matroid uniform(int r, int n) {
    std::vector<Mask> b;
    for (const auto& s : enumerate_ksubsets(n, r)) b.push_back(s.mask());
    return Matroid(n, r, b, Validate::no);
  }

  int n() const noexcept { return n_; }
  int rank() const noexcept { return r_; }
  const std::vector<Mask>& basis_masks() const noexcept { return bases_; }
  std::size_t n_bases() const noexcept { return bases_.size(); }

  std::vector<KSubset> bases() const {
    std::vector<KSubset> out;
    out.reserve(bases_.size());
    for (Mask b : bases_) out.push_back(KSubset::from_mask(n_, b));
    return out;
  }

  /// Membership bit-vector over the colex indices of the r-subsets.
  const VertexBits& basis_indicator() const noexcept { return member_; }

  bool is_basis(Mask s) const {
    return std::popcount(s) == r_ && member_.test(static_cast<std::size_t>(colex_rank(s)));
  }

  bool is_independent(Mask s) const {
    if (std::popcount(s) > r_) return false;
    return std::any_of(bases_.begin(), bases_.end(), [s](Mask b) { return (s & ~b) == 0; });
  }

  /// rank(S) = max over bases B of |S cap B|.
  int rank_of(Mask s) const {
    int best = 0;
    for (Mask b : bases_) best = std::max(best, std::popcount(s & b));
    return best;
  }
  int rank_of(const KSubset& s) const { return rank_of(check_own(s).mask()); }

  Mask closure(Mask s) const {
    const int rs = rank_of(s);
    Mask cl = s;
    for (int x = 0; x < n_; ++x) {
      const Mask bit = Mask{1} << x;
      if (!(s & bit) && rank_of(s | bit) == rs) cl |= bit;
    }
    return cl;
  }

  std::vector<KSubset> hyperplanes() const {
    std::vector<Mask> found;
    if (r_ == 0) return {};
    for (const auto& y : enumerate_ksubsets(n_, r_ - 1))
      if (is_independent(y.mask())) found.push_back(closure(y.mask()));
    return sorted_subsets(std::move(found));
  }

  /// Minimal dependent sets of size at most max_size.
  std::vector<KSubset> circuits(int max_size) const {
    std::vector<KSubset> out;
    for (int k = 1; k <= std::min(max_size, n_); ++k)
      for (const auto& c : enumerate_ksubsets(n_, k)) {
        if (is_independent(c.mask())) continue;
        bool minimal = true;
        for (Mask m = c.mask(); m != 0 && minimal; m &= m - 1)
          minimal = is_independent(c.mask() & ~(m & (~m + 1)));
        if (minimal) out.push_back(c);
      }
    return out;
  }

  FlatReport flat_report() const {
    FlatReport rep;
    rep.hyperplanes = hyperplanes();
    for (const auto& h : rep.hyperplanes)
      if (h.k() >= r_) rep.large_hyperplanes.push_back(h);
    rep.circuits = circuits(r_ + 1);
    return rep;
  }

  Matroid dual() const {
    std::vector<Mask> comp;
    comp.reserve(bases_.size());
    const Mask ground = detail::low_bits(n_);
    for (Mask b : bases_) comp.push_back(~b & ground);
    return Matroid(n_, n_ - r_, comp, Validate::no);
  }

  /// Every circuit has size >= r, i.e. every (r-1)-subset is independent.
  bool is_paving() const {
    if (r_ == 0) return true;
    for (const auto& y : enumerate_ksubsets(n_, r_ - 1))
      if (!is_independent(y.mask())) return false;
    return true;
  }

  bool is_sparse_paving() const { return is_paving() && dual().is_paving(); }

  /// Alternative characterization: every r-subset that is not a basis is
  /// simultaneously a circuit and a hyperplane.
  bool nonbases_are_circuit_hyperplanes() const {
    const Mask ground = detail::low_bits(n_);
    for (const auto& x : enumerate_ksubsets(n_, r_)) {
      const Mask s = x.mask();
      if (is_basis(s)) continue;
      for (Mask m = s; m != 0; m &= m - 1)
        if (!is_independent(s & ~(m & (~m + 1)))) return false;  // not a circuit
      if (rank_of(s) != r_ - 1) return false;
      for (Mask m = ground & ~s; m != 0; m &= m - 1)
        if (rank_of(s | (m & (~m + 1))) != r_) return false;  // not closed
    }
    return true;
  }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.bases_ == b.bases_;
  }

private:
  static std::vector<Mask> to_masks(int n, std::span<const KSubset> s) {
    std::vector<Mask> out;
    for (const auto& x : s) {
      if (x.n() != n) throw ParameterError("basis " + x.to_string() + " is not a subset of [" + std::to_string(n) + "]");
      out.push_back(x.mask());
    }
    return out;
  }

  const KSubset& check_own(const KSubset& s) const {
    if (s.n() != n_) throw ParameterError("subset of [" + std::to_string(s.n()) + "] queried on a matroid on [" + std::to_string(n_) + "]");
    return s;
  }

  std::vector<KSubset> sorted_subsets(std::vector<Mask> masks) const {
    std::vector<KSubset> out;
    for (Mask m : masks) out.push_back(KSubset::from_mask(n_, m));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  int n_;
  int r_;
  std::vector<Mask> bases_;
  VertexBits member_;
};

}  // namespace pavecount

template <>
struct std::hash<pavecount::Matroid> {
  std::size_t operator()(const pavecount::Matroid& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(m.n() * 64 + m.rank());
    for (auto b : m.basis_masks()) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
