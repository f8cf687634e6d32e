#pragma once

#include "pavecount/bigcount.hpp"
#include "pavecount/error.hpp"
#include "pavecount/graph.hpp"
#include "pavecount/ksubset.hpp"
#include "pavecount/matroid.hpp"
#include "pavecount/stable_count.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace pavecount {

/// The family admits no basis: every r-subset lies inside some member.
class NoBasisError : public ParameterError {
public:
  using ParameterError::ParameterError;
};

/// Hyperplane family on [n] for rank r: members H with r <= |H| <= n-1,
/// pairwise |H1 cap H2| <= r-2, and at least one r-subset inside no member.
/// Members are kept ordered by (size, colex).
class HyperplaneFamily {
public:
  HyperplaneFamily(int n, int r, std::vector<KSubset> members) : n_(n), r_(r), members_(std::move(members)) {
    check_nk(n, r);
    if (r < 1 || r >= n)
      throw ParameterError("hyperplane family needs 1 <= r < n (got n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& h = members_[i];
      if (h.n() != n) throw ParameterError("member " + h.to_string() + " is not a subset of [" + std::to_string(n) + "]");
      if (h.k() < r || h.k() > n - 1)
        throw ParameterError("member " + h.to_string() + " has size outside [r, n-1] = [" + std::to_string(r) + ", " +
                             std::to_string(n - 1) + "]");
      if (i > 0 && members_[i - 1] == h) throw ParameterError("member " + h.to_string() + " listed twice");
    }
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = i + 1; j < members_.size(); ++j)
        if (intersection_size(members_[i], members_[j]) > r - 2)
          throw ParameterError("members " + members_[i].to_string() + " and " + members_[j].to_string() + " meet in " +
                               std::to_string(intersection_size(members_[i], members_[j])) + " > r-2 = " +
                               std::to_string(r - 2) + " elements");
    bool uncovered = false;
    for (const auto& x : enumerate_ksubsets(n, r))
      if (!covered(x.mask())) {
        uncovered = true;
        break;
      }
    if (!uncovered) throw NoBasisError("no basis: every " + std::to_string(r) + "-subset lies inside a member");
  }

  int n() const noexcept { return n_; }
  int rank() const noexcept { return r_; }
  const std::vector<KSubset>& members() const noexcept { return members_; }

  std::vector<KSubset> large_members() const {
    std::vector<KSubset> out;
    for (const auto& h : members_)
      if (h.k() > r_) out.push_back(h);
    return out;
  }
  std::vector<KSubset> rank_sized_members() const {
    std::vector<KSubset> out;
    for (const auto& h : members_)
      if (h.k() == r_) out.push_back(h);
    return out;
  }

  bool covered(Mask x) const {
    return std::any_of(members_.begin(), members_.end(), [x](const KSubset& h) { return (x & ~h.mask()) == 0; });
  }

  friend bool operator==(const HyperplaneFamily&, const HyperplaneFamily&) = default;

private:
  int n_;
  int r_;
  std::vector<KSubset> members_;
};

/// Bases = r-subsets contained in no member. The result is a paving matroid whose
/// hyperplanes of size >= r are exactly the members.
inline Matroid build_from_hyperplane_family(const HyperplaneFamily& f, Matroid::Validate validate = Matroid::Validate::no) {
  std::vector<Mask> bases;
  for (const auto& x : enumerate_ksubsets(f.n(), f.rank()))
    if (!f.covered(x.mask())) bases.push_back(x.mask());
  return Matroid(f.n(), f.rank(), bases, validate);
}

/// Inverse of build_from_hyperplane_family on paving matroids of rank >= 1.
inline HyperplaneFamily decompose_paving(const Matroid& m) {
  if (m.rank() < 1 || m.rank() >= m.n()) throw ParameterError("decompose_paving needs 1 <= rank < n");
  if (!m.is_paving()) throw ParameterError("decompose_paving: matroid is not paving");
  std::vector<KSubset> large;
  for (const auto& h : m.hyperplanes())
    if (h.k() >= m.rank()) large.push_back(h);
  return HyperplaneFamily(m.n(), m.rank(), std::move(large));
}

enum class Provenance { one_large_hyperplane, gs_fiber, distance_six, hybrid, census };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::one_large_hyperplane: return "one-large-hyperplane";
    case Provenance::gs_fiber: return "gs-fiber";
    case Provenance::distance_six: return "distance-six";
    case Provenance::hybrid: return "hybrid";
    case Provenance::census: return "census";
  }
  return "?";
}

struct ConstructionRecord {
  Provenance provenance;
  HyperplaneFamily family;
  Matroid matroid;
};

namespace detail {

inline void require_pairwise_stable_in_johnson(std::span<const KSubset> sets, int r) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const int c = intersection_size(sets[i], sets[j]);
      if (c == r - 1 || sets[i] == sets[j])
        throw ParameterError("not stable: " + sets[i].to_string() + " and " + sets[j].to_string() +
                             " are adjacent in J(n,r)");
    }
}

inline void require_distance_six_code(int n, int r, std::span<const KSubset> code) {
  if (r < 2 || r > n - 3)
    throw ParameterError("distance-six construction requires 2 <= r <= n-3 (got n=" + std::to_string(n) +
                         ", r=" + std::to_string(r) + ")");
  if (code.empty()) throw ParameterError("distance-six construction needs a nonempty family C");
  for (const auto& c : code)
    if (c.n() != n || c.k() != r + 1) throw ParameterError("member " + c.to_string() + " of C is not an (r+1)-subset of [n]");
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      if (code[i] == code[j] || intersection_size(code[i], code[j]) > r - 2)
        throw ParameterError("C is not stable in the distance-six graph: " + code[i].to_string() + " and " +
                             code[j].to_string());
}

inline std::vector<KSubset> concat(std::span<const KSubset> a, std::span<const KSubset> b) {
  std::vector<KSubset> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

/// Family {H} cup I with |H| = r+t and I a stable set of J(n,r)[V_H].
inline ConstructionRecord one_large_hyperplane(int n, int r, int t, const KSubset& h, std::span<const KSubset> stable) {
  check_nk(n, r);
  if (r < 2 || r >= n) throw ParameterError("one-large-hyperplane needs 2 <= r < n");
  if (t < 1 || t > n - r - 1) throw ParameterError("t = " + std::to_string(t) + " outside [1, n-r-1]");
  if (h.n() != n || h.k() != r + t) throw ParameterError("H must be an (r+t)-subset of [n]");
  for (const auto& x : stable) {
    if (x.n() != n || x.k() != r) throw ParameterError("member " + x.to_string() + " of I is not an r-subset");
    if (intersection_size(x, h) > r - 2) throw ParameterError("member " + x.to_string() + " of I is not in V_H");
  }
  detail::require_pairwise_stable_in_johnson(stable, r);
  HyperplaneFamily fam(n, r, detail::concat(std::span<const KSubset>(&h, 1), stable));
  Matroid m = build_from_hyperplane_family(fam);
  return {Provenance::one_large_hyperplane, std::move(fam), std::move(m)};
}

/// Distance-six family: a nonempty stable set C of G^(6)_{n,r+1}.
inline ConstructionRecord distance_six_construction(int n, int r, std::span<const KSubset> code) {
  detail::require_distance_six_code(n, r, code);
  HyperplaneFamily fam(n, r, std::vector<KSubset>(code.begin(), code.end()));
  Matroid m = build_from_hyperplane_family(fam);
  return {Provenance::distance_six, std::move(fam), std::move(m)};
}

/// C cup I with C stable in G^(6)_{n,r+1} and I a stable set of J(n,r)[V_C].
inline ConstructionRecord hybrid_construction(int n, int r, std::span<const KSubset> code, std::span<const KSubset> stable) {
  detail::require_distance_six_code(n, r, code);
  for (const auto& x : stable) {
    if (x.n() != n || x.k() != r) throw ParameterError("member " + x.to_string() + " of I is not an r-subset");
    for (const auto& c : code)
      if (intersection_size(x, c) > r - 2) throw ParameterError("member " + x.to_string() + " of I is not in V_C");
  }
  detail::require_pairwise_stable_in_johnson(stable, r);
  HyperplaneFamily fam(n, r, detail::concat(code, stable));
  Matroid m = build_from_hyperplane_family(fam);
  return {Provenance::hybrid, std::move(fam), std::move(m)};
}

/// Dedup set over basis families.
class MatroidSet {
public:
  /// Returns true if m was not seen before.
  bool insert(const Matroid& m) {
    const auto& ind = m.basis_indicator();
    std::vector<std::uint64_t> key(ind.data(), ind.data() + ind.n_words());
    key.push_back(static_cast<std::uint64_t>(m.n()) << 8 | static_cast<std::uint64_t>(m.rank()));
    return seen_.insert(std::move(key)).second;
  }
  std::size_t size() const noexcept { return seen_.size(); }

private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto w : v) {
        h ^= w;
        h *= 1099511628211ULL;
        h ^= h >> 29;
      }
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> seen_;
};

struct StreamSummary {
  std::uint64_t emitted = 0;
  std::uint64_t distinct = 0;
  bool truncated = false;
  bool all_distinct() const noexcept { return distinct == emitted; }
};

/// All one-large-hyperplane matroids for (n, r, t): every (r+t)-subset H and every
/// stable set I of J(n,r)[V_H], H in colex order. Tracks pairwise distinctness.
template <typename Visitor>
StreamSummary enumerate_one_large_hyperplane(int n, int r, int t, Visitor&& visit,
                                             std::optional<std::uint64_t> cap = std::nullopt,
                                             const GraphOptions& gopt = {}) {
  if (r < 2 || r >= n) throw ParameterError("one-large-hyperplane needs 2 <= r < n");
  if (t < 1 || t > n - r - 1) throw ParameterError("t = " + std::to_string(t) + " outside [1, n-r-1]");
  const VertexGraph j = johnson_graph(n, r, gopt);
  StreamSummary sum;
  MatroidSet seen;
  for (const auto& h : enumerate_ksubsets(n, r + t)) {
    const VertexSubset vh = vh_vertex_set(j, h);
    const VertexGraph g = induced(j, vh);
    bool go_on = true;
    enumerate_stable_sets(g, [&](const std::vector<std::size_t>& idx) {
      if (cap && sum.emitted == *cap) {
        sum.truncated = true;
        return go_on = false;
      }
      std::vector<KSubset> stable;
      for (auto i : idx) stable.push_back(g.label(i));
      auto rec = one_large_hyperplane(n, r, t, h, stable);
      ++sum.emitted;
      if (seen.insert(rec.matroid)) ++sum.distinct;
      return go_on = visit(rec);
    });
    if (!go_on) break;
  }
  return sum;
}

struct CensusOptions {
  std::optional<std::uint64_t> cap;
  double budget_s = kDefaultBudgetSeconds;
};

namespace detail {

// Backtracking over hyperplane families. Candidates are ordered by (size, colex)
// and added in increasing order, so each family appears once.
template <typename Visitor>
class FamilyEnumerator {
public:
  FamilyEnumerator(int n, int r, Visitor& visit, const CensusOptions& opt)
      : n_(n), r_(r), total_(binomial_u64(n, r)), visit_(visit), opt_(opt), clock_(opt.budget_s) {
    for (int k = r; k <= n - 1; ++k)
      for (const auto& s : enumerate_ksubsets(n, k)) candidates_.push_back(s.mask());
  }

  StreamSummary run() {
    std::vector<Mask> fam;
    dfs(fam, 0, 0);
    return sum_;
  }

private:
  bool dfs(std::vector<Mask>& fam, std::size_t next, std::uint64_t covered) {
    clock_.tick();
    if (opt_.cap && sum_.emitted == *opt_.cap) {
      sum_.truncated = true;
      return false;
    }
    ++sum_.emitted;
    ++sum_.distinct;
    if (!visit_(static_cast<const std::vector<Mask>&>(fam))) return false;
    for (std::size_t c = next; c < candidates_.size(); ++c) {
      const Mask h = candidates_[c];
      const std::uint64_t cov = covered + binomial_u64(std::popcount(h), r_);
      if (cov >= total_) continue;  // no r-set left uncovered; stays so for every extension
      bool ok = true;
      for (Mask g : fam)
        if (std::popcount(g & h) > r_ - 2) {
          ok = false;
          break;
        }
      if (!ok) continue;
      fam.push_back(h);
      const bool go_on = dfs(fam, c + 1, cov);
      fam.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  int n_;
  int r_;
  std::uint64_t total_;
  Visitor& visit_;
  CensusOptions opt_;
  SearchClock clock_;
  std::vector<Mask> candidates_;
  StreamSummary sum_;
};

inline std::vector<KSubset> to_subsets(int n, const std::vector<Mask>& masks) {
  std::vector<KSubset> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.push_back(KSubset::from_mask(n, m));
  return out;
}

inline Matroid trivial_rank_matroid(int n, int r) {
  const Mask b = r == 0 ? 0 : low_bits(n);
  return Matroid(n, r, std::span<const Mask>(&b, 1), Matroid::Validate::no);
}

}  // namespace detail

/// Raw hyperplane-family stream for rank r on [n] (1 <= r < n), as member masks.
template <typename Visitor>
StreamSummary enumerate_hyperplane_families(int n, int r, Visitor&& visit, const CensusOptions& opt = {}) {
  check_nk(n, r);
  if (r < 1 || r >= n) throw ParameterError("hyperplane families need 1 <= r < n");
  detail::FamilyEnumerator<std::remove_reference_t<Visitor>> e(n, r, visit, opt);
  return e.run();
}

/// Every rank-r paving matroid on [n]. Ranks 0 and n contribute one matroid each.
template <typename Visitor>
StreamSummary census_paving(int n, int r, Visitor&& visit, const CensusOptions& opt = {}) {
  check_nk(n, r);
  if (r == 0 || r == n) {
    StreamSummary s;
    if (opt.cap && *opt.cap == 0) return s.truncated = true, s;
    s.emitted = s.distinct = 1;
    visit(detail::trivial_rank_matroid(n, r));
    return s;
  }
  return enumerate_hyperplane_families(
      n, r,
      [&](const std::vector<Mask>& fam) {
        HyperplaneFamily f(n, r, detail::to_subsets(n, fam));
        return visit(build_from_hyperplane_family(f));
      },
      opt);
}

/// Every rank-r sparse paving matroid on [n]: complements of stable sets of J(n,r).
template <typename Visitor>
StreamSummary census_sparse_paving(int n, int r, Visitor&& visit, const CensusOptions& opt = {},
                                   const GraphOptions& gopt = {}) {
  check_nk(n, r);
  StreamSummary s;
  if (r == 0 || r == n) {
    if (opt.cap && *opt.cap == 0) return s.truncated = true, s;
    s.emitted = s.distinct = 1;
    visit(detail::trivial_rank_matroid(n, r));
    return s;
  }
  const VertexGraph j = johnson_graph(n, r, gopt);
  detail::SearchClock clock(opt.budget_s);
  auto res = enumerate_stable_sets(
      j,
      [&](const std::vector<std::size_t>& idx) {
        clock.tick();
        VertexBits out(j.size());
        for (auto i : idx) out.set(i);
        std::vector<Mask> bases;
        for (std::size_t v = 0; v < j.size(); ++v)
          if (!out.test(v)) bases.push_back(j.label(v).mask());
        return visit(Matroid(n, r, bases, Matroid::Validate::no));
      },
      opt.cap);
  s.emitted = s.distinct = res.emitted;
  s.truncated = res.truncated;
  return s;
}

/// Exact paving / sparse / non-sparse tallies at one rank, from the family census.
struct PavingTally {
  BigCount paving = 0;
  BigCount sparse = 0;
  BigCount nonsparse = 0;
};

inline PavingTally paving_tally(int n, int r, double budget_s = kDefaultBudgetSeconds) {
  check_nk(n, r);
  PavingTally t;
  if (r == 0 || r == n) {
    t.paving = t.sparse = 1;
    return t;
  }
  CensusOptions opt;
  opt.budget_s = budget_s;
  enumerate_hyperplane_families(
      n, r,
      [&](const std::vector<Mask>& fam) {
        const bool large = std::any_of(fam.begin(), fam.end(), [r](Mask h) { return std::popcount(h) > r; });
        ++t.paving;
        ++(large ? t.nonsparse : t.sparse);
        return true;
      },
      opt);
  return t;
}

/// p_n - sp_n: non-sparse paving matroids on [n] summed over all ranks.
inline BigCount nonsparse_paving_total(int n, double budget_s = kDefaultBudgetSeconds) {
  BigCount total = 0;
  for (int r = 0; r <= n; ++r) total += paving_tally(n, r, budget_s).nonsparse;
  return total;
}

struct HybridCaps {
  /// Largest |C| enumerated.
  std::size_t max_code_size = 4;
  /// Stable sets I materialized per C; counting is never capped.
  std::optional<std::uint64_t> per_code_stable_cap;
  double budget_s = kDefaultBudgetSeconds;
};

struct HybridSummary {
  BigCount sum = 0;                 // sum over enumerated C of i(J(n,r)[V_C])
  std::uint64_t codes = 0;          // nonempty C enumerated
  bool code_cap_hit = false;        // some stable C larger than the cap exists
  bool stable_cap_hit = false;      // some C had more than per_code_stable_cap sets I
  std::uint64_t materialized = 0;   // (C, I) pairs built into matroids
  std::uint64_t distinct = 0;       // distinct matroids among those
  std::vector<std::pair<std::vector<KSubset>, BigCount>> terms;  // (C, i(J[V_C]))
  bool partial() const noexcept { return code_cap_hit || stable_cap_hit; }
};

/// Hybrid construction over nonempty stable sets C of G^(6)_{n,r+1} with |C| <= cap.
/// Every record is passed to `visit`.
template <typename Visitor>
HybridSummary enumerate_hybrid(int n, int r, const HybridCaps& caps, Visitor&& visit, const GraphOptions& gopt = {}) {
  const VertexGraph d6 = distance_six_graph(n, r, gopt);
  const VertexGraph j = johnson_graph(n, r, gopt);
  HybridSummary sum;
  MatroidSet seen;
  CountOptions copt;
  copt.budget_s = caps.budget_s;
  detail::SearchClock clock(caps.budget_s);

  auto outer = enumerate_stable_sets(d6, [&](const std::vector<std::size_t>& cidx) {
    clock.tick();
    if (cidx.empty()) return true;
    std::vector<KSubset> code;
    for (auto i : cidx) code.push_back(d6.label(i));
    const VertexSubset vc = vc_vertex_set(j, code);
    const VertexGraph g = induced(j, vc);
    const BigCount term = count_stable_sets(g, copt).count;
    sum.sum += term;
    ++sum.codes;
    sum.terms.emplace_back(code, term);
    auto res = enumerate_stable_sets(
        g,
        [&](const std::vector<std::size_t>& iidx) {
          std::vector<KSubset> stable;
          for (auto i : iidx) stable.push_back(g.label(i));
          auto rec = hybrid_construction(n, r, code, stable);
          ++sum.materialized;
          if (seen.insert(rec.matroid)) ++sum.distinct;
          visit(rec);
          return true;
        },
        caps.per_code_stable_cap);
    if (res.truncated) sum.stable_cap_hit = true;
    return true;
  }, std::nullopt, caps.max_code_size);
  sum.code_cap_hit = outer.size_limited;
  return sum;
}

}  // namespace pavecount
