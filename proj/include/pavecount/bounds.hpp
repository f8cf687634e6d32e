#pragma once

#include "pavecount/bigcount.hpp"
#include "pavecount/constructions.hpp"
#include "pavecount/error.hpp"
#include "pavecount/graph.hpp"
#include "pavecount/ksubset.hpp"
#include "pavecount/matroid.hpp"
#include "pavecount/stable_count.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pavecount {

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

inline bool vh_hypothesis(int n, int r, int t) { return r >= 2 && r < n && t >= 1 && t <= n - r - 1; }

/// |V_H| = C(n,r) - C(r+t,r) - C(r+t,r-1)(n-r-t) for |H| = r+t.
inline BigCount vh_size_formula(int n, int r, int t) {
  if (!vh_hypothesis(n, r, t))
    throw ParameterError("V_H size formula needs 2 <= r < n and 1 <= t <= n-r-1 (got n=" + std::to_string(n) +
                         ", r=" + std::to_string(r) + ", t=" + std::to_string(t) + ")");
  return binomial(n, r) - binomial(r + t, r) - binomial(r + t, r - 1) * (n - r - t);
}

/// delta_n = ((r+1) + C(r+1,2)(n-r-1)) / C(n,r).
inline Rational delta_n(int n, int r) {
  if (r < 2 || r >= n) throw ParameterError("delta_n needs 2 <= r < n");
  const BigCount num = BigCount(r + 1) + binomial(r + 1, 2) * (n - r - 1);
  return Rational(num, binomial(n, r));
}

/// Maximum degree of G^(6)_{n,r+1}: (r+1)(n-r-1) + C(r+1,2) C(n-r-1,2).
inline BigCount distance_six_degree_formula(int n, int r) {
  return BigCount(r + 1) * (n - r - 1) + binomial(r + 1, 2) * binomial(n - r - 1, 2);
}

// ---------------------------------------------------------------------------
// Exact comparisons
// ---------------------------------------------------------------------------

/// Whether  x >= c * s^(p/q)  for nonnegative integers x, c, s and q > 0,
/// decided exactly by raising both sides to the q-th power.
inline bool geq_scaled_power(const BigCount& x, const BigCount& c, const BigCount& s, const Rational& exponent) {
  const BigCount p = boost::multiprecision::numerator(exponent);
  const BigCount q = boost::multiprecision::denominator(exponent);
  const auto qq = q.convert_to<std::uint64_t>();
  BigCount lhs = ipow(x, qq);
  BigCount rhs = ipow(c, qq);
  if (p >= 0)
    rhs *= ipow(s, p.convert_to<std::uint64_t>());
  else
    lhs *= ipow(s, (-p).convert_to<std::uint64_t>());
  return lhs >= rhs;
}

// ---------------------------------------------------------------------------
// Check records
// ---------------------------------------------------------------------------

enum class Verdict { holds, fails, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

/// One evaluated inequality or identity. "holds" is only ever recorded from an
/// exact integer or rational comparison; the log2 fields are for display.
struct BoundCheck {
  std::string name;
  int n = 0;
  int r = 0;
  int t = 0;  // 0 when the statement has no t
  std::string params;  // extra parameters (H, U, C, ...)
  std::optional<BigCount> lhs;
  std::optional<BigCount> rhs;
  LogValue lhs_log2 = LogValue::minus_infinity();
  LogValue rhs_log2 = LogValue::minus_infinity();
  Verdict verdict = Verdict::not_applicable;
  std::string note;
};

struct LabOptions {
  double budget_s = kDefaultBudgetSeconds;
  unsigned threads = 1;
  GraphOptions graph;
  /// Largest n for which the paving census is run to obtain exact p_n - sp_n.
  int census_nmax = 7;
  /// Largest n for which one-large-hyperplane streams are materialized.
  int materialize_nmax = 7;
  HybridCaps hybrid;
};

/// Evaluates the finite-n statements. Caches i(J(n,r)) and p_n - sp_n.
class BoundsLab {
public:
  explicit BoundsLab(LabOptions opt = {}) : opt_(std::move(opt)) {}

  const LabOptions& options() const noexcept { return opt_; }

  CountOptions count_options() const {
    CountOptions c;
    c.budget_s = opt_.budget_s;
    c.threads = opt_.threads;
    return c;
  }

  BigCount count(const VertexGraph& g) const { return count_stable_sets(g, count_options()).count; }

  /// sp_{n,r} = i(J(n,r)).
  BigCount sparse_paving_count(int n, int r) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, r);
    if (auto it = sp_cache_.find(key); it != sp_cache_.end()) return it->second;
    BigCount v = (r == 0 || r == n) ? BigCount(1) : count(johnson_graph(n, r, opt_.graph));
    sp_cache_.emplace(key, v);
    return v;
  }

  /// Exact p_n - sp_n from the paving census over all ranks, when n <= census_nmax.
  std::optional<BigCount> exact_nonsparse_total(int n) {
    if (n > opt_.census_nmax) return std::nullopt;
    std::lock_guard lock(mu_);
    if (auto it = gap_cache_.find(n); it != gap_cache_.end()) return it->second;
    BigCount v = nonsparse_paving_total(n, opt_.budget_s);
    gap_cache_.emplace(n, v);
    return v;
  }

  // -- V_H size ---------------------------------------------------------------

  BoundCheck check_vh_size(int n, int r, int t, const KSubset& h) const {
    BoundCheck c = base("vh-size", n, r, t);
    c.params = "H=" + h.to_string();
    if (!vh_hypothesis(n, r, t) || h.k() != r + t) return c;
    const VertexSubset vh = vh_vertex_set(johnson_graph(n, r, opt_.graph), h);
    set_sides(c, BigCount(vh.size()), vh_size_formula(n, r, t));
    c.verdict = *c.lhs == *c.rhs ? Verdict::holds : Verdict::fails;
    return c;
  }

  // -- Induced-subgraph (Shearer-type) inequality ------------------------------

  /// log2 i(G[U]) / |U| >= log2 i(G) / |V|, checked as i(G[U])^|V| >= i(G)^|U|.
  /// G is expected to be vertex-transitive (a Johnson graph).
  BoundCheck check_shearer(const VertexGraph& g, const VertexSubset& u, const std::string& label,
                           std::optional<BigCount> i_g = std::nullopt) const {
    BoundCheck c = base("shearer", g.ground(), g.label_size(), 0);
    c.params = label;
    if (u.empty()) {
      c.note = "U empty";
      return c;
    }
    try {
      const BigCount whole = i_g ? *i_g : count(g);
      const BigCount part = count(induced(g, u));
      const auto nu = static_cast<std::uint64_t>(u.size());
      const auto nv = static_cast<std::uint64_t>(g.size());
      c.lhs = part;
      c.rhs = whole;
      c.lhs_log2 = LogValue(LogValue::of(part).precise() / static_cast<long double>(nu));
      c.rhs_log2 = LogValue(LogValue::of(whole).precise() / static_cast<long double>(nv));
      c.verdict = compare_powers(part, nv, whole, nu) >= 0 ? Verdict::holds : Verdict::fails;
      c.note = "|U|=" + std::to_string(nu) + " |V|=" + std::to_string(nv);
    } catch (const TimeoutError& e) {
      c.note = std::string("timeout: ") + e.what();
    }
    return c;
  }

  /// The standard Shearer battery on J(n,r): U = V_H for H = {1..r+t} and every
  /// valid t, every Graham-Sloane fiber, and 50 deterministic index ranges.
  std::vector<BoundCheck> check_shearer_suite(int n, int r) {
    std::vector<BoundCheck> rows;
    const VertexGraph j = johnson_graph(n, r, opt_.graph);
    BigCount whole;
    try {
      whole = sparse_paving_count(n, r);
    } catch (const TimeoutError& e) {
      rows.push_back(base("shearer", n, r, 0));
      rows.back().note = std::string("timeout: ") + e.what();
      return rows;
    }
    if (r >= 2)
      for (int t = 1; t <= n - r - 1; ++t) {
        const KSubset h = KSubset::from_mask(n, detail::low_bits(r + t));
        const VertexSubset u = vh_vertex_set(j, h);
        if (!u.empty()) rows.push_back(check_shearer(j, u, "U=V_H H=" + h.to_string(), whole));
      }
    for (int k = 0; k < n; ++k) {
      const VertexSubset u = gs_fiber(j, k);
      if (!u.empty()) rows.push_back(check_shearer(j, u, "U=fiber k=" + std::to_string(k), whole));
    }
    const std::size_t m = j.size();
    for (std::size_t q = 0; q < 50; ++q) {
      const std::size_t start = (q * 7) % m;
      const std::size_t stop = std::min(m, start + 1 + (q * 13) % m);
      VertexBits bits(m);
      for (std::size_t i = start; i < stop; ++i) bits.set(i);
      rows.push_back(check_shearer(j, VertexSubset(j, bits),
                                   "U=range[" + std::to_string(start) + "," + std::to_string(stop) + ")", whole));
    }
    for (auto& row : rows) {
      row.n = n;
      row.r = r;
    }
    return rows;
  }

  // -- Fixed-H count ------------------------------------------------------------

  /// For every set X of size > r: the number of non-sparse rank-r paving
  /// matroids on [n] having X as a hyperplane. Read off the census, cached.
  const std::map<Mask, BigCount>& hyperplane_tally(int n, int r) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, r);
    if (auto it = q_cache_.find(key); it != q_cache_.end()) return it->second;
    std::map<Mask, BigCount> q;
    CensusOptions copt;
    copt.budget_s = opt_.budget_s;
    census_paving(
        n, r,
        [&](const Matroid& m) {
          if (m.is_sparse_paving()) return true;
          for (const auto& h : m.hyperplanes())
            if (h.k() > r) ++q[h.mask()];
          return true;
        },
        copt);
    return q_cache_.emplace(key, std::move(q)).first->second;
  }

  /// q_{n,r,t}(H) >= i(J[V_H]) and q >= sp^{|V_H|/C(n,r)} for every H of size r+t.
  /// q is exact (paving census) when n <= census_nmax; otherwise only the
  /// constructive count for the first H is compared and q is reported as not available.
  std::vector<BoundCheck> check_induced_count_bound(int n, int r, int t) {
    std::vector<BoundCheck> rows;
    if (!vh_hypothesis(n, r, t)) {
      rows.push_back(base("induced-count", n, r, t));
      rows.back().note = "hypothesis 2 <= r < n, 1 <= t <= n-r-1 unmet";
      return rows;
    }
    try {
      const VertexGraph j = johnson_graph(n, r, opt_.graph);
      const BigCount sp = sparse_paving_count(n, r);
      const auto total = binomial_u64(n, r);

      const bool exact = n <= opt_.census_nmax;
      const std::map<Mask, BigCount> empty;
      const std::map<Mask, BigCount>& q = exact ? hyperplane_tally(n, r) : empty;

      for (const auto& h : enumerate_ksubsets(n, r + t)) {
        const VertexSubset vh = vh_vertex_set(j, h);
        const BigCount ivh = count(induced(j, vh));
        BoundCheck a = base("induced-count", n, r, t);
        a.params = "H=" + h.to_string();
        BoundCheck b = base("induced-count-power", n, r, t);
        b.params = a.params;
        if (exact) {
          const auto it = q.find(h.mask());
          const BigCount qh = it == q.end() ? BigCount(0) : it->second;
          set_sides(a, qh, ivh);
          a.verdict = qh >= ivh ? Verdict::holds : Verdict::fails;
          a.note = "q exact from paving census";
          if (vh.empty()) {
            b.note = "V_H empty";
          } else {
            const Rational e(static_cast<long long>(vh.size()), static_cast<long long>(total));
            b.lhs = qh;
            b.rhs = sp;
            b.lhs_log2 = LogValue::of(qh);
            b.rhs_log2 = LogValue(LogValue::of(sp).precise() * static_cast<long double>(vh.size()) /
                                  static_cast<long double>(total));
            b.verdict = geq_scaled_power(qh, 1, sp, e) ? Verdict::holds : Verdict::fails;
            b.note = "exponent " + to_string(e);
          }
          rows.push_back(std::move(a));
          rows.push_back(std::move(b));
        } else {
          // Constructive side only: distinct matroids built for this H.
          const VertexGraph g = induced(j, vh);
          MatroidSet seen;
          std::uint64_t built = 0;
          enumerate_stable_sets(g, [&](const std::vector<std::size_t>& idx) {
            std::vector<KSubset> stable;
            for (auto i : idx) stable.push_back(g.label(i));
            seen.insert(one_large_hyperplane(n, r, t, h, stable).matroid);
            ++built;
            return true;
          });
          set_sides(a, BigCount(seen.size()), ivh);
          a.verdict = BigCount(seen.size()) == ivh ? Verdict::holds : Verdict::fails;
          a.note = "constructive count only; exact q not available above the census range";
          rows.push_back(std::move(a));
          break;  // all H are equivalent under permutations of [n]
        }
      }
    } catch (const TimeoutError& e) {
      rows.push_back(base("induced-count", n, r, t));
      rows.back().note = std::string("timeout: ") + e.what();
    }
    return rows;
  }

  // -- Amplified one-hyperplane bound -----------------------------------------

  /// p_n - sp_n >= C(n,r+1) sp_{n,r}^{1-delta_n}, plus the disjointness identity
  /// |one-large-hyperplane stream| = C(n,r+1) i(J[V_H]) for t = 1.
  std::vector<BoundCheck> check_amplified(int n, std::optional<int> rank = std::nullopt) {
    const int r = rank.value_or(n / 2);
    std::vector<BoundCheck> rows;
    BoundCheck c = base("amplified", n, r, 1);
    if (!vh_hypothesis(n, r, 1)) {
      c.note = "hypothesis 2 <= r <= n-2 unmet";
      rows.push_back(std::move(c));
      return rows;
    }
    try {
      const VertexGraph j = johnson_graph(n, r, opt_.graph);
      const BigCount sp = sparse_paving_count(n, r);
      const KSubset h = KSubset::from_mask(n, detail::low_bits(r + 1));
      const BigCount ivh = count(induced(j, vh_vertex_set(j, h)));
      const BigCount choices = binomial(n, r + 1);
      const BigCount constructive = choices * ivh;
      const Rational exponent = Rational(1) - delta_n(n, r);

      BigCount lhs;
      if (auto gap = exact_nonsparse_total(n)) {
        lhs = *gap;
        c.note = "lhs exact p_n - sp_n from paving census";
      } else {
        lhs = constructive;
        c.note = "lhs constructive C(n,r+1) i(J[V_H]) (census out of range)";
      }
      c.lhs = lhs;
      c.rhs = std::nullopt;
      c.lhs_log2 = LogValue::of(lhs);
      c.rhs_log2 = LogValue(LogValue::of(choices).precise() +
                            static_cast<long double>(exponent.convert_to<long double>()) * LogValue::of(sp).precise());
      c.params = "delta=" + to_string(delta_n(n, r)) + " sp=" + to_decimal(sp);
      c.verdict = geq_scaled_power(lhs, choices, sp, exponent) ? Verdict::holds : Verdict::fails;
      rows.push_back(std::move(c));

      BoundCheck cons = base("amplified-constructive", n, r, 1);
      cons.params = c.params;
      set_sides(cons, constructive, BigCount(0));
      cons.rhs_log2 = rows.back().rhs_log2;
      cons.rhs = std::nullopt;
      cons.verdict = geq_scaled_power(constructive, choices, sp, exponent) ? Verdict::holds : Verdict::fails;
      cons.note = "C(n,r+1) i(J[V_H]) against the same right side";
      rows.push_back(std::move(cons));

      if (auto gap = exact_nonsparse_total(n)) {
        BoundCheck le = base("amplified-vs-census", n, r, 1);
        set_sides(le, *gap, constructive);
        le.verdict = *gap >= constructive ? Verdict::holds : Verdict::fails;
        le.note = "p_n - sp_n >= C(n,r+1) i(J[V_H])";
        rows.push_back(std::move(le));
      }

      if (n <= opt_.materialize_nmax) {
        BoundCheck d = base("amplified-disjoint", n, r, 1);
        const auto s = enumerate_one_large_hyperplane(n, r, 1, [](const ConstructionRecord&) { return true; },
                                                      std::nullopt, opt_.graph);
        set_sides(d, BigCount(s.distinct), constructive);
        d.verdict = (s.all_distinct() && BigCount(s.distinct) == constructive) ? Verdict::holds : Verdict::fails;
        d.note = "records=" + std::to_string(s.emitted) + " distinct=" + std::to_string(s.distinct);
        rows.push_back(std::move(d));
      }
    } catch (const TimeoutError& e) {
      BoundCheck t = base("amplified", n, r, 1);
      t.note = std::string("timeout: ") + e.what();
      rows.push_back(std::move(t));
    }
    return rows;
  }

  // -- Graham-Sloane fibers --------------------------------------------------------

  std::vector<BoundCheck> check_gs_bound(int n, int r) {
    std::vector<BoundCheck> rows;
    if (r <= 0 || r >= n) {
      rows.push_back(base("gs-bound", n, r, 0));
      rows.back().note = "needs 0 < r < n";
      return rows;
    }
    const VertexGraph j = johnson_graph(n, r, opt_.graph);
    const BigCount total = binomial(n, r);

    BoundCheck fib = base("gs-fibers", n, r, 0);
    VertexBits seen(j.size());
    bool stable = true;
    bool disjoint = true;
    std::size_t largest = 0;
    for (int k = 0; k < n; ++k) {
      const VertexSubset u = gs_fiber(j, k);
      stable = stable && u.is_stable();
      disjoint = disjoint && !u.bits().intersects(seen);
      seen |= u.bits();
      largest = std::max(largest, u.size());
    }
    const bool partition = disjoint && seen.count() == j.size();
    set_sides(fib, BigCount(seen.count()), total);
    fib.verdict = (stable && partition) ? Verdict::holds : Verdict::fails;
    fib.note = std::string("stable=") + (stable ? "yes" : "no") + " partition=" + (partition ? "yes" : "no");
    rows.push_back(std::move(fib));

    BoundCheck mx = base("gs-max-fiber", n, r, 0);
    mx.lhs = BigCount(largest);
    mx.lhs_log2 = LogValue(std::log2(static_cast<long double>(largest)));
    mx.rhs_log2 = LogValue(std::log2(static_cast<long double>(total.convert_to<double>()) / n));
    mx.verdict = BigCount(largest) * n >= total ? Verdict::holds : Verdict::fails;
    mx.note = "max fiber * n >= C(n,r); witness contributes 2^" + std::to_string(largest) + " stable sets";
    rows.push_back(std::move(mx));

    BoundCheck b = base("gs-bound", n, r, 0);
    try {
      const BigCount sp = sparse_paving_count(n, r);
      b.lhs = sp;
      b.lhs_log2 = LogValue::of(sp);
      b.rhs_log2 = LogValue(static_cast<long double>(total.convert_to<double>()) / n);
      b.verdict = compare_powers(sp, static_cast<std::uint64_t>(n), BigCount(2), total.convert_to<std::uint64_t>()) >= 0
                      ? Verdict::holds
                      : Verdict::fails;
      b.note = "sp^n >= 2^C(n,r)";
    } catch (const TimeoutError& e) {
      b.note = std::string("incomplete: ") + e.what();
    }
    rows.push_back(std::move(b));
    return rows;
  }

  // -- Distance-six family --------------------------------------------------------

  std::vector<BoundCheck> check_distance_six(int n, int r) {
    std::vector<BoundCheck> rows;
    if (r < 2 || r > n - 3) {
      rows.push_back(base("d6-count", n, r, 0));
      rows.back().note = "hypothesis 2 <= r <= n-3 unmet";
      return rows;
    }
    try {
      const VertexGraph g = distance_six_graph(n, r, opt_.graph);
      const auto vcount = static_cast<std::uint64_t>(g.size());
      const auto delta = static_cast<std::uint64_t>(g.max_degree());

      BoundCheck deg = base("d6-max-degree", n, r, 0);
      set_sides(deg, BigCount(delta), distance_six_degree_formula(n, r));
      deg.verdict = *deg.lhs == *deg.rhs ? Verdict::holds : Verdict::fails;
      rows.push_back(std::move(deg));

      const BigCount i6 = count(g);
      const auto alpha = independence_number(g, opt_.budget_s).alpha;

      BoundCheck chain = base("d6-alpha", n, r, 0);
      set_sides(chain, i6, pow2(alpha));
      chain.verdict = i6 >= pow2(alpha) ? Verdict::holds : Verdict::fails;
      chain.note = "i(G6) >= 2^alpha, alpha=" + std::to_string(alpha);
      rows.push_back(std::move(chain));

      BoundCheck greedy = base("d6-greedy", n, r, 0);
      const Rational gb = greedy_alpha_bound(g);
      greedy.lhs = BigCount(alpha);
      greedy.lhs_log2 = LogValue(static_cast<long double>(alpha));
      greedy.rhs_log2 = LogValue(gb.convert_to<long double>());
      greedy.verdict = Rational(static_cast<long long>(alpha)) >= gb ? Verdict::holds : Verdict::fails;
      greedy.note = "alpha >= |V|/(Delta+1) = " + to_string(gb) + " (log2 columns hold the exponents)";
      rows.push_back(std::move(greedy));

      BigCount lhs;
      BoundCheck cnt = base("d6-count", n, r, 0);
      if (auto gap = exact_nonsparse_total(n)) {
        lhs = *gap;
        cnt.note = "lhs exact p_n - sp_n";
      } else {
        // Injectivity of C -> M(C) supplies i(G6) - 1 distinct non-sparse paving matroids.
        MatroidSet seen;
        std::uint64_t built = 0;
        enumerate_stable_sets(g, [&](const std::vector<std::size_t>& idx) {
          if (idx.empty()) return true;
          std::vector<KSubset> code;
          for (auto i : idx) code.push_back(g.label(i));
          seen.insert(distance_six_construction(n, r, code).matroid);
          ++built;
          return true;
        });
        lhs = BigCount(seen.size());
        cnt.note = "lhs = distinct distance-six matroids (" + std::to_string(built) + " built)";
      }
      set_sides(cnt, lhs, i6 - 1);
      cnt.verdict = lhs >= i6 - 1 ? Verdict::holds : Verdict::fails;
      rows.push_back(std::move(cnt));

      BoundCheck expl = base("d6-explicit", n, r, 0);
      expl.lhs = lhs;
      expl.lhs_log2 = LogValue::of(lhs);
      expl.rhs_log2 = LogValue(static_cast<long double>(vcount) / static_cast<long double>(delta + 1));
      expl.verdict = compare_powers(lhs + 1, delta + 1, BigCount(2), vcount) >= 0 ? Verdict::holds : Verdict::fails;
      expl.note = "(lhs+1)^(Delta+1) >= 2^|V|; rhs_log2 is log2 of 2^{|V|/(Delta+1)}";
      rows.push_back(std::move(expl));
    } catch (const TimeoutError& e) {
      rows.push_back(base("d6-count", n, r, 0));
      rows.back().note = std::string("timeout: ") + e.what();
    }
    return rows;
  }

  // -- Hybrid sum ----------------------------------------------------------------

  std::vector<BoundCheck> check_hybrid_sum(int n, int r) {
    std::vector<BoundCheck> rows;
    if (r < 2 || r > n - 3) {
      rows.push_back(base("hybrid-injective", n, r, 0));
      rows.back().note = "hypothesis 2 <= r <= n-3 unmet";
      return rows;
    }
    try {
      const auto sum = enumerate_hybrid(n, r, opt_.hybrid, [](const ConstructionRecord&) {}, opt_.graph);
      const std::string caps = "max|C|=" + std::to_string(opt_.hybrid.max_code_size) +
                               (sum.partial() ? " partial lower bound" : " complete");

      BoundCheck inj = base("hybrid-injective", n, r, 0);
      inj.params = caps;
      if (sum.stable_cap_hit) {
        set_sides(inj, BigCount(sum.distinct), BigCount(sum.materialized));
        inj.note = "per-C stable-set cap hit; distinct vs materialized";
        inj.verdict = sum.distinct == sum.materialized ? Verdict::holds : Verdict::fails;
      } else {
        set_sides(inj, BigCount(sum.distinct), sum.sum);
        inj.note = "codes=" + std::to_string(sum.codes);
        inj.verdict = BigCount(sum.distinct) == sum.sum ? Verdict::holds : Verdict::fails;
      }
      rows.push_back(std::move(inj));

      if (auto gap = exact_nonsparse_total(n)) {
        BoundCheck le = base("hybrid-vs-census", n, r, 0);
        le.params = caps;
        set_sides(le, *gap, sum.sum);
        le.verdict = *gap >= sum.sum ? Verdict::holds : Verdict::fails;
        rows.push_back(std::move(le));
      }

      BoundCheck terms = base("hybrid-term-power", n, r, 0);
      terms.params = caps;
      const BigCount sp = sparse_paving_count(n, r);
      const auto total = binomial_u64(n, r);
      const VertexGraph j = johnson_graph(n, r, opt_.graph);
      std::uint64_t checked = 0;
      std::string first_failure;
      for (const auto& [code, term] : sum.terms) {
        const auto vc = vc_vertex_set(j, code).size();
        if (vc == 0) continue;
        ++checked;
        if (!geq_scaled_power(term, 1, sp, Rational(static_cast<long long>(vc), static_cast<long long>(total))) &&
            first_failure.empty()) {
          first_failure = "C=" + code.front().to_string() + "...";
        }
      }
      terms.lhs = BigCount(checked);
      terms.lhs_log2 = LogValue::of(BigCount(checked));
      terms.rhs_log2 = LogValue::of(BigCount(checked));
      terms.verdict = first_failure.empty() ? Verdict::holds : Verdict::fails;
      terms.note = first_failure.empty() ? "i(J[V_C]) >= sp^{|V_C|/C(n,r)} for " + std::to_string(checked) + " terms"
                                         : "first failure " + first_failure;
      rows.push_back(std::move(terms));

      BoundCheck total_row = base("hybrid-sum", n, r, 0);
      total_row.params = caps;
      total_row.lhs = sum.sum;
      total_row.lhs_log2 = LogValue::of(sum.sum);
      total_row.verdict = Verdict::not_applicable;
      total_row.note = "sum over " + std::to_string(sum.codes) + " codes (report only)";
      rows.push_back(std::move(total_row));
    } catch (const TimeoutError& e) {
      rows.push_back(base("hybrid-injective", n, r, 0));
      rows.back().note = std::string("timeout: ") + e.what();
    }
    return rows;
  }

  // -- Sparse paving census vs stable sets -----------------------------------------

  BoundCheck check_sparse_census(int n, int r) {
    BoundCheck c = base("sparse-census", n, r, 0);
    try {
      std::uint64_t produced = 0;
      bool all_sparse = true;
      CensusOptions copt;
      copt.budget_s = opt_.budget_s;
      census_sparse_paving(
          n, r,
          [&](const Matroid& m) {
            ++produced;
            all_sparse = all_sparse && m.is_sparse_paving();
            return true;
          },
          copt, opt_.graph);
      set_sides(c, BigCount(produced), sparse_paving_count(n, r));
      c.verdict = (all_sparse && *c.lhs == *c.rhs) ? Verdict::holds : Verdict::fails;
      c.note = all_sparse ? "all outputs sparse paving" : "non-sparse output found";
    } catch (const TimeoutError& e) {
      c.note = std::string("timeout: ") + e.what();
    }
    return c;
  }

private:
  static BoundCheck base(std::string name, int n, int r, int t) {
    BoundCheck c;
    c.name = std::move(name);
    c.n = n;
    c.r = r;
    c.t = t;
    return c;
  }

  static void set_sides(BoundCheck& c, const BigCount& lhs, const BigCount& rhs) {
    c.lhs = lhs;
    c.rhs = rhs;
    c.lhs_log2 = LogValue::of(lhs);
    c.rhs_log2 = LogValue::of(rhs);
  }

  LabOptions opt_;
  std::mutex mu_;
  std::map<std::pair<int, int>, BigCount> sp_cache_;
  std::map<int, BigCount> gap_cache_;
  std::map<std::pair<int, int>, std::map<Mask, BigCount>> q_cache_;
};

// ---------------------------------------------------------------------------
// Ratio table (exploratory; no verdicts)
// ---------------------------------------------------------------------------

struct RatioRow {
  int n = 0;
  int r = 0;
  int t = 1;
  std::optional<BigCount> sp;        // i(J(n,r))
  std::optional<BigCount> i_vh;      // i(J(n,r)[V_H])
  BigCount vh_size = 0;
  BigCount choices = 0;              // C(n,r+1)
  Rational delta = 0;
  bool complete() const noexcept { return sp.has_value() && i_vh.has_value(); }
};

/// Middle-rank rows n = 4..n_max with r = floor(n/2), t = 1, H = {1..r+1}.
inline std::vector<RatioRow> ratio_table(int n_max, BoundsLab& lab) {
  std::vector<RatioRow> rows;
  for (int n = 4; n <= n_max; ++n) {
    RatioRow row;
    row.n = n;
    row.r = n / 2;
    if (!vh_hypothesis(n, row.r, 1)) continue;
    row.vh_size = vh_size_formula(n, row.r, 1);
    row.choices = binomial(n, row.r + 1);
    row.delta = delta_n(n, row.r);
    try {
      row.sp = lab.sparse_paving_count(n, row.r);
      const VertexGraph j = johnson_graph(n, row.r, lab.options().graph);
      const KSubset h = KSubset::from_mask(n, detail::low_bits(row.r + 1));
      row.i_vh = lab.count(induced(j, vh_vertex_set(j, h)));
    } catch (const TimeoutError&) {
      // cell stays incomplete
    } catch (const ResourceError&) {
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pavecount
