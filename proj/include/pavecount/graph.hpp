#pragma once

#include "pavecount/bitset.hpp"
#include "pavecount/error.hpp"
#include "pavecount/ksubset.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pavecount {

inline constexpr std::size_t kDefaultVertexCap = 1000;

struct GraphOptions {
  std::size_t vertex_cap = kDefaultVertexCap;
};

enum class GraphKind { abstract, johnson, distance_six, induced };

class VertexSubset;

/// Immutable finite simple graph with dense bit-vector adjacency.
/// Vertex i carries labels()[i] (empty for abstract graphs built from edge lists).
/// Copies share the same underlying data.
class VertexGraph {
public:
  struct Data {
    GraphKind kind = GraphKind::abstract;
    int ground = 0;      // n of the label subsets
    int label_size = 0;  // |label| for Johnson-type graphs
    std::vector<KSubset> labels;
    std::vector<VertexBits> adjacency;
  };

  VertexGraph() : data_(std::make_shared<Data>()) {}
  explicit VertexGraph(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  /// Abstract graph on m unlabeled vertices.
  static VertexGraph from_edges(std::size_t m, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    auto d = std::make_shared<Data>();
    d->adjacency.assign(m, VertexBits(m));
    for (auto [a, b] : edges) {
      if (a >= m || b >= m || a == b) throw ParameterError("bad edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      d->adjacency[a].set(b);
      d->adjacency[b].set(a);
    }
    return VertexGraph(std::move(d));
  }

  static VertexGraph complete(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) e.emplace_back(i, j);
    return from_edges(m, e);
  }

  static VertexGraph empty(std::size_t m) { return from_edges(m, {}); }

  std::size_t size() const noexcept { return data_->adjacency.size(); }
  GraphKind kind() const noexcept { return data_->kind; }
  int ground() const noexcept { return data_->ground; }
  int label_size() const noexcept { return data_->label_size; }
  bool has_labels() const noexcept { return !data_->labels.empty(); }
  const std::vector<KSubset>& labels() const noexcept { return data_->labels; }
  const KSubset& label(std::size_t i) const { return data_->labels.at(i); }

  bool adjacent(std::size_t a, std::size_t b) const { return data_->adjacency[a].test(b); }
  const VertexBits& neighbors(std::size_t v) const { return data_->adjacency[v]; }
  std::size_t degree(std::size_t v) const { return data_->adjacency[v].count(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < size(); ++v) d = std::max(d, degree(v));
    return d;
  }

  std::size_t n_edges() const {
    std::size_t s = 0;
    for (std::size_t v = 0; v < size(); ++v) s += degree(v);
    return s / 2;
  }

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j : neighbors(i).indices())
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  /// Index of a label, or size() when absent.
  std::size_t index_of(const KSubset& x) const {
    const auto& L = data_->labels;
    auto it = std::lower_bound(L.begin(), L.end(), x);
    return (it != L.end() && *it == x) ? static_cast<std::size_t>(it - L.begin()) : size();
  }

  const std::shared_ptr<const Data>& data() const noexcept { return data_; }

  bool same_as(const VertexGraph& o) const noexcept { return data_ == o.data_; }

private:
  std::shared_ptr<const Data> data_;
};

/// Subset of the vertices of one particular graph.
class VertexSubset {
public:
  VertexSubset(const VertexGraph& parent, VertexBits members) : parent_(parent), members_(std::move(members)) {
    if (members_.size_bits() != parent_.size()) throw ParameterError("vertex subset size mismatch");
  }

  static VertexSubset all(const VertexGraph& g) { return {g, VertexBits::full(g.size())}; }
  static VertexSubset none(const VertexGraph& g) { return {g, VertexBits(g.size())}; }

  const VertexGraph& parent() const noexcept { return parent_; }
  const VertexBits& bits() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }
  bool contains(std::size_t v) const { return members_.test(v); }
  std::vector<std::size_t> indices() const { return members_.indices(); }

  std::vector<KSubset> labels() const {
    std::vector<KSubset> out;
    for (auto i : indices()) out.push_back(parent_.label(i));
    return out;
  }

  bool is_stable() const {
    for (auto v : indices())
      if (parent_.neighbors(v).intersects(members_)) return false;
    return true;
  }

private:
  VertexGraph parent_;
  VertexBits members_;
};

namespace detail {

inline void check_cap(std::uint64_t n_vertices, const GraphOptions& opt) {
  if (n_vertices > opt.vertex_cap)
    throw ResourceError("graph would have " + std::to_string(n_vertices) + " vertices, above the vertex cap of " +
                        std::to_string(opt.vertex_cap));
}

template <typename AdjacentFn>
VertexGraph build_on_ksubsets(GraphKind kind, int n, int k, AdjacentFn&& adjacent) {
  auto d = std::make_shared<VertexGraph::Data>();
  d->kind = kind;
  d->ground = n;
  d->label_size = k;
  d->labels = all_ksubsets(n, k);
  const std::size_t m = d->labels.size();
  d->adjacency.assign(m, VertexBits(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (adjacent(std::popcount(d->labels[i].mask() & d->labels[j].mask()))) {
        d->adjacency[i].set(j);
        d->adjacency[j].set(i);
      }
  return VertexGraph(std::move(d));
}

inline void require_johnson(const VertexGraph& g) {
  if (g.kind() != GraphKind::johnson) throw ParameterError("operation requires a Johnson graph J(n,r)");
}

}  // namespace detail

/// J(n,r): r-subsets of [n], adjacent iff they meet in r-1 elements.
inline VertexGraph johnson_graph(int n, int r, const GraphOptions& opt = {}) {
  detail::check_ground(n);
  if (r <= 0 || r >= n)
    throw ParameterError("Johnson graph needs 0 < r < n (got n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  detail::check_cap(binomial_u64(n, r), opt);
  return detail::build_on_ksubsets(GraphKind::johnson, n, r, [r](int common) { return common == r - 1; });
}

/// G^(6)_{n,r+1}: (r+1)-subsets of [n], adjacent iff they meet in at least r-1
/// elements. Stable sets are constant-weight codes with minimum distance >= 6.
inline VertexGraph distance_six_graph(int n, int r, const GraphOptions& opt = {}) {
  detail::check_ground(n);
  if (r < 2 || r > n - 3)
    throw ParameterError("distance-six graph requires 2 <= r <= n-3 (got n=" + std::to_string(n) +
                         ", r=" + std::to_string(r) + ")");
  detail::check_cap(binomial_u64(n, r + 1), opt);
  return detail::build_on_ksubsets(GraphKind::distance_six, n, r + 1, [r](int common) { return common >= r - 1; });
}

/// V_H = { X : |X cap H| <= r-2 } as a subset of the Johnson graph `j`.
inline VertexSubset vh_vertex_set(const VertexGraph& j, const KSubset& h) {
  detail::require_johnson(j);
  const int n = j.ground();
  const int r = j.label_size();
  if (r < 2) throw ParameterError("V_H requires r >= 2");
  if (h.n() != n) throw ParameterError("H is not a subset of [" + std::to_string(n) + "]");
  if (h.k() < r || h.k() > n - 1)
    throw ParameterError("|H| = " + std::to_string(h.k()) + " outside [r, n-1] = [" + std::to_string(r) + ", " +
                         std::to_string(n - 1) + "]");
  VertexBits bits(j.size());
  for (std::size_t v = 0; v < j.size(); ++v)
    if (intersection_size(j.label(v), h) <= r - 2) bits.set(v);
  return {j, std::move(bits)};
}

inline VertexSubset vh_vertex_set(int n, int r, const KSubset& h, const GraphOptions& opt = {}) {
  return vh_vertex_set(johnson_graph(n, r, opt), h);
}

/// V_C = r-subsets meeting every member of the (r+1)-uniform family C in at most r-2 elements.
inline VertexSubset vc_vertex_set(const VertexGraph& j, std::span<const KSubset> family) {
  detail::require_johnson(j);
  const int r = j.label_size();
  if (family.empty()) throw ParameterError("V_C needs a nonempty family");
  for (const auto& c : family)
    if (c.n() != j.ground() || c.k() != r + 1)
      throw ParameterError("family member " + c.to_string() + " is not an (r+1)-subset of [n]");
  VertexBits bits(j.size());
  for (std::size_t v = 0; v < j.size(); ++v) {
    const bool ok = std::all_of(family.begin(), family.end(),
                                [&](const KSubset& c) { return intersection_size(j.label(v), c) <= r - 2; });
    if (ok) bits.set(v);
  }
  return {j, std::move(bits)};
}

inline VertexSubset vc_vertex_set(int n, int r, std::span<const KSubset> family, const GraphOptions& opt = {}) {
  return vc_vertex_set(johnson_graph(n, r, opt), family);
}

/// Graham-Sloane fiber U_{n,r,k}: r-subsets whose element sum is k mod n.
inline VertexSubset gs_fiber(const VertexGraph& j, int k) {
  detail::require_johnson(j);
  const int n = j.ground();
  if (k < 0 || k >= n) throw ParameterError("fiber index " + std::to_string(k) + " outside [0, n)");
  VertexBits bits(j.size());
  for (std::size_t v = 0; v < j.size(); ++v) {
    int s = 0;
    for (int e : j.label(v).members()) s += e;
    if (s % n == k) bits.set(v);
  }
  return {j, std::move(bits)};
}

inline VertexSubset gs_fiber(int n, int r, int k, const GraphOptions& opt = {}) {
  return gs_fiber(johnson_graph(n, r, opt), k);
}

/// Induced subgraph G[U]; vertex order and labels follow G.
inline VertexGraph induced(const VertexGraph& g, const VertexSubset& u) {
  if (!u.parent().same_as(g)) throw ParameterError("vertex subset belongs to a different graph");
  const auto keep = u.indices();
  std::vector<std::size_t> pos(g.size(), g.size());
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = i;

  auto d = std::make_shared<VertexGraph::Data>();
  d->kind = GraphKind::induced;
  d->ground = g.ground();
  d->label_size = g.label_size();
  if (g.has_labels())
    for (auto v : keep) d->labels.push_back(g.label(v));
  d->adjacency.assign(keep.size(), VertexBits(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (auto w : g.neighbors(keep[i]).indices())
      if (pos[w] != g.size()) d->adjacency[i].set(pos[w]);
  return VertexGraph(std::move(d));
}

/// Plain-text adjacency: "n_vertices n_edges" then "i j" per edge (0-based, i < j).
inline void write_adjacency(std::ostream& os, const VertexGraph& g) {
  const auto e = g.edges();
  os << g.size() << ' ' << e.size() << '\n';
  for (auto [i, j] : e) os << i << ' ' << j << '\n';
}

}  // namespace pavecount
