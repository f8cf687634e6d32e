#pragma once

#include "pavecount/bigcount.hpp"
#include "pavecount/error.hpp"
#include "pavecount/graph.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <semaphore>
#include <thread>
#include <unordered_map>
#include <vector>

namespace pavecount {

inline constexpr double kDefaultBudgetSeconds = 300.0;

struct CountOptions {
  double budget_s = kDefaultBudgetSeconds;
  /// Worker threads for subtree fan-out; 1 = sequential.
  unsigned threads = 1;
  /// Cache subgraph counts keyed by the surviving vertex set.
  bool memo = false;
  /// Recursion depth down to which subtrees may be handed to other workers.
  int spawn_depth = 8;
};

struct CountResult {
  BigCount count;
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
};

struct AlphaResult {
  std::size_t alpha = 0;
  std::vector<std::size_t> witness;  // a maximum stable set, ascending
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <std::size_t W>
using WordSet = std::array<std::uint64_t, W>;

template <std::size_t W>
struct WordSetHash {
  std::size_t operator()(const WordSet<W>& s) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto w : s) {
      h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

template <std::size_t W>
int popcount(const WordSet<W>& s) {
  int c = 0;
  for (auto w : s) c += std::popcount(w);
  return c;
}

template <std::size_t W>
bool is_empty(const WordSet<W>& s) {
  for (auto w : s)
    if (w) return false;
  return true;
}

template <std::size_t W>
int first_bit(const WordSet<W>& s) {
  for (std::size_t i = 0; i < W; ++i)
    if (s[i]) return static_cast<int>(i * 64) + std::countr_zero(s[i]);
  return -1;
}

template <std::size_t W>
void clear_bit(WordSet<W>& s, int v) {
  s[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

template <std::size_t W>
int popcount_and(const WordSet<W>& a, const WordSet<W>& b) {
  int c = 0;
  for (std::size_t i = 0; i < W; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

template <std::size_t W, typename Fn>
void for_each_bit(const WordSet<W>& s, Fn&& fn) {
  for (std::size_t i = 0; i < W; ++i)
    for (std::uint64_t x = s[i]; x != 0; x &= x - 1) fn(static_cast<int>(i * 64) + std::countr_zero(x));
}

template <std::size_t W>
std::vector<WordSet<W>> pack_adjacency(const VertexGraph& g) {
  std::vector<WordSet<W>> adj(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.n_words(); ++i) adj[v][i] = nb.data()[i];
  }
  return adj;
}

template <std::size_t W>
WordSet<W> pack(const VertexBits& b) {
  WordSet<W> s{};
  for (std::size_t i = 0; i < b.n_words(); ++i) s[i] = b.data()[i];
  return s;
}

// Shared deadline and node counter for one search.
class SearchClock {
public:
  explicit SearchClock(double budget_s)
      : start_(Clock::now()),
        deadline_(start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget_s))) {}

  void tick() {
    const auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (expired_.load(std::memory_order_relaxed)) throw_timeout();
    if ((n & 1023U) == 0 && Clock::now() > deadline_) {
      expired_.store(true, std::memory_order_relaxed);
      throw_timeout();
    }
  }

  std::uint64_t nodes() const { return nodes_.load(); }
  double elapsed_ms() const { return ms_since(start_); }

private:
  [[noreturn]] void throw_timeout() const {
    throw TimeoutError("time budget exhausted after " + std::to_string(nodes()) + " search nodes", nodes(),
                       elapsed_ms());
  }

  Clock::time_point start_;
  Clock::time_point deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> expired_{false};
};

// i(G[alive]) = i(G[alive - v]) + i(G[alive - N[v]]), v of maximum degree,
// with component splitting and closed forms for max degree <= 1.
template <std::size_t W>
class StableCounter {
public:
  using Set = WordSet<W>;

  StableCounter(const VertexGraph& g, const CountOptions& opt)
      : adj_(pack_adjacency<W>(g)), opt_(opt), clock_(opt.budget_s), slots_(static_cast<std::ptrdiff_t>(
                                                                            opt.threads > 1 ? opt.threads - 1 : 0)) {}

  BigCount run(const Set& alive) { return count(alive, 0); }
  const SearchClock& clock() const { return clock_; }

private:
  Set component_of(const Set& alive, int s) const {
    Set comp{};
    Set frontier{};
    frontier[static_cast<std::size_t>(s) >> 6] |= std::uint64_t{1} << (s & 63);
    comp = frontier;
    while (!is_empty(frontier)) {
      Set next{};
      for_each_bit(frontier, [&](int u) {
        for (std::size_t i = 0; i < W; ++i) next[i] |= adj_[u][i];
      });
      for (std::size_t i = 0; i < W; ++i) {
        next[i] &= alive[i] & ~comp[i];
        comp[i] |= next[i];
      }
      frontier = next;
    }
    return comp;
  }

  BigCount count(const Set& alive, int depth) {
    clock_.tick();
    if (is_empty(alive)) return 1;

    int pivot = -1;
    int best_deg = -1;
    int degree_sum = 0;
    for_each_bit(alive, [&](int v) {
      const int d = popcount_and(adj_[v], alive);
      degree_sum += d;
      if (d > best_deg) {
        best_deg = d;
        pivot = v;
      }
    });
    const int size = popcount(alive);
    if (best_deg == 0) return pow2(static_cast<std::uint64_t>(size));
    if (best_deg == 1) {
      const int edges = degree_sum / 2;
      return ipow(BigCount(3), static_cast<std::uint64_t>(edges)) * pow2(static_cast<std::uint64_t>(size - 2 * edges));
    }

    const Set comp = component_of(alive, first_bit(alive));
    if (comp != alive) {
      Set rest{};
      for (std::size_t i = 0; i < W; ++i) rest[i] = alive[i] & ~comp[i];
      BigCount a = count(comp, depth + 1);
      return a * count(rest, depth + 1);
    }

    if (opt_.memo) {
      std::lock_guard lock(memo_mutex_);
      if (auto it = memo_.find(alive); it != memo_.end()) return it->second;
    }

    Set without = alive;
    clear_bit(without, pivot);
    Set without_closed = without;
    for (std::size_t i = 0; i < W; ++i) without_closed[i] &= ~adj_[pivot][i];

    BigCount total;
    if (depth < opt_.spawn_depth && slots_.try_acquire()) {
      auto fut = std::async(std::launch::async, [this, without, depth] {
        struct Release {
          std::counting_semaphore<>& s;
          ~Release() { s.release(); }
        } guard{slots_};
        return count(without, depth + 1);
      });
      BigCount b = count(without_closed, depth + 1);
      total = fut.get() + b;
    } else {
      total = count(without, depth + 1);
      total += count(without_closed, depth + 1);
    }

    if (opt_.memo) {
      std::lock_guard lock(memo_mutex_);
      if (memo_.size() < kMemoLimit) memo_.emplace(alive, total);
    }
    return total;
  }

  static constexpr std::size_t kMemoLimit = 4'000'000;

  std::vector<Set> adj_;
  CountOptions opt_;
  SearchClock clock_;
  std::counting_semaphore<> slots_;
  std::mutex memo_mutex_;
  std::unordered_map<Set, BigCount, WordSetHash<W>> memo_;
};

// Maximum stable set by branch and bound; upper bound from a greedy clique cover.
template <std::size_t W>
class AlphaSearch {
public:
  using Set = WordSet<W>;

  AlphaSearch(const VertexGraph& g, double budget_s) : adj_(pack_adjacency<W>(g)), clock_(budget_s) {}

  void run(const Set& alive, std::vector<int> seed) {
    best_ = std::move(seed);
    std::vector<int> cur;
    search(alive, cur);
  }

  const std::vector<int>& best() const { return best_; }
  const SearchClock& clock() const { return clock_; }

private:
  int clique_cover_bound(Set rest) const {
    int cliques = 0;
    while (!is_empty(rest)) {
      Set cand = rest;
      ++cliques;
      // Grow one clique greedily from the lowest remaining vertex.
      while (!is_empty(cand)) {
        const int v = first_bit(cand);
        clear_bit(rest, v);
        clear_bit(cand, v);
        for (std::size_t i = 0; i < W; ++i) cand[i] &= adj_[v][i];
      }
    }
    return cliques;
  }

  void search(Set alive, std::vector<int>& cur) {
    clock_.tick();
    const std::size_t mark = cur.size();
    // Vertices of degree <= 1 lie in some maximum stable set.
    for (bool changed = true; changed;) {
      changed = false;
      for_each_bit(alive, [&](int v) {
        if (changed || !((alive[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U)) return;
        if (popcount_and(adj_[v], alive) <= 1) {
          cur.push_back(v);
          clear_bit(alive, v);
          for (std::size_t i = 0; i < W; ++i) alive[i] &= ~adj_[v][i];
          changed = true;
        }
      });
    }

    if (is_empty(alive)) {
      if (cur.size() > best_.size()) best_ = cur;
      cur.resize(mark);
      return;
    }
    if (cur.size() + static_cast<std::size_t>(clique_cover_bound(alive)) <= best_.size()) {
      cur.resize(mark);
      return;
    }

    int pivot = -1;
    int best_deg = -1;
    for_each_bit(alive, [&](int v) {
      const int d = popcount_and(adj_[v], alive);
      if (d > best_deg) {
        best_deg = d;
        pivot = v;
      }
    });

    Set take = alive;
    clear_bit(take, pivot);
    for (std::size_t i = 0; i < W; ++i) take[i] &= ~adj_[pivot][i];
    cur.push_back(pivot);
    search(take, cur);
    cur.pop_back();

    Set skip = alive;
    clear_bit(skip, pivot);
    search(skip, cur);
    cur.resize(mark);
  }

  std::vector<Set> adj_;
  SearchClock clock_;
  std::vector<int> best_;
};

template <template <std::size_t> class Fn, typename... Args>
decltype(auto) dispatch_words(std::size_t n_vertices, Args&&... args) {
  const std::size_t words = (n_vertices + 63) / 64;
  if (words <= 1) return Fn<1>{}(std::forward<Args>(args)...);
  if (words <= 2) return Fn<2>{}(std::forward<Args>(args)...);
  if (words <= 4) return Fn<4>{}(std::forward<Args>(args)...);
  if (words <= 8) return Fn<8>{}(std::forward<Args>(args)...);
  if (words <= 16) return Fn<16>{}(std::forward<Args>(args)...);
  if (words <= 32) return Fn<32>{}(std::forward<Args>(args)...);
  if (words <= 64) return Fn<64>{}(std::forward<Args>(args)...);
  throw ResourceError("graph with " + std::to_string(n_vertices) + " vertices exceeds the counting kernel limit of 4096");
}

template <std::size_t W>
struct CountImpl {
  CountResult operator()(const VertexGraph& g, const CountOptions& opt) const {
    StableCounter<W> counter(g, opt);
    CountResult res;
    res.count = counter.run(pack<W>(VertexBits::full(g.size())));
    res.nodes_explored = counter.clock().nodes();
    res.elapsed_ms = counter.clock().elapsed_ms();
    return res;
  }
};

template <std::size_t W>
struct AlphaImpl {
  AlphaResult operator()(const VertexGraph& g, double budget_s, std::vector<int> seed) const {
    AlphaSearch<W> search(g, budget_s);
    search.run(pack<W>(VertexBits::full(g.size())), std::move(seed));
    AlphaResult res;
    for (int v : search.best()) res.witness.push_back(static_cast<std::size_t>(v));
    std::sort(res.witness.begin(), res.witness.end());
    res.alpha = res.witness.size();
    res.nodes_explored = search.clock().nodes();
    res.elapsed_ms = search.clock().elapsed_ms();
    return res;
  }
};

// Minimum-degree greedy stable set; size is at least |V|/(Delta+1).
inline std::vector<int> greedy_stable_set(const VertexGraph& g) {
  VertexBits alive = VertexBits::full(g.size());
  std::vector<int> out;
  while (!alive.none()) {
    std::size_t pick = g.size();
    std::size_t pick_deg = g.size() + 1;
    for (auto v : alive.indices()) {
      VertexBits nb = g.neighbors(v);
      nb &= alive;
      const auto d = nb.count();
      if (d < pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    out.push_back(static_cast<int>(pick));
    alive.reset(pick);
    for (auto w : g.neighbors(pick).indices()) alive.reset(w);
  }
  return out;
}

}  // namespace detail

/// Exact number of stable sets i(G), the empty set included.
/// Throws TimeoutError when the budget runs out; no partial count is returned.
inline CountResult count_stable_sets(const VertexGraph& g, const CountOptions& opt = {}) {
  return detail::dispatch_words<detail::CountImpl>(g.size(), g, opt);
}

/// Exact independence number with one maximum stable set as witness.
inline AlphaResult independence_number(const VertexGraph& g, double budget_s = kDefaultBudgetSeconds) {
  if (g.size() == 0) return {};
  return detail::dispatch_words<detail::AlphaImpl>(g.size(), g, budget_s, detail::greedy_stable_set(g));
}

/// |V| / (Delta + 1), the greedy lower bound on alpha(G).
inline Rational greedy_alpha_bound(const VertexGraph& g) {
  if (g.size() == 0) throw ParameterError("greedy bound is undefined for the empty graph");
  return Rational(static_cast<long long>(g.size()), static_cast<long long>(g.max_degree() + 1));
}

struct EnumerationResult {
  std::uint64_t emitted = 0;
  /// Set when the cap stopped the stream before it was exhausted.
  bool truncated = false;
  /// Set when the visitor asked to stop.
  bool stopped = false;
  /// Set when stable sets above max_size exist and were skipped.
  bool size_limited = false;
};

/// Visits every stable set exactly once (ascending member indices), in
/// lexicographic order of the index sequences, starting with the empty set.
/// The visitor returns false to stop early. With max_size, larger sets are
/// skipped and reported through size_limited.
template <typename Visitor>
EnumerationResult enumerate_stable_sets(const VertexGraph& g, Visitor&& visit,
                                        std::optional<std::uint64_t> cap = std::nullopt,
                                        std::optional<std::size_t> max_size = std::nullopt) {
  EnumerationResult res;
  std::vector<std::size_t> cur;
  const std::size_t m = g.size();

  std::function<bool(const VertexBits&)> dfs = [&](const VertexBits& cand) -> bool {
    if (cap && res.emitted == *cap) {
      res.truncated = true;
      return false;
    }
    ++res.emitted;
    if (!visit(static_cast<const std::vector<std::size_t>&>(cur))) {
      res.stopped = true;
      return false;
    }
    if (max_size && cur.size() == *max_size) {
      if (!cand.none()) res.size_limited = true;
      return true;
    }
    for (auto v : cand.indices()) {
      VertexBits next(m);
      for (auto w : cand.indices())
        if (w > v && !g.adjacent(v, w)) next.set(w);
      cur.push_back(v);
      const bool go_on = dfs(next);
      cur.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  dfs(VertexBits::full(m));
  return res;
}

inline std::vector<std::vector<std::size_t>> collect_stable_sets(const VertexGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  enumerate_stable_sets(g, [&](const std::vector<std::size_t>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace pavecount
