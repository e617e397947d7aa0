#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "daggrade/base.hpp"

namespace daggrade {

// Directed graph over dense node ids 0..n-1. Acyclicity is not an invariant:
// dependency graphs are validated acyclic upstream, while inversion graphs
// built from submissions are arbitrary digraphs.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(std::size_t node_count)
      : succ_(node_count), pred_(node_count) {}

  std::size_t node_count() const { return succ_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // Duplicate edges are ignored. Self-loops are representable (and make the
  // graph cyclic).
  void add_edge(BlockIndex from, BlockIndex to);
  bool has_edge(BlockIndex from, BlockIndex to) const;

  std::span<const BlockIndex> successors(BlockIndex v) const { return succ_[v]; }
  std::span<const BlockIndex> predecessors(BlockIndex v) const { return pred_[v]; }

  // All edges, sorted by (from, to).
  std::vector<std::pair<BlockIndex, BlockIndex>> edges() const;

  bool is_acyclic() const { return !find_cycle().has_value(); }

  // One directed cycle v0 -> v1 -> ... -> vk -> v0, reported as [v0..vk],
  // if any exists. A self-loop yields a single-element cycle.
  std::optional<std::vector<BlockIndex>> find_cycle() const;

private:
  std::vector<std::vector<BlockIndex>> succ_;
  std::vector<std::vector<BlockIndex>> pred_;
  std::size_t edge_count_ = 0;
};

// Precomputed path-existence relation for a DAG: reachable(u, v) is true iff
// a directed path u ~> v exists. Reflexive by the empty path.
class Reachability {
public:
  Reachability() = default;

  // Transitive closure of g. Pre: g is acyclic.
  static Reachability closure(const Digraph& g);

  std::size_t node_count() const { return n_; }

  bool reachable(BlockIndex u, BlockIndex v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

namespace detail {
std::atomic<std::uint64_t>& topo_enumeration_counter();
}

// Number of enumeration runs started so far in this process. Lets tests pin
// down which code paths enumerate orderings.
inline std::uint64_t topo_enumeration_runs() {
  return detail::topo_enumeration_counter().load(std::memory_order_relaxed);
}

// Visits every topological ordering of g exactly once, in lexicographic order
// by node id. The visitor receives each ordering as a span and returns true to
// continue; returning false aborts the walk. Returns false iff aborted.
//
// A cyclic graph simply yields no orderings.
template <class Visitor>
bool for_each_topological_ordering(const Digraph& g, Visitor&& visit) {
  detail::topo_enumeration_counter().fetch_add(1, std::memory_order_relaxed);
  const std::size_t n = g.node_count();
  std::vector<int> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(g.predecessors(static_cast<BlockIndex>(v)).size());
  }
  std::vector<BlockIndex> order;
  order.reserve(n);
  std::vector<char> used(n, 0);

  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) {
      return visit(std::span<const BlockIndex>(order));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || indeg[v] != 0) continue;
      used[v] = 1;
      order.push_back(static_cast<BlockIndex>(v));
      for (BlockIndex w : g.successors(static_cast<BlockIndex>(v))) --indeg[w];
      const bool keep_going = self(self, depth + 1);
      for (BlockIndex w : g.successors(static_cast<BlockIndex>(v))) ++indeg[w];
      order.pop_back();
      used[v] = 0;
      if (!keep_going) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

// Every topological ordering, in lexicographic order by node id. Throws
// CapExceeded as soon as more than cap orderings would be produced.
// Pre: g is acyclic.
std::vector<std::vector<BlockIndex>> all_topological_orderings(const Digraph& g,
                                                               std::uint64_t cap);

inline constexpr std::size_t kDefaultCountNodeLimit = 24;

// Number of topological orderings without enumerating them, via the dynamic
// program over subsets (2^n states). Throws TooLarge if node_count exceeds
// node_limit or the count overflows 64 bits. Pre: g is acyclic.
std::uint64_t count_linear_extensions(const Digraph& g,
                                      std::size_t node_limit = kDefaultCountNodeLimit);

// Exhaustive minimum vertex cover over the underlying undirected edges,
// searching subsets from the smallest size upward. Among minimum covers,
// returns the lexicographically smallest node set. Returned ascending.
std::vector<BlockIndex> minimum_vertex_cover(const Digraph& g);

}  // namespace daggrade
