#include "daggrade/digraph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace daggrade {

namespace detail {
std::atomic<std::uint64_t>& topo_enumeration_counter() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}
}  // namespace detail

namespace {

void insert_sorted(std::vector<BlockIndex>& v, BlockIndex x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

void Digraph::add_edge(BlockIndex from, BlockIndex to) {
  assert(from < node_count() && to < node_count());
  if (has_edge(from, to)) return;
  insert_sorted(succ_[from], to);
  insert_sorted(pred_[to], from);
  ++edge_count_;
}

bool Digraph::has_edge(BlockIndex from, BlockIndex to) const {
  assert(from < node_count() && to < node_count());
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

std::vector<std::pair<BlockIndex, BlockIndex>> Digraph::edges() const {
  std::vector<std::pair<BlockIndex, BlockIndex>> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < succ_.size(); ++u) {
    for (BlockIndex v : succ_[u]) {
      out.emplace_back(static_cast<BlockIndex>(u), v);
    }
  }
  return out;
}

std::optional<std::vector<BlockIndex>> Digraph::find_cycle() const {
  const std::size_t n = node_count();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> color(n, 0);
  std::vector<BlockIndex> stack;

  auto dfs = [&](auto&& self, BlockIndex v) -> std::optional<std::vector<BlockIndex>> {
    color[v] = 1;
    stack.push_back(v);
    for (BlockIndex w : succ_[v]) {
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        return std::vector<BlockIndex>(it, stack.end());
      }
      if (color[w] == 0) {
        if (auto cyc = self(self, w)) return cyc;
      }
    }
    stack.pop_back();
    color[v] = 2;
    return std::nullopt;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0) {
      if (auto cyc = dfs(dfs, static_cast<BlockIndex>(v))) return cyc;
    }
  }
  return std::nullopt;
}

Reachability Reachability::closure(const Digraph& g) {
  const std::size_t n = g.node_count();
  Reachability r;
  r.n_ = n;
  r.words_ = (n + 63) / 64;
  r.bits_.assign(n * r.words_, 0);
  if (n == 0) return r;

  // Kahn order, then fold successor rows in reverse.
  std::vector<int> indeg(n, 0);
  std::vector<BlockIndex> order;
  order.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(g.predecessors(static_cast<BlockIndex>(v)).size());
    if (indeg[v] == 0) order.push_back(static_cast<BlockIndex>(v));
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (BlockIndex w : g.successors(order[i])) {
      if (--indeg[w] == 0) order.push_back(w);
    }
  }
  if (order.size() != n) fail(Errc::cycle_detected, "closure requires an acyclic graph");

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BlockIndex u = *it;
    std::uint64_t* row = r.bits_.data() + u * r.words_;
    row[u >> 6] |= std::uint64_t{1} << (u & 63);
    for (BlockIndex w : g.successors(u)) {
      const std::uint64_t* wrow = r.bits_.data() + w * r.words_;
      for (std::size_t k = 0; k < r.words_; ++k) row[k] |= wrow[k];
    }
  }
  return r;
}

std::vector<std::vector<BlockIndex>> all_topological_orderings(const Digraph& g,
                                                               std::uint64_t cap) {
  std::vector<std::vector<BlockIndex>> out;
  std::uint64_t count = 0;
  for_each_topological_ordering(g, [&](std::span<const BlockIndex> order) {
    if (++count > cap) {
      fail(Errc::cap_exceeded,
           "more than " + std::to_string(cap) + " topological orderings");
    }
    out.emplace_back(order.begin(), order.end());
    return true;
  });
  return out;
}

std::uint64_t count_linear_extensions(const Digraph& g, std::size_t node_limit) {
  const std::size_t n = g.node_count();
  if (n > node_limit || n > 24) {
    fail(Errc::too_large, "linear extension counting limited to " +
                              std::to_string(std::min<std::size_t>(node_limit, 24)) +
                              " nodes, graph has " + std::to_string(n));
  }
  std::vector<std::uint32_t> pred_mask(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (BlockIndex u : g.predecessors(static_cast<BlockIndex>(v))) {
      pred_mask[v] |= std::uint32_t{1} << u;
    }
  }
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::uint64_t total = 0;
    for (std::uint32_t rest = mask; rest != 0;) {
      const std::uint32_t bit = rest & (~rest + 1);
      rest ^= bit;
      const unsigned v = static_cast<unsigned>(std::countr_zero(bit));
      // v can be placed last iff all its predecessors are already placed.
      if ((pred_mask[v] & ~mask) == 0 && (pred_mask[v] & bit) == 0) {
        if (__builtin_add_overflow(total, ways[mask ^ bit], &total)) {
          fail(Errc::too_large, "linear extension count exceeds 64 bits");
        }
      }
    }
    ways[mask] = total;
  }
  return ways[(std::size_t{1} << n) - 1];
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] != i + n - k) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<BlockIndex> minimum_vertex_cover(const Digraph& g) {
  // Undirected view, deduplicated.
  std::vector<std::pair<BlockIndex, BlockIndex>> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) return {};

  // A minimum cover never contains an isolated node, so search only over
  // edge-incident nodes (kept ascending: combinations below come out in
  // lexicographic order over node ids).
  std::vector<BlockIndex> incident;
  for (auto [u, v] : edges) {
    incident.push_back(u);
    incident.push_back(v);
  }
  std::sort(incident.begin(), incident.end());
  incident.erase(std::unique(incident.begin(), incident.end()), incident.end());

  std::vector<char> in_cover(g.node_count(), 0);
  for (std::size_t k = 1; k <= incident.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      for (std::size_t i : idx) in_cover[incident[i]] = 1;
      bool covered = true;
      for (auto [u, v] : edges) {
        if (!in_cover[u] && !in_cover[v]) {
          covered = false;
          break;
        }
      }
      if (covered) {
        std::vector<BlockIndex> out;
        out.reserve(k);
        for (std::size_t i : idx) out.push_back(incident[i]);
        return out;
      }
      for (std::size_t i : idx) in_cover[incident[i]] = 0;
    } while (next_combination(idx, incident.size()));
  }
  // The full incident set always covers; not reached.
  return incident;
}

}  // namespace daggrade
