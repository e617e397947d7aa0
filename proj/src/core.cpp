#include "daggrade/core.hpp"

#include <algorithm>
#include <numeric>

namespace daggrade {

Percent::Percent(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ <= 0) fail(Errc::out_of_bounds, "percent denominator must be positive");
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Percent Percent::score(std::size_t d_star, std::size_t solution_len) {
  if (solution_len == 0) fail(Errc::no_solution_nodes, "score requires |V| >= 1");
  const auto n = static_cast<std::int64_t>(solution_len);
  const auto d = static_cast<std::int64_t>(d_star);
  return Percent(100 * std::max<std::int64_t>(0, n - d), n);
}

std::string Percent::fixed1() const {
  // floor(value * 10 + 1/2) in exact integer arithmetic.
  const std::int64_t tenths = (num_ * 20 + den_) / (2 * den_);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::optional<BlockIndex> Problem::find_block(std::string_view id) const {
  auto it = index_of_.find(std::string(id));
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

ProblemDescription Problem::description() const {
  ProblemDescription d;
  d.blocks.reserve(block_count());
  for (std::size_t b = 0; b < block_count(); ++b) {
    d.blocks.push_back({ids_[b], texts_[b]});
  }
  for (BlockIndex b : solution_blocks_) d.solution_nodes.push_back(ids_[b]);
  for (auto [lu, lv] : dependency_.edges()) {
    d.edges.emplace_back(ids_[solution_blocks_[lu]], ids_[solution_blocks_[lv]]);
  }
  return d;
}

Problem validate_problem(const ProblemDescription& desc) {
  Problem p;

  std::vector<BlockSpec> blocks(desc.blocks.begin(), desc.blocks.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const BlockSpec& a, const BlockSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].id.empty()) fail(Errc::invalid_block_id, "empty block id");
    if (i > 0 && blocks[i].id == blocks[i - 1].id) {
      fail(Errc::duplicate_block_id, "block id '" + blocks[i].id + "' occurs twice");
    }
  }
  if (blocks.size() >= kInvalidBlock) {
    fail(Errc::too_large, "more than " + std::to_string(kInvalidBlock - 1) + " blocks");
  }

  p.ids_.reserve(blocks.size());
  p.texts_.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    p.ids_.push_back(blocks[b].id);
    p.texts_.push_back(blocks[b].text);
    p.index_of_.emplace(blocks[b].id, static_cast<BlockIndex>(b));
  }
  p.local_of_.assign(blocks.size(), kInvalidBlock);

  for (const BlockId& id : desc.solution_nodes) {
    auto it = p.index_of_.find(id);
    if (it == p.index_of_.end()) {
      fail(Errc::solution_node_not_a_block, "solution node '" + id + "' is not a block");
    }
    if (p.local_of_[it->second] != kInvalidBlock) {
      fail(Errc::duplicate_block_id, "solution node '" + id + "' listed twice");
    }
    p.local_of_[it->second] = 0;  // marked; real locals assigned below
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (p.local_of_[b] != kInvalidBlock) {
      p.local_of_[b] = static_cast<BlockIndex>(p.solution_blocks_.size());
      p.solution_blocks_.push_back(static_cast<BlockIndex>(b));
    }
  }
  if (p.solution_blocks_.empty()) {
    fail(Errc::no_solution_nodes, "a problem needs at least one solution node");
  }

  p.dependency_ = Digraph(p.solution_blocks_.size());
  for (const auto& [from, to] : desc.edges) {
    auto fi = p.index_of_.find(from);
    auto ti = p.index_of_.find(to);
    if (fi == p.index_of_.end() || p.local_of_[fi->second] == kInvalidBlock) {
      fail(Errc::edge_endpoint_not_in_solution_nodes,
           "edge endpoint '" + from + "' is not a solution node");
    }
    if (ti == p.index_of_.end() || p.local_of_[ti->second] == kInvalidBlock) {
      fail(Errc::edge_endpoint_not_in_solution_nodes,
           "edge endpoint '" + to + "' is not a solution node");
    }
    p.dependency_.add_edge(p.local_of_[fi->second], p.local_of_[ti->second]);
  }

  if (auto cycle = p.dependency_.find_cycle()) {
    std::string msg = "dependency cycle:";
    for (BlockIndex local : *cycle) {
      msg += " " + p.ids_[p.solution_blocks_[local]];
    }
    msg += " -> " + p.ids_[p.solution_blocks_[cycle->front()]];
    fail(Errc::cycle_detected, msg);
  }

  p.reach_ = Reachability::closure(p.dependency_);
  return p;
}

Submission validate_submission(const Problem& p, std::span<const BlockId> sequence) {
  Submission s;
  s.sequence.reserve(sequence.size());
  std::vector<char> seen(p.block_count(), 0);
  for (const BlockId& id : sequence) {
    auto b = p.find_block(id);
    if (!b) fail(Errc::unknown_block_id, "block '" + id + "' is not in this problem");
    if (seen[*b]) {
      fail(Errc::duplicate_block_in_submission, "block '" + id + "' occurs twice");
    }
    seen[*b] = 1;
    s.sequence.push_back(*b);
  }
  return s;
}

}  // namespace daggrade
