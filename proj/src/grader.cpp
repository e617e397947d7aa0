#include "daggrade/grader.hpp"

#include <algorithm>
#include <cassert>

#include "daggrade/kernels.hpp"

namespace daggrade {

ProblematicGraph build_problematic_graph(const Submission& s, const Problem& p) {
  ProblematicGraph out;
  // E0 = {(s_i, s_j) | i > j and a path s_i ~> s_j exists}: the submission
  // places s_j first, the graph demands the opposite.
  std::vector<std::pair<BlockIndex, BlockIndex>> pairs;
  for (std::size_t i = 1; i < s.sequence.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (p.exists_path(s.sequence[i], s.sequence[j])) {
        pairs.emplace_back(s.sequence[i], s.sequence[j]);
      }
    }
  }
  for (auto [u, v] : pairs) {
    out.blocks.push_back(u);
    out.blocks.push_back(v);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  out.blocks.erase(std::unique(out.blocks.begin(), out.blocks.end()), out.blocks.end());

  out.graph = Digraph(out.blocks.size());
  auto local = [&](BlockIndex b) {
    return static_cast<BlockIndex>(
        std::lower_bound(out.blocks.begin(), out.blocks.end(), b) - out.blocks.begin());
  };
  for (auto [u, v] : pairs) out.graph.add_edge(local(u), local(v));
  return out;
}

GradeReport grade_baseline(const Submission& s, const Problem& p, std::uint64_t cap) {
  const std::size_t m = s.sequence.size();
  const std::size_t n = p.solution_size();

  // Compare in solution-local symbols; distractors map to a sentinel that
  // never matches an ordering element.
  std::vector<std::uint16_t> query(m);
  for (std::size_t i = 0; i < m; ++i) {
    const BlockIndex local = p.solution_local_of(s.sequence[i]);
    query[i] = local == kInvalidBlock ? std::uint16_t{0xfffe} : local;
  }

  std::size_t best_lcs = 0;
  std::uint64_t count = 0;
  auto bump = [&](std::uint64_t c) {
    if (c > cap) {
      fail(Errc::cap_exceeded,
           "more than " + std::to_string(cap) + " topological orderings");
    }
  };

  if (n <= kernels::kLcsMaxTargetLen) {
    // Batched path: gather orderings into 16 transposed lanes, run the
    // dispatched kernel, fold the max LCS (min distance) across lanes.
    std::uint16_t tile[kernels::kLcsMaxTargetLen * kernels::kLcsBatchLanes];
    std::uint16_t lane_lcs[kernels::kLcsBatchLanes];
    std::size_t lanes_filled = 0;

    auto flush = [&] {
      if (lanes_filled == 0) return;
      for (std::size_t lane = lanes_filled; lane < kernels::kLcsBatchLanes; ++lane) {
        for (std::size_t j = 0; j < n; ++j) {
          tile[j * kernels::kLcsBatchLanes + lane] = kernels::kLcsPadSymbol;
        }
      }
      kernels::lcs_batch16(query.data(), m, tile, n, lane_lcs);
      for (std::size_t lane = 0; lane < lanes_filled; ++lane) {
        best_lcs = std::max<std::size_t>(best_lcs, lane_lcs[lane]);
      }
      lanes_filled = 0;
    };

    for_each_topological_ordering(p.dependency_graph(),
                                  [&](std::span<const BlockIndex> order) {
                                    bump(++count);
                                    for (std::size_t j = 0; j < n; ++j) {
                                      tile[j * kernels::kLcsBatchLanes + lanes_filled] =
                                          order[j];
                                    }
                                    if (++lanes_filled == kernels::kLcsBatchLanes) flush();
                                    return true;
                                  });
    flush();
  } else {
    for_each_topological_ordering(p.dependency_graph(),
                                  [&](std::span<const BlockIndex> order) {
                                    bump(++count);
                                    best_lcs = std::max(best_lcs, lcs_length(query, order));
                                    return true;
                                  });
  }

  assert(count > 0);  // a validated problem always has an ordering
  GradeReport report;
  report.deletions = m - best_lcs;
  report.insertions = n - best_lcs;
  report.d_star = report.deletions + report.insertions;
  report.score_percent = score(report.d_star, n);
  return report;
}

EditScript construct_edit_script(const Submission& s, const Problem& p,
                                 std::span<const BlockIndex> cover_blocks) {
  const ProblematicGraph pg = build_problematic_graph(s, p);
  std::vector<char> in_cover(p.block_count(), 0);
  for (BlockIndex b : cover_blocks) in_cover[b] = 1;
  for (auto [lu, lv] : pg.graph.edges()) {
    if (!in_cover[pg.blocks[lu]] && !in_cover[pg.blocks[lv]]) {
      fail(Errc::not_a_cover, "blocks " + p.id_of(pg.blocks[lu]) + " and " +
                                  p.id_of(pg.blocks[lv]) +
                                  " form an uncovered problematic pair");
    }
  }

  EditScript script;

  // Deletions: every distractor and every cover block, highest index first so
  // positions stay valid as the sequence shrinks.
  std::vector<BlockIndex> retained;  // solution-local ids, submission order
  for (std::size_t i = s.sequence.size(); i-- > 0;) {
    const BlockIndex b = s.sequence[i];
    if (p.is_distractor(b) || in_cover[b]) {
      script.ops.push_back({EditOp::Kind::Delete, b, static_cast<std::uint32_t>(i)});
    } else {
      retained.push_back(p.solution_local_of(b));
    }
  }
  std::reverse(retained.begin(), retained.end());

  // Target ordering: dependency graph plus a chain through the retained
  // subsequence, linearized smallest-id-first. The retained blocks have no
  // problematic pairs left, so the chain cannot create a cycle.
  const Digraph& dep = p.dependency_graph();
  const std::size_t n = p.solution_size();
  Digraph constrained(n);
  for (auto [u, v] : dep.edges()) constrained.add_edge(u, v);
  for (std::size_t i = 1; i < retained.size(); ++i) {
    constrained.add_edge(retained[i - 1], retained[i]);
  }

  std::vector<int> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(constrained.predecessors(static_cast<BlockIndex>(v)).size());
  }
  std::vector<char> placed(n, 0);
  std::vector<BlockIndex> target;  // solution-local
  target.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!placed[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    }
    assert(pick < n);
    placed[pick] = 1;
    for (BlockIndex w : constrained.successors(static_cast<BlockIndex>(pick))) --indeg[w];
    target.push_back(static_cast<BlockIndex>(pick));
  }

  // Insertions: walk the target; retained blocks are already in place, every
  // other block is inserted at its target index (ascending, so each position
  // is final at insertion time).
  std::size_t next_retained = 0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    if (next_retained < retained.size() && retained[next_retained] == target[t]) {
      ++next_retained;
      continue;
    }
    script.ops.push_back({EditOp::Kind::Insert, p.block_of_solution_local(target[t]),
                          static_cast<std::uint32_t>(t)});
  }
  assert(next_retained == retained.size());
  assert(script.canonical());
  return script;
}

MvcGradeResult grade_mvc_detailed(const Submission& s, const Problem& p) {
  MvcGradeResult result;
  result.problematic = build_problematic_graph(s, p);
  if (result.problematic.node_count() > kMaxProblematicNodes) {
    fail(Errc::submission_too_tangled,
         "problematic graph has " + std::to_string(result.problematic.node_count()) +
             " nodes (limit " + std::to_string(kMaxProblematicNodes) + ")");
  }

  for (BlockIndex local : minimum_vertex_cover(result.problematic.graph)) {
    result.cover.push_back(result.problematic.blocks[local]);
  }

  std::size_t num_distractors = 0;
  for (BlockIndex b : s.sequence) {
    if (p.is_distractor(b)) ++num_distractors;
  }

  GradeReport& report = result.report;
  report.deletions = num_distractors + result.cover.size();
  report.insertions = p.solution_size() - (s.sequence.size() - report.deletions);
  report.d_star = report.deletions + report.insertions;
  report.score_percent = score(report.d_star, p.solution_size());
  report.edit_script = construct_edit_script(s, p, result.cover);
  assert(report.edit_script->size() == report.d_star);
  return result;
}

GradeReport grade_mvc(const Submission& s, const Problem& p) {
  return grade_mvc_detailed(s, p).report;
}

std::optional<std::size_t> first_unsupported_line(const Submission& s, const Problem& p) {
  std::vector<char> seen(p.solution_size(), 0);
  for (std::size_t i = 0; i < s.sequence.size(); ++i) {
    const BlockIndex b = s.sequence[i];
    if (p.is_distractor(b)) return i;
    const BlockIndex local = p.solution_local_of(b);
    for (BlockIndex pred : p.dependency_graph().predecessors(local)) {
      if (!seen[pred]) return i;
    }
    seen[local] = 1;
  }
  return std::nullopt;
}

}  // namespace daggrade
