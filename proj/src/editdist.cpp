#include "daggrade/editdist.hpp"

#include <algorithm>

namespace daggrade {

bool EditScript::canonical() const {
  std::size_t i = 0;
  while (i < ops.size() && ops[i].kind == EditOp::Kind::Delete) {
    if (i > 0 && ops[i].position >= ops[i - 1].position) return false;
    ++i;
  }
  const std::size_t first_insert = i;
  for (; i < ops.size(); ++i) {
    if (ops[i].kind != EditOp::Kind::Insert) return false;
    if (i > first_insert && ops[i].position <= ops[i - 1].position) return false;
  }
  return true;
}

std::size_t lcs_length(std::span<const BlockIndex> a, std::span<const BlockIndex> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::uint32_t> prev(b.size() + 1, 0);
  std::vector<std::uint32_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const BlockIndex ai = a[i - 1];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = ai == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t edit_distance(std::span<const BlockIndex> a, std::span<const BlockIndex> b) {
  return a.size() + b.size() - 2 * lcs_length(a, b);
}

std::vector<BlockIndex> apply_edit_script(std::span<const BlockIndex> s,
                                          const EditScript& script) {
  std::vector<BlockIndex> seq(s.begin(), s.end());
  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case EditOp::Kind::Delete:
        if (op.position >= seq.size()) {
          fail(Errc::out_of_bounds, "delete at " + std::to_string(op.position) +
                                        " in sequence of length " +
                                        std::to_string(seq.size()));
        }
        seq.erase(seq.begin() + op.position);
        break;
      case EditOp::Kind::Insert:
        if (op.position > seq.size()) {
          fail(Errc::out_of_bounds, "insert at " + std::to_string(op.position) +
                                        " in sequence of length " +
                                        std::to_string(seq.size()));
        }
        if (std::find(seq.begin(), seq.end(), op.block) != seq.end()) {
          fail(Errc::duplicate_block_introduced,
               "insert would repeat block " + std::to_string(op.block));
        }
        seq.insert(seq.begin() + op.position, op.block);
        break;
    }
  }
  return seq;
}

}  // namespace daggrade
