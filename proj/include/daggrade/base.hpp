#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace daggrade {

// Dense handle for a block within one validated problem. Handles are assigned
// in byte-wise order of the block id strings, so handle order == id order.
using BlockIndex = std::uint16_t;

inline constexpr BlockIndex kInvalidBlock = 0xffff;

enum class Errc {
  duplicate_block_id,
  edge_endpoint_not_in_solution_nodes,
  solution_node_not_a_block,
  cycle_detected,
  invalid_block_id,
  no_solution_nodes,
  duplicate_block_in_submission,
  unknown_block_id,
  cap_exceeded,
  too_large,
  out_of_bounds,
  duplicate_block_introduced,
  not_a_cover,
  submission_too_tangled,
  parse_error,
  no_data,
  infeasible_spec,
  io_error,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_block_id: return "duplicate_block_id";
    case Errc::edge_endpoint_not_in_solution_nodes: return "edge_endpoint_not_in_solution_nodes";
    case Errc::solution_node_not_a_block: return "solution_node_not_a_block";
    case Errc::cycle_detected: return "cycle_detected";
    case Errc::invalid_block_id: return "invalid_block_id";
    case Errc::no_solution_nodes: return "no_solution_nodes";
    case Errc::duplicate_block_in_submission: return "duplicate_block_in_submission";
    case Errc::unknown_block_id: return "unknown_block_id";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::too_large: return "too_large";
    case Errc::out_of_bounds: return "out_of_bounds";
    case Errc::duplicate_block_introduced: return "duplicate_block_introduced";
    case Errc::not_a_cover: return "not_a_cover";
    case Errc::submission_too_tangled: return "submission_too_tangled";
    case Errc::parse_error: return "parse_error";
    case Errc::no_data: return "no_data";
    case Errc::infeasible_spec: return "infeasible_spec";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

class GradeError : public std::runtime_error {
public:
  GradeError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw GradeError(code, what);
}

}  // namespace daggrade
