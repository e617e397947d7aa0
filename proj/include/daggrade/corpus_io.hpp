#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daggrade/core.hpp"

namespace daggrade {

// File formats (see docs/formats.md):
//   problem      one JSON document: {"blocks", "solution_nodes", "edges"}
//   submissions  JSON lines: {"submission_id", "sequence"}, blank lines skipped
//   reports      JSON lines: {"submission_id", "d_star", "deletions",
//                "insertions", "score", "edits"} or {"submission_id", "error"}

struct SubmissionRecord {
  std::string submission_id;
  std::vector<BlockId> sequence;

  friend bool operator==(const SubmissionRecord&, const SubmissionRecord&) = default;
};

ProblemDescription load_problem_description(const std::filesystem::path& path);
Problem load_problem(const std::filesystem::path& path);
void write_problem(const ProblemDescription& desc, const std::filesystem::path& path);

struct LoadedSubmissions {
  std::vector<SubmissionRecord> records;
  std::vector<std::string> diagnostics;  // one per malformed line, with line number
};

// Malformed lines become diagnostics, not failures; per-record block
// validation is deferred to grading.
LoadedSubmissions load_submissions(const std::filesystem::path& path);

void write_submissions(std::span<const SubmissionRecord> records,
                       const std::filesystem::path& path);

struct GradeOutcome {
  std::optional<GradeReport> report;
  std::string error;  // set when report is empty
};

// Pre: records and outcomes are aligned.
void write_grade_reports(std::span<const SubmissionRecord> records,
                         std::span<const GradeOutcome> outcomes, const Problem& p,
                         const std::filesystem::path& path);

}  // namespace daggrade
