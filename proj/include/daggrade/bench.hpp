#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "daggrade/core.hpp"
#include "daggrade/corpus_io.hpp"
#include "daggrade/grader.hpp"

namespace daggrade {

enum class Algorithm { mvc, baseline };

constexpr const char* algorithm_name(Algorithm a) {
  return a == Algorithm::baseline ? "baseline" : "mvc";
}

struct TimingRow {
  std::string submission_id;
  bool ok = false;
  std::string error;
  double mean_ms = 0.0;  // mean over repetitions, wall clock, grading call only
  GradeReport report;
  std::size_t submission_len = 0;
  // Filled for the mvc algorithm:
  std::size_t problematic_nodes = 0;
  std::size_t mvc_size = 0;
};

// Times the selected grader on every record. The problem is validated and its
// closure built before any clock starts; per-record validation is also
// untimed. Validation failures and CapExceeded become failed rows.
std::vector<TimingRow> time_grader(const Problem& p,
                                   std::span<const SubmissionRecord> submissions,
                                   Algorithm algorithm, int repetitions,
                                   std::uint64_t cap = kDefaultOrderingCap);

struct BenchRecord {
  std::string problem_id;
  std::size_t proof_length = 0;          // |V|
  std::uint64_t possible_solutions = 0;  // linear extension count
  std::size_t distractors = 0;
  std::size_t submissions = 0;
  double mean_submission_size = 0.0;
  double mean_problematic_graph_size = 0.0;
  double mean_mvc_size = 0.0;
  double baseline_mean_ms = 0.0;
  double baseline_stderr_ms = 0.0;
  double mvc_mean_ms = 0.0;
  double mvc_stderr_ms = 0.0;
  double speedup_factor = 0.0;  // baseline_mean_ms / mvc_mean_ms
};

// Aggregates timing rows into one record. Means are over successful rows;
// stderr is sample standard deviation / sqrt(n), 0 when n == 1. Throws NoData
// if either algorithm has no successful row.
BenchRecord summarize(const std::string& problem_id, const Problem& p,
                      std::span<const TimingRow> baseline_rows,
                      std::span<const TimingRow> mvc_rows);

void emit_table(std::span<const BenchRecord> records, std::ostream& out);
void emit_table(std::span<const BenchRecord> records, const std::filesystem::path& path);

// Scaling pairs for both plots: (possible_solutions, baseline_mean_ms) and
// (proof_length, mvc_mean_ms), one row per problem.
void emit_scaling_data(std::span<const BenchRecord> records, std::ostream& out);
void emit_scaling_data(std::span<const BenchRecord> records,
                       const std::filesystem::path& path);

struct ProblemBenchResult {
  BenchRecord record;
  std::vector<std::string> diagnostics;
  std::size_t crosscheck_failures = 0;  // baseline and mvc disagreed on d*
};

// Times both algorithms and cross-checks d_star on every submission where
// both succeeded.
ProblemBenchResult bench_problem(const std::string& problem_id, const Problem& p,
                                 std::span<const SubmissionRecord> submissions,
                                 int repetitions, std::uint64_t cap = kDefaultOrderingCap);

// ---- synthetic corpora ----

struct MutationMix {
  int max_swaps = 2;
  int max_drops = 2;
  int max_distractor_inserts = 1;
};

struct SyntheticProblemSpec {
  enum class Kind { random_dag, parallel_chains };

  std::string id;
  Kind kind = Kind::random_dag;
  std::size_t nodes = 8;  // |V| for random_dag
  std::size_t chains = 2, chain_length = 4;  // for parallel_chains
  double edge_density = 0.3;                 // random_dag only
  std::size_t distractors = 0;
  std::size_t submissions = 10;  // includes one correct and one empty
  MutationMix mutations;
};

struct CorpusEntry {
  std::string problem_id;
  ProblemDescription description;
  std::vector<SubmissionRecord> submissions;
};

// Random problems plus submissions mutated from correct solutions (swaps,
// drops, distractor inclusions). Submission 0 is a correct solution and
// submission 1 is empty whenever the spec asks for >= 2. Deterministic for a
// given seed. Throws InfeasibleSpec on nonsense parameters.
std::vector<CorpusEntry> generate_synthetic_corpus(
    std::span<const SyntheticProblemSpec> specs, std::uint64_t seed);

// Bench corpus spec file: {"problems": [{...}, ...]}, schema in docs/formats.md.
std::vector<SyntheticProblemSpec> load_bench_spec(const std::filesystem::path& path);

// ---- verification harness ----

using GraderFn = std::function<GradeReport(const Submission&, const Problem&)>;

struct VerifySummary {
  std::size_t agreed = 0;
  std::size_t mismatched = 0;
  std::size_t skipped_cap = 0;
  std::size_t invalid = 0;
  std::vector<std::string> mismatches;  // full reproduction data
  std::vector<std::string> diagnostics;
};

// Runs both graders on every record and compares d_star. The grader hooks
// exist so tests can inject a deliberately wrong grader as a negative
// control; defaults are the real algorithms.
VerifySummary verify_corpus(const Problem& p,
                            std::span<const SubmissionRecord> records,
                            std::uint64_t cap = kDefaultOrderingCap,
                            GraderFn baseline = {}, GraderFn mvc = {});

}  // namespace daggrade
