// Command-line front end: grade corpora, verify the two graders against each
// other, run the benchmark harness, and report per-problem statistics.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "daggrade/bench.hpp"
#include "daggrade/corpus_io.hpp"
#include "daggrade/grader.hpp"

namespace fs = std::filesystem;
using namespace daggrade;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;

fs::path default_out_dir() {
  if (const char* env = std::getenv("DAGGRADE_OUT_DIR")) return fs::path(env);
  return fs::path(".");
}

struct GradeArgs {
  std::string problem;
  std::string submissions;
  std::string algorithm = "mvc";
  std::uint64_t cap = kDefaultOrderingCap;
  std::string out;
};

int cmd_grade(const GradeArgs& args) {
  const Problem problem = load_problem(args.problem);
  const LoadedSubmissions loaded = load_submissions(args.submissions);
  for (const std::string& diag : loaded.diagnostics) {
    std::cerr << "warning: " << diag << "\n";
  }

  const Algorithm algorithm =
      args.algorithm == "baseline" ? Algorithm::baseline : Algorithm::mvc;

  std::vector<GradeOutcome> outcomes;
  outcomes.reserve(loaded.records.size());
  std::size_t failed = loaded.diagnostics.size();
  double score_sum = 0.0;
  std::size_t graded = 0;
  for (const SubmissionRecord& rec : loaded.records) {
    GradeOutcome outcome;
    try {
      const Submission sub = validate_submission(problem, rec.sequence);
      outcome.report = algorithm == Algorithm::baseline
                           ? grade_baseline(sub, problem, args.cap)
                           : grade_mvc(sub, problem);
      score_sum += outcome.report->score_percent.value();
      ++graded;
    } catch (const GradeError& e) {
      outcome.error = e.what();
      std::cerr << "warning: " << rec.submission_id << ": " << e.what() << "\n";
      ++failed;
    }
    outcomes.push_back(std::move(outcome));
  }

  const fs::path out_path =
      args.out.empty() ? default_out_dir() / "grades.jsonl" : fs::path(args.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  write_grade_reports(loaded.records, outcomes, problem, out_path);

  std::printf("graded %zu submission(s) with %s, %zu failed\n", graded,
              algorithm_name(algorithm), failed);
  if (graded > 0) {
    std::printf("mean score %.1f\n", score_sum / static_cast<double>(graded));
  }
  std::printf("reports written to %s\n", out_path.string().c_str());
  return failed == 0 ? kExitOk : kExitDiagnostics;
}

struct VerifyArgs {
  std::string problem;
  std::string submissions;
  std::uint64_t cap = kDefaultOrderingCap;
};

int cmd_verify(const VerifyArgs& args) {
  const Problem problem = load_problem(args.problem);
  const LoadedSubmissions loaded = load_submissions(args.submissions);
  for (const std::string& diag : loaded.diagnostics) {
    std::cerr << "warning: " << diag << "\n";
  }

  const VerifySummary summary = verify_corpus(problem, loaded.records, args.cap);
  for (const std::string& diag : summary.diagnostics) {
    std::cerr << "warning: " << diag << "\n";
  }
  for (const std::string& mismatch : summary.mismatches) {
    std::cerr << "MISMATCH " << mismatch << "\n";
  }
  std::printf("verified %zu submission(s): %zu agreed, %zu mismatched, "
              "%zu skipped (cap), %zu invalid\n",
              loaded.records.size(), summary.agreed, summary.mismatched,
              summary.skipped_cap, summary.invalid);
  return summary.mismatched == 0 ? kExitOk : kExitDiagnostics;
}

struct BenchArgs {
  std::string spec;
  std::vector<std::string> problems;
  std::vector<std::string> submissions;
  int repetitions = 5;
  std::uint64_t cap = kDefaultOrderingCap;
  std::uint64_t seed = 12345;
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  if (args.spec.empty() && args.problems.empty()) {
    std::cerr << "error: bench needs --spec or --problem/--submissions pairs\n";
    return kExitUsage;
  }
  if (args.problems.size() != args.submissions.size()) {
    std::cerr << "error: --problem and --submissions must be paired\n";
    return kExitUsage;
  }

  struct Job {
    std::string id;
    Problem problem;
    std::vector<SubmissionRecord> records;
  };
  std::vector<Job> jobs;

  if (!args.spec.empty()) {
    const auto specs = load_bench_spec(args.spec);
    for (CorpusEntry& entry : generate_synthetic_corpus(specs, args.seed)) {
      jobs.push_back({entry.problem_id, validate_problem(entry.description),
                      std::move(entry.submissions)});
    }
  }
  for (std::size_t i = 0; i < args.problems.size(); ++i) {
    Job job;
    job.id = fs::path(args.problems[i]).stem().string();
    job.problem = load_problem(args.problems[i]);
    LoadedSubmissions loaded = load_submissions(args.submissions[i]);
    for (const std::string& diag : loaded.diagnostics) {
      std::cerr << "warning: " << diag << "\n";
    }
    job.records = std::move(loaded.records);
    jobs.push_back(std::move(job));
  }

  std::vector<BenchRecord> records;
  std::size_t crosscheck_failures = 0;
  for (const Job& job : jobs) {
    try {
      ProblemBenchResult result =
          bench_problem(job.id, job.problem, job.records, args.repetitions, args.cap);
      for (const std::string& diag : result.diagnostics) {
        std::cerr << "warning: " << diag << "\n";
      }
      if (result.record.submissions < 2) {
        std::cerr << "warning: " << job.id << ": single-submission timing, stderr is 0\n";
      }
      crosscheck_failures += result.crosscheck_failures;
      records.push_back(std::move(result.record));
    } catch (const GradeError& e) {
      std::cerr << "warning: " << job.id << ": " << e.what() << "\n";
    }
  }
  if (records.empty()) {
    std::cerr << "error: no_data: no problem produced a bench record\n";
    return kExitDiagnostics;
  }

  const fs::path out_dir = args.out.empty() ? default_out_dir() : fs::path(args.out);
  fs::create_directories(out_dir);
  emit_table(records, std::cout);
  emit_table(records, out_dir / "bench_table.csv");
  emit_scaling_data(records, out_dir / "bench_scaling.csv");
  std::printf("table written to %s\n", (out_dir / "bench_table.csv").string().c_str());
  std::printf("scaling data written to %s\n",
              (out_dir / "bench_scaling.csv").string().c_str());
  return crosscheck_failures == 0 ? kExitOk : kExitDiagnostics;
}

struct StatsArgs {
  std::vector<std::string> problems;
};

int cmd_stats(const StatsArgs& args) {
  std::printf("%-24s %12s %18s %12s\n", "problem", "proof_len", "possible_solutions",
              "distractors");
  bool any_error = false;
  for (const std::string& path : args.problems) {
    try {
      const Problem p = load_problem(path);
      std::string solutions;
      try {
        solutions = std::to_string(count_linear_extensions(p.dependency_graph()));
      } catch (const GradeError&) {
        solutions = "too_large";
      }
      std::printf("%-24s %12zu %18s %12zu\n", fs::path(path).stem().string().c_str(),
                  p.solution_size(), solutions.c_str(), p.distractor_count());
    } catch (const GradeError& e) {
      std::cerr << "error: " << path << ": " << e.what() << "\n";
      any_error = true;
    }
  }
  return any_error ? kExitDiagnostics : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grade block-ordering submissions against a dependency DAG"};
  app.require_subcommand(1);

  GradeArgs grade_args;
  CLI::App* grade = app.add_subcommand(
      "grade", "Grade a submissions file and write per-submission reports");
  grade->add_option("--problem", grade_args.problem, "problem file (JSON)")->required();
  grade->add_option("--submissions", grade_args.submissions, "submissions file (JSONL)")
      ->required();
  grade->add_option("--algorithm", grade_args.algorithm, "grading algorithm")
      ->check(CLI::IsMember({"mvc", "baseline"}))
      ->capture_default_str();
  grade->add_option("--cap", grade_args.cap, "baseline enumeration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  grade->add_option("--out", grade_args.out, "output file (default <outdir>/grades.jsonl)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run both graders on a corpus and compare their d* values");
  verify->add_option("--problem", verify_args.problem, "problem file (JSON)")->required();
  verify->add_option("--submissions", verify_args.submissions, "submissions file (JSONL)")
      ->required();
  verify->add_option("--cap", verify_args.cap, "baseline enumeration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time both graders and emit the comparison table + scaling data");
  bench->add_option("--spec", bench_args.spec, "synthetic corpus spec (JSON)");
  bench->add_option("--problem", bench_args.problems, "problem file (repeatable)");
  bench->add_option("--submissions", bench_args.submissions,
                    "submissions file (repeatable, paired with --problem)");
  bench->add_option("--repetitions", bench_args.repetitions,
                    "timed repetitions per submission")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--cap", bench_args.cap, "baseline enumeration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "corpus generation seed")
      ->capture_default_str();
  bench->add_option("--out", bench_args.out, "output directory");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand(
      "stats", "Print proof length, linear-extension count, and distractor count");
  stats->add_option("--problem", stats_args.problems, "problem file (repeatable)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*grade) return cmd_grade(grade_args);
    if (*verify) return cmd_verify(verify_args);
    if (*bench) return cmd_bench(bench_args);
    if (*stats) return cmd_stats(stats_args);
  } catch (const GradeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostics;
  }
  return kExitUsage;
}
