#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "daggrade/corpus_io.hpp"
#include "daggrade/grader.hpp"
#include "test_support.hpp"

using namespace daggrade;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DAGGRADE_FIXTURES_DIR;

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "daggrade_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("corpus_io") {

TEST_CASE("loads the sample problem fixture") {
  const Problem p = load_problem(kFixtures / "sample_problem.json");
  CHECK(p.block_count() == 7);
  CHECK(p.solution_size() == 6);
  CHECK(p.dependency_graph().edge_count() == 6);
  CHECK(p.text_of(*p.find_block("1")).value() == "Let n be an arbitrary odd integer.");
  CHECK(!p.text_of(*p.find_block("3")).has_value());
}

TEST_CASE("problem file error paths") {
  try {
    load_problem(kFixtures / "empty_problem.json");
    FAIL("expected ParseError");
  } catch (const GradeError& e) {
    CHECK(e.code() == Errc::parse_error);
  }

  try {
    load_problem(kFixtures / "cyclic_problem.json");
    FAIL("expected CycleDetected");
  } catch (const GradeError& e) {
    CHECK(e.code() == Errc::cycle_detected);
  }

  try {
    load_problem(kFixtures / "does_not_exist.json");
    FAIL("expected an IO error");
  } catch (const GradeError& e) {
    CHECK(e.code() == Errc::io_error);
  }
}

TEST_CASE("bare-string blocks are accepted") {
  const auto path = temp_path("bare_blocks.json");
  std::ofstream(path) << R"({"blocks": ["a", "b"], "solution_nodes": ["a", "b"],
                            "edges": [["a", "b"]]})";
  const Problem p = load_problem(path);
  CHECK(p.block_count() == 2);
  CHECK(!p.text_of(0).has_value());
}

TEST_CASE("loads submissions in order, skipping blank lines") {
  const LoadedSubmissions subs = load_submissions(kFixtures / "sample_submissions.jsonl");
  REQUIRE(subs.records.size() == 4);
  CHECK(subs.diagnostics.empty());
  CHECK(subs.records[0].submission_id == "s-01");
  CHECK(subs.records[0].sequence == std::vector<BlockId>{"1", "3", "4", "5", "2", "7"});
  CHECK(subs.records[2].sequence.empty());
  CHECK(subs.records[3].submission_id == "s-04");
}

TEST_CASE("malformed submission lines become diagnostics with line numbers") {
  const LoadedSubmissions subs = load_submissions(kFixtures / "mixed_submissions.jsonl");
  CHECK(subs.records.size() == 3);
  REQUIRE(subs.diagnostics.size() == 1);
  CHECK(subs.diagnostics[0].find(":2:") != std::string::npos);
}

TEST_CASE("grade reports carry the rendered score and the edit ops") {
  const Problem p = load_problem(kFixtures / "sample_problem.json");
  const LoadedSubmissions subs = load_submissions(kFixtures / "sample_submissions.jsonl");

  std::vector<GradeOutcome> outcomes;
  for (const auto& rec : subs.records) {
    GradeOutcome o;
    o.report = grade_mvc(validate_submission(p, rec.sequence), p);
    outcomes.push_back(std::move(o));
  }
  const auto path = temp_path("reports.jsonl");
  write_grade_reports(subs.records, outcomes, p, path);

  std::ifstream in(path);
  std::string line1, line2;
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1.find("\"submission_id\":\"s-01\"") != std::string::npos);
  CHECK(line1.find("\"d_star\":4") != std::string::npos);
  CHECK(line1.find("\"deletions\":2") != std::string::npos);
  CHECK(line1.find("\"score\":\"33.3\"") != std::string::npos);
  CHECK(line1.find("\"op\":\"delete\"") != std::string::npos);
  CHECK(line2.find("\"score\":\"100.0\"") != std::string::npos);
  CHECK(line2.find("\"edits\":[]") != std::string::npos);
}

TEST_CASE("error outcomes and empty inputs") {
  const Problem p = load_problem(kFixtures / "sample_problem.json");

  std::vector<SubmissionRecord> records{{"bad", {"1", "1"}}};
  std::vector<GradeOutcome> outcomes(1);
  outcomes[0].error = "duplicate_block_in_submission: block '1' occurs twice";
  const auto path = temp_path("error_report.jsonl");
  write_grade_reports(records, outcomes, p, path);
  CHECK(slurp(path).find("\"error\"") != std::string::npos);

  const auto empty_path = temp_path("empty_report.jsonl");
  write_grade_reports({}, {}, p, empty_path);
  CHECK(slurp(empty_path).empty());
}

TEST_CASE("problem round-trips through write and load") {
  const Problem original = validate_problem(test::sample_description());
  const ProblemDescription canonical = original.description();

  const auto path = temp_path("roundtrip_problem.json");
  write_problem(canonical, path);
  CHECK(load_problem_description(path) == canonical);

  // And a second pass is byte-stable.
  const auto path2 = temp_path("roundtrip_problem2.json");
  write_problem(load_problem_description(path), path2);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("block display text survives the round trip") {
  const ProblemDescription desc = load_problem_description(kFixtures / "sample_problem.json");
  const auto path = temp_path("roundtrip_texts.json");
  write_problem(desc, path);
  const ProblemDescription again = load_problem_description(path);
  CHECK(again == desc);
  CHECK(again.blocks[0].text.has_value());
}

TEST_CASE("submissions round-trip through write and load") {
  std::vector<SubmissionRecord> records{
      {"a", {"1", "2"}},
      {"b", {}},
      {"c", {"7"}},
  };
  const auto path = temp_path("roundtrip_subs.jsonl");
  write_submissions(records, path);
  const LoadedSubmissions loaded = load_submissions(path);
  CHECK(loaded.diagnostics.empty());
  CHECK(loaded.records == records);
}

}  // TEST_SUITE
