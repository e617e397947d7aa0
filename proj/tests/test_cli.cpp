#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = DAGGRADE_CLI_BIN;
const fs::path kFixtures = DAGGRADE_FIXTURES_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "daggrade_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path out = work_dir() / ("stdout." + std::to_string(counter));
  const fs::path err = work_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  const std::string cmd = env + (env.empty() ? "" : " ") + kCli + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

// Splits a CSV body and blanks the given column indices, so timing-dependent
// fields can be excluded from byte comparisons.
std::string mask_columns(const std::string& csv, const std::vector<std::size_t>& cols) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      out << line << "\n";
      header = false;
      continue;
    }
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) parts.push_back(field);
    for (std::size_t c : cols) {
      if (c < parts.size()) parts[c] = "_";
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out << (i ? "," : "") << parts[i];
    }
    out << "\n";
  }
  return out.str();
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("grade writes reports for the sample corpus") {
  const fs::path out = work_dir() / "grades.jsonl";
  const RunResult r = run_cli("grade --problem " + q(kFixtures / "sample_problem.json") +
                              " --submissions " + q(kFixtures / "sample_submissions.jsonl") +
                              " --out " + q(out));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("graded 4 submission(s)") != std::string::npos);
  const std::string reports = slurp(out);
  CHECK(reports.find("\"score\":\"33.3\"") != std::string::npos);
  CHECK(reports.find("\"score\":\"100.0\"") != std::string::npos);
  CHECK(reports.find("\"d_star\":4") != std::string::npos);
}

TEST_CASE("grade with the baseline algorithm omits edit scripts") {
  const fs::path out = work_dir() / "grades_baseline.jsonl";
  const RunResult r = run_cli("grade --algorithm baseline --problem " +
                              q(kFixtures / "sample_problem.json") + " --submissions " +
                              q(kFixtures / "sample_submissions.jsonl") + " --out " + q(out));
  CHECK(r.exit_code == 0);
  const std::string reports = slurp(out);
  CHECK(reports.find("\"d_star\":4") != std::string::npos);
  CHECK(reports.find("\"edits\"") == std::string::npos);
}

TEST_CASE("grade keeps going past bad records and exits 1") {
  const fs::path out = work_dir() / "grades_mixed.jsonl";
  const RunResult r = run_cli("grade --problem " + q(kFixtures / "sample_problem.json") +
                              " --submissions " + q(kFixtures / "mixed_submissions.jsonl") +
                              " --out " + q(out));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("bad-dup") != std::string::npos);
  CHECK(r.err.find("bad-unknown") != std::string::npos);
  const std::string reports = slurp(out);
  CHECK(reports.find("\"submission_id\":\"ok-1\"") != std::string::npos);
  CHECK(reports.find("\"score\":\"100.0\"") != std::string::npos);
  CHECK(reports.find("\"error\"") != std::string::npos);
}

TEST_CASE("grade output is byte-identical across runs") {
  const fs::path out1 = work_dir() / "det1.jsonl";
  const fs::path out2 = work_dir() / "det2.jsonl";
  const std::string base = "grade --problem " + q(kFixtures / "sample_problem.json") +
                           " --submissions " + q(kFixtures / "sample_submissions.jsonl");
  CHECK(run_cli(base + " --out " + q(out1)).exit_code == 0);
  CHECK(run_cli(base + " --out " + q(out2)).exit_code == 0);
  const std::string a = slurp(out1);
  CHECK(!a.empty());
  CHECK(a == slurp(out2));
}

TEST_CASE("grade honors the default output directory env var") {
  const fs::path dir = work_dir() / "envout";
  fs::create_directories(dir);
  const RunResult r = run_cli("grade --problem " + q(kFixtures / "sample_problem.json") +
                                  " --submissions " +
                                  q(kFixtures / "sample_submissions.jsonl"),
                              "DAGGRADE_OUT_DIR=" + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "grades.jsonl"));
}

TEST_CASE("verify agrees on the sample corpus and reports cap skips") {
  const RunResult ok = run_cli("verify --problem " + q(kFixtures / "sample_problem.json") +
                               " --submissions " +
                               q(kFixtures / "sample_submissions.jsonl"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("4 agreed, 0 mismatched") != std::string::npos);

  const RunResult capped = run_cli(
      "verify --cap 2 --problem " + q(kFixtures / "sample_problem.json") +
      " --submissions " + q(kFixtures / "sample_submissions.jsonl"));
  CHECK(capped.exit_code == 0);
  CHECK(capped.out.find("4 skipped (cap)") != std::string::npos);
}

TEST_CASE("stats prints length, solutions, and distractors") {
  const RunResult r =
      run_cli("stats --problem " + q(kFixtures / "sample_problem.json"));
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.find("possible_solutions") != std::string::npos);
  std::istringstream cols(row);
  std::string name, len, sols, distractors;
  cols >> name >> len >> sols >> distractors;
  CHECK(name == "sample_problem");
  CHECK(len == "6");
  CHECK(sols == "3");
  CHECK(distractors == "1");
}

TEST_CASE("bench runs a synthetic spec and emits both files") {
  const fs::path dir = work_dir() / "bench1";
  const RunResult r = run_cli("bench --spec " + q(kFixtures / "bench_spec_small.json") +
                              " --seed 7 --repetitions 2 --out " + q(dir));
  CHECK(r.exit_code == 0);
  const std::string table = slurp(dir / "bench_table.csv");
  CHECK(table.find("problem_id,proof_length") == 0);
  CHECK(table.find("chain2x3") != std::string::npos);
  CHECK(table.find("rand6") != std::string::npos);
  CHECK(!slurp(dir / "bench_scaling.csv").empty());
}

TEST_CASE("bench on file corpora works too") {
  const fs::path dir = work_dir() / "bench_files";
  const RunResult r = run_cli("bench --problem " + q(kFixtures / "sample_problem.json") +
                              " --submissions " + q(kFixtures / "sample_submissions.jsonl") +
                              " --repetitions 2 --out " + q(dir));
  CHECK(r.exit_code == 0);
  CHECK(slurp(dir / "bench_table.csv").find("sample_problem") != std::string::npos);
}

TEST_CASE("bench output is byte-identical apart from timing columns") {
  const fs::path dir1 = work_dir() / "benchdet1";
  const fs::path dir2 = work_dir() / "benchdet2";
  const std::string base = "bench --spec " + q(kFixtures / "bench_spec_small.json") +
                           " --seed 99 --repetitions 1 --out ";
  CHECK(run_cli(base + q(dir1)).exit_code == 0);
  CHECK(run_cli(base + q(dir2)).exit_code == 0);

  // Timing-derived table columns: baseline/mvc mean + stderr and the speedup.
  const std::vector<std::size_t> timing_cols{8, 9, 10, 11, 12};
  const std::string t1 = mask_columns(slurp(dir1 / "bench_table.csv"), timing_cols);
  const std::string t2 = mask_columns(slurp(dir2 / "bench_table.csv"), timing_cols);
  CHECK(!t1.empty());
  CHECK(t1 == t2);

  const std::vector<std::size_t> scaling_timing_cols{2, 4};
  const std::string s1 = mask_columns(slurp(dir1 / "bench_scaling.csv"), scaling_timing_cols);
  const std::string s2 = mask_columns(slurp(dir2 / "bench_scaling.csv"), scaling_timing_cols);
  CHECK(s1 == s2);

  // And a different seed changes the structural columns.
  const fs::path dir3 = work_dir() / "benchdet3";
  CHECK(run_cli("bench --spec " + q(kFixtures / "bench_spec_small.json") +
                " --seed 100 --repetitions 1 --out " + q(dir3))
            .exit_code == 0);
  const std::string t3 = mask_columns(slurp(dir3 / "bench_table.csv"), timing_cols);
  CHECK(t1 != t3);
}

TEST_CASE("bench with an empty corpus reports no_data and exits 1") {
  const fs::path spec = work_dir() / "empty_spec.json";
  std::ofstream(spec) << R"({"problems": []})";
  const RunResult r = run_cli("bench --spec " + q(spec) + " --out " +
                              q(work_dir() / "bench_empty"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("no_data") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("grade --problem only").exit_code == 2);  // missing required option
  CHECK(run_cli("frobnicate").exit_code == 2);            // unknown subcommand
  CHECK(run_cli("grade --problem a --submissions b --algorithm nope").exit_code == 2);
  CHECK(run_cli("bench").exit_code == 2);                 // no inputs at all
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("data errors exit with 1") {
  CHECK(run_cli("grade --problem " + q(kFixtures / "cyclic_problem.json") +
                " --submissions " + q(kFixtures / "sample_submissions.jsonl"))
            .exit_code == 1);
  CHECK(run_cli("stats --problem " + q(kFixtures / "empty_problem.json")).exit_code == 1);
  CHECK(run_cli("grade --problem " + q(kFixtures / "does_not_exist.json") +
                " --submissions " + q(kFixtures / "sample_submissions.jsonl"))
            .exit_code == 1);
}

}  // TEST_SUITE
