#include "daggrade/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "daggrade/digraph.hpp"

namespace daggrade {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0, Clock::time_point t1) {
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Stats {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

Stats mean_stderr(const std::vector<double>& xs) {
  Stats s;
  s.n = xs.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.stderr_ = sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::vector<TimingRow> time_grader(const Problem& p,
                                   std::span<const SubmissionRecord> submissions,
                                   Algorithm algorithm, int repetitions,
                                   std::uint64_t cap) {
  if (repetitions < 1) fail(Errc::infeasible_spec, "repetitions must be >= 1");

  std::vector<TimingRow> rows;
  rows.reserve(submissions.size());
  for (const SubmissionRecord& rec : submissions) {
    TimingRow row;
    row.submission_id = rec.submission_id;
    Submission sub;
    try {
      sub = validate_submission(p, rec.sequence);
    } catch (const GradeError& e) {
      row.error = e.what();
      rows.push_back(std::move(row));
      continue;
    }
    row.submission_len = sub.size();

    try {
      double total_ms = 0.0;
      for (int r = 0; r < repetitions; ++r) {
        const auto t0 = Clock::now();
        if (algorithm == Algorithm::baseline) {
          row.report = grade_baseline(sub, p, cap);
        } else {
          MvcGradeResult res = grade_mvc_detailed(sub, p);
          row.report = std::move(res.report);
          row.problematic_nodes = res.problematic.node_count();
          row.mvc_size = res.cover.size();
        }
        total_ms += elapsed_ms(t0, Clock::now());
      }
      row.mean_ms = total_ms / repetitions;
      row.ok = true;
    } catch (const GradeError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BenchRecord summarize(const std::string& problem_id, const Problem& p,
                      std::span<const TimingRow> baseline_rows,
                      std::span<const TimingRow> mvc_rows) {
  BenchRecord rec;
  rec.problem_id = problem_id;
  rec.proof_length = p.solution_size();
  rec.possible_solutions = count_linear_extensions(p.dependency_graph());
  rec.distractors = p.distractor_count();

  std::vector<double> baseline_ms, mvc_ms;
  for (const TimingRow& r : baseline_rows) {
    if (r.ok) baseline_ms.push_back(r.mean_ms);
  }
  double sum_len = 0, sum_pg = 0, sum_mvc = 0;
  std::size_t graded = 0;
  for (const TimingRow& r : mvc_rows) {
    if (!r.ok) continue;
    mvc_ms.push_back(r.mean_ms);
    sum_len += static_cast<double>(r.submission_len);
    sum_pg += static_cast<double>(r.problematic_nodes);
    sum_mvc += static_cast<double>(r.mvc_size);
    ++graded;
  }
  if (baseline_ms.empty() || mvc_ms.empty()) {
    fail(Errc::no_data, "no successful timings for problem " + problem_id);
  }

  rec.submissions = graded;
  rec.mean_submission_size = sum_len / static_cast<double>(graded);
  rec.mean_problematic_graph_size = sum_pg / static_cast<double>(graded);
  rec.mean_mvc_size = sum_mvc / static_cast<double>(graded);

  // stderr stays 0 when only a single timing exists; callers warn on low n.
  const Stats b = mean_stderr(baseline_ms);
  const Stats m = mean_stderr(mvc_ms);
  rec.baseline_mean_ms = b.mean;
  rec.baseline_stderr_ms = b.stderr_;
  rec.mvc_mean_ms = m.mean;
  rec.mvc_stderr_ms = m.stderr_;
  rec.speedup_factor = rec.baseline_mean_ms / rec.mvc_mean_ms;
  return rec;
}

static const char* kTableHeader =
    "problem_id,proof_length,possible_solutions,distractors,submissions,"
    "mean_submission_size,mean_problematic_graph_size,mean_mvc_size,"
    "baseline_mean_ms,baseline_stderr_ms,mvc_mean_ms,mvc_stderr_ms,speedup_factor";

void emit_table(std::span<const BenchRecord> records, std::ostream& out) {
  if (records.empty()) fail(Errc::no_data, "no bench records to emit");
  out << kTableHeader << "\n";
  for (const BenchRecord& r : records) {
    out << r.problem_id << ',' << r.proof_length << ',' << r.possible_solutions << ','
        << r.distractors << ',' << r.submissions << ',' << fmt(r.mean_submission_size, 2)
        << ',' << fmt(r.mean_problematic_graph_size, 2) << ',' << fmt(r.mean_mvc_size, 2)
        << ',' << fmt(r.baseline_mean_ms, 3) << ',' << fmt(r.baseline_stderr_ms, 3) << ','
        << fmt(r.mvc_mean_ms, 3) << ',' << fmt(r.mvc_stderr_ms, 3) << ','
        << fmt(r.speedup_factor, 1) << "\n";
  }
}

void emit_table(std::span<const BenchRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open " + path.string() + " for writing");
  emit_table(records, static_cast<std::ostream&>(out));
}

void emit_scaling_data(std::span<const BenchRecord> records, std::ostream& out) {
  if (records.empty()) fail(Errc::no_data, "no bench records to emit");
  out << "problem_id,possible_solutions,baseline_mean_ms,proof_length,mvc_mean_ms\n";
  for (const BenchRecord& r : records) {
    out << r.problem_id << ',' << r.possible_solutions << ','
        << fmt(r.baseline_mean_ms, 3) << ',' << r.proof_length << ','
        << fmt(r.mvc_mean_ms, 3) << "\n";
  }
}

void emit_scaling_data(std::span<const BenchRecord> records,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open " + path.string() + " for writing");
  emit_scaling_data(records, static_cast<std::ostream&>(out));
}

ProblemBenchResult bench_problem(const std::string& problem_id, const Problem& p,
                                 std::span<const SubmissionRecord> submissions,
                                 int repetitions, std::uint64_t cap) {
  ProblemBenchResult result;
  const auto baseline_rows = time_grader(p, submissions, Algorithm::baseline,
                                         repetitions, cap);
  const auto mvc_rows = time_grader(p, submissions, Algorithm::mvc, repetitions, cap);

  for (std::size_t i = 0; i < submissions.size(); ++i) {
    const TimingRow& b = baseline_rows[i];
    const TimingRow& m = mvc_rows[i];
    if (b.ok && m.ok && b.report.d_star != m.report.d_star) {
      ++result.crosscheck_failures;
      result.diagnostics.push_back(
          b.submission_id + ": baseline d*=" + std::to_string(b.report.d_star) +
          " but mvc d*=" + std::to_string(m.report.d_star));
    }
    if (!b.ok && !b.error.empty()) {
      result.diagnostics.push_back(b.submission_id + " (baseline): " + b.error);
    }
    if (!m.ok && !m.error.empty()) {
      result.diagnostics.push_back(m.submission_id + " (mvc): " + m.error);
    }
  }
  result.record = summarize(problem_id, p, baseline_rows, mvc_rows);
  return result;
}

// ---- synthetic corpora ----

namespace {

std::string padded(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
  return buf;
}

// One topological ordering with uniformly random tie-breaking among ready
// nodes (not uniform over extensions, which is fine for corpus generation).
std::vector<BlockIndex> random_linear_extension(const Digraph& g, std::mt19937_64& rng) {
  const std::size_t n = g.node_count();
  std::vector<int> indeg(n, 0);
  std::vector<BlockIndex> ready, order;
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(g.predecessors(static_cast<BlockIndex>(v)).size());
    if (indeg[v] == 0) ready.push_back(static_cast<BlockIndex>(v));
  }
  while (!ready.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t k = pick(rng);
    const BlockIndex v = ready[k];
    ready.erase(ready.begin() + k);
    order.push_back(v);
    for (BlockIndex w : g.successors(v)) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return order;
}

}  // namespace

std::vector<CorpusEntry> generate_synthetic_corpus(
    std::span<const SyntheticProblemSpec> specs, std::uint64_t seed) {
  std::vector<CorpusEntry> corpus;
  corpus.reserve(specs.size());

  for (std::size_t si = 0; si < specs.size(); ++si) {
    const SyntheticProblemSpec& spec = specs[si];
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (si + 1)));

    const std::size_t n = spec.kind == SyntheticProblemSpec::Kind::parallel_chains
                              ? spec.chains * spec.chain_length
                              : spec.nodes;
    if (n == 0) fail(Errc::infeasible_spec, spec.id + ": zero solution nodes");
    if (n + spec.distractors >= kInvalidBlock) {
      fail(Errc::infeasible_spec, spec.id + ": too many blocks");
    }
    if (spec.edge_density < 0.0 || spec.edge_density > 1.0) {
      fail(Errc::infeasible_spec, spec.id + ": edge density outside [0, 1]");
    }

    CorpusEntry entry;
    entry.problem_id = spec.id.empty() ? padded("p", si) : spec.id;

    std::vector<BlockId> node_ids(n);
    for (std::size_t v = 0; v < n; ++v) {
      node_ids[v] = padded("b", v + 1);
      entry.description.blocks.push_back({node_ids[v], std::nullopt});
      entry.description.solution_nodes.push_back(node_ids[v]);
    }
    std::vector<BlockId> distractor_ids(spec.distractors);
    for (std::size_t d = 0; d < spec.distractors; ++d) {
      distractor_ids[d] = padded("x", d + 1);
      entry.description.blocks.push_back({distractor_ids[d], std::nullopt});
    }

    if (spec.kind == SyntheticProblemSpec::Kind::parallel_chains) {
      for (std::size_t c = 0; c < spec.chains; ++c) {
        for (std::size_t k = 1; k < spec.chain_length; ++k) {
          const std::size_t v = c * spec.chain_length + k;
          entry.description.edges.emplace_back(node_ids[v - 1], node_ids[v]);
        }
      }
    } else {
      // Random DAG: sample a hidden order, then keep each forward pair as an
      // edge with the given density.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (coin(rng) < spec.edge_density) {
            entry.description.edges.emplace_back(node_ids[perm[i]], node_ids[perm[j]]);
          }
        }
      }
    }

    const Problem problem = validate_problem(entry.description);
    const Digraph& dep = problem.dependency_graph();

    auto extension_ids = [&](const std::vector<BlockIndex>& locals) {
      std::vector<BlockId> ids;
      ids.reserve(locals.size());
      for (BlockIndex local : locals) {
        ids.push_back(problem.id_of(problem.block_of_solution_local(local)));
      }
      return ids;
    };

    for (std::size_t k = 0; k < spec.submissions; ++k) {
      SubmissionRecord rec;
      rec.submission_id = entry.problem_id + "-" + padded("s", k);
      if (k == 0) {
        rec.sequence = extension_ids(random_linear_extension(dep, rng));
      } else if (k == 1) {
        // empty submission
      } else {
        std::vector<BlockId> seq = extension_ids(random_linear_extension(dep, rng));
        std::uniform_int_distribution<int> swaps(0, spec.mutations.max_swaps);
        std::uniform_int_distribution<int> drops(0, spec.mutations.max_drops);
        std::uniform_int_distribution<int> inserts(0, spec.mutations.max_distractor_inserts);
        for (int t = swaps(rng); t > 0 && seq.size() >= 2; --t) {
          std::uniform_int_distribution<std::size_t> pos(0, seq.size() - 1);
          std::swap(seq[pos(rng)], seq[pos(rng)]);
        }
        for (int t = drops(rng); t > 0 && !seq.empty(); --t) {
          std::uniform_int_distribution<std::size_t> pos(0, seq.size() - 1);
          seq.erase(seq.begin() + pos(rng));
        }
        std::vector<BlockId> unused(distractor_ids);
        for (int t = inserts(rng); t > 0 && !unused.empty(); --t) {
          std::uniform_int_distribution<std::size_t> which(0, unused.size() - 1);
          const std::size_t w = which(rng);
          std::uniform_int_distribution<std::size_t> pos(0, seq.size());
          seq.insert(seq.begin() + pos(rng), unused[w]);
          unused.erase(unused.begin() + w);
        }
        rec.sequence = std::move(seq);
      }
      entry.submissions.push_back(std::move(rec));
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<SyntheticProblemSpec> load_bench_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("problems") || !doc["problems"].is_array()) {
    fail(Errc::parse_error, path.string() + ": expected {\"problems\": [...]}");
  }

  std::vector<SyntheticProblemSpec> specs;
  for (const auto& e : doc["problems"]) {
    if (!e.is_object()) fail(Errc::parse_error, path.string() + ": problem entries must be objects");
    SyntheticProblemSpec spec;
    spec.id = e.value("id", "p" + std::to_string(specs.size()));
    const std::string kind = e.value("kind", "random");
    if (kind == "random") {
      spec.kind = SyntheticProblemSpec::Kind::random_dag;
    } else if (kind == "chains") {
      spec.kind = SyntheticProblemSpec::Kind::parallel_chains;
    } else {
      fail(Errc::parse_error, path.string() + ": unknown kind '" + kind + "'");
    }
    spec.nodes = e.value("nodes", spec.nodes);
    spec.chains = e.value("chains", spec.chains);
    spec.chain_length = e.value("chain_length", spec.chain_length);
    spec.edge_density = e.value("edge_density", spec.edge_density);
    spec.distractors = e.value("distractors", spec.distractors);
    spec.submissions = e.value("submissions", spec.submissions);
    if (e.contains("mutations")) {
      const auto& m = e["mutations"];
      spec.mutations.max_swaps = m.value("max_swaps", spec.mutations.max_swaps);
      spec.mutations.max_drops = m.value("max_drops", spec.mutations.max_drops);
      spec.mutations.max_distractor_inserts =
          m.value("max_distractor_inserts", spec.mutations.max_distractor_inserts);
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

// ---- verification harness ----

VerifySummary verify_corpus(const Problem& p, std::span<const SubmissionRecord> records,
                            std::uint64_t cap, GraderFn baseline, GraderFn mvc) {
  if (!baseline) {
    baseline = [cap](const Submission& s, const Problem& prob) {
      return grade_baseline(s, prob, cap);
    };
  }
  if (!mvc) {
    mvc = [](const Submission& s, const Problem& prob) { return grade_mvc(s, prob); };
  }

  VerifySummary summary;
  for (const SubmissionRecord& rec : records) {
    Submission sub;
    try {
      sub = validate_submission(p, rec.sequence);
    } catch (const GradeError& e) {
      ++summary.invalid;
      summary.diagnostics.push_back(rec.submission_id + ": " + e.what());
      continue;
    }

    GradeReport base_report;
    try {
      base_report = baseline(sub, p);
    } catch (const GradeError& e) {
      if (e.code() == Errc::cap_exceeded) {
        ++summary.skipped_cap;
        continue;
      }
      ++summary.invalid;
      summary.diagnostics.push_back(rec.submission_id + ": " + e.what());
      continue;
    }

    GradeReport mvc_report;
    try {
      mvc_report = mvc(sub, p);
    } catch (const GradeError& e) {
      ++summary.invalid;
      summary.diagnostics.push_back(rec.submission_id + ": " + e.what());
      continue;
    }

    if (base_report.d_star == mvc_report.d_star) {
      ++summary.agreed;
    } else {
      ++summary.mismatched;
      std::ostringstream msg;
      msg << rec.submission_id << ": baseline d*=" << base_report.d_star
          << " mvc d*=" << mvc_report.d_star << " sequence=[";
      for (std::size_t i = 0; i < rec.sequence.size(); ++i) {
        if (i) msg << ",";
        msg << rec.sequence[i];
      }
      msg << "]";
      summary.mismatches.push_back(msg.str());
    }
  }
  return summary;
}

}  // namespace daggrade
