#include "daggrade/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace daggrade {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open " + path.string() + " for writing");
  out << data;
  if (!out) fail(Errc::io_error, "write failed for " + path.string());
}

std::string require_string(const json& j, const char* field, const std::string& where) {
  if (!j.is_string()) fail(Errc::parse_error, where + ": '" + field + "' must be a string");
  return j.get<std::string>();
}

const json& require_array(const json& doc, const char* field, const std::string& where) {
  auto it = doc.find(field);
  if (it == doc.end()) fail(Errc::parse_error, where + ": missing '" + field + "'");
  if (!it->is_array()) fail(Errc::parse_error, where + ": '" + field + "' must be an array");
  return *it;
}

}  // namespace

ProblemDescription load_problem_description(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, path.string() + ": expected a JSON object");
  const std::string where = path.string();

  ProblemDescription desc;
  for (const json& b : require_array(doc, "blocks", where)) {
    if (b.is_string()) {
      desc.blocks.push_back({b.get<std::string>(), std::nullopt});
    } else if (b.is_object()) {
      BlockSpec spec;
      auto id = b.find("id");
      if (id == b.end()) fail(Errc::parse_error, where + ": block entry missing 'id'");
      spec.id = require_string(*id, "id", where);
      if (auto t = b.find("text"); t != b.end()) {
        spec.text = require_string(*t, "text", where);
      }
      desc.blocks.push_back(std::move(spec));
    } else {
      fail(Errc::parse_error, where + ": block entries must be strings or objects");
    }
  }
  for (const json& n : require_array(doc, "solution_nodes", where)) {
    desc.solution_nodes.push_back(require_string(n, "solution_nodes", where));
  }
  for (const json& e : require_array(doc, "edges", where)) {
    if (!e.is_array() || e.size() != 2) {
      fail(Errc::parse_error, where + ": edges must be [from, to] pairs");
    }
    desc.edges.emplace_back(require_string(e[0], "edges", where),
                            require_string(e[1], "edges", where));
  }
  return desc;
}

Problem load_problem(const std::filesystem::path& path) {
  return validate_problem(load_problem_description(path));
}

void write_problem(const ProblemDescription& desc, const std::filesystem::path& path) {
  ordered_json doc;
  doc["blocks"] = ordered_json::array();
  for (const BlockSpec& b : desc.blocks) {
    ordered_json e;
    e["id"] = b.id;
    if (b.text) e["text"] = *b.text;
    doc["blocks"].push_back(std::move(e));
  }
  doc["solution_nodes"] = desc.solution_nodes;
  doc["edges"] = ordered_json::array();
  for (const auto& [from, to] : desc.edges) {
    doc["edges"].push_back(ordered_json::array({from, to}));
  }
  write_file(path, doc.dump(2) + "\n");
}

LoadedSubmissions load_submissions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());

  LoadedSubmissions out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto diag = [&](const std::string& what) {
      out.diagnostics.push_back(path.filename().string() + ":" +
                                std::to_string(lineno) + ": " + what);
    };
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      diag(e.what());
      continue;
    }
    if (!doc.is_object() || !doc.contains("submission_id") ||
        !doc["submission_id"].is_string() || !doc.contains("sequence") ||
        !doc["sequence"].is_array()) {
      diag("expected {\"submission_id\": str, \"sequence\": [str...]}");
      continue;
    }
    SubmissionRecord rec;
    rec.submission_id = doc["submission_id"].get<std::string>();
    bool ok = true;
    for (const json& b : doc["sequence"]) {
      if (!b.is_string()) {
        diag("sequence elements must be strings");
        ok = false;
        break;
      }
      rec.sequence.push_back(b.get<std::string>());
    }
    if (ok) out.records.push_back(std::move(rec));
  }
  return out;
}

void write_submissions(std::span<const SubmissionRecord> records,
                       const std::filesystem::path& path) {
  std::string data;
  for (const SubmissionRecord& rec : records) {
    ordered_json doc;
    doc["submission_id"] = rec.submission_id;
    doc["sequence"] = rec.sequence;
    data += doc.dump() + "\n";
  }
  write_file(path, data);
}

void write_grade_reports(std::span<const SubmissionRecord> records,
                         std::span<const GradeOutcome> outcomes, const Problem& p,
                         const std::filesystem::path& path) {
  if (records.size() != outcomes.size()) {
    fail(Errc::out_of_bounds, "records and outcomes are not aligned");
  }
  std::string data;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ordered_json doc;
    doc["submission_id"] = records[i].submission_id;
    if (const auto& report = outcomes[i].report) {
      doc["d_star"] = report->d_star;
      doc["deletions"] = report->deletions;
      doc["insertions"] = report->insertions;
      doc["score"] = report->score_percent.fixed1();
      if (report->edit_script) {
        ordered_json edits = ordered_json::array();
        for (const EditOp& op : report->edit_script->ops) {
          ordered_json e;
          e["op"] = op.kind == EditOp::Kind::Delete ? "delete" : "insert";
          e["block"] = p.id_of(op.block);
          e["position"] = op.position;
          edits.push_back(std::move(e));
        }
        doc["edits"] = std::move(edits);
      }
    } else {
      doc["error"] = outcomes[i].error;
    }
    data += doc.dump() + "\n";
  }
  write_file(path, data);
}

}  // namespace daggrade
