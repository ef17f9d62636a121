#pragma once

// JSON forms of solver runs, query logs and lab records. Every document
// carries "schema": 1; wall time is the only field that varies between
// reruns and is emitted last so it can be dropped for comparison.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldt/oracle.hpp"
#include "ldt/problems.hpp"
#include "ldt/solver.hpp"

namespace ldt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string sign_string(Sign s) { return std::string(1, to_char(s)); }

inline Json query_record_json(const QueryRecord& r) {
  Json j;
  j["kind"] = r.kind == QueryKind::Label ? "label" : "cmp";
  if (!r.ids.empty()) {
    j["ids"] = r.ids;
  } else {
    Json vs = Json::array();
    for (const auto& v : r.operands) {
      Json c = Json::array();
      for (const auto& x : v) c.push_back(x.str());
      vs.push_back(std::move(c));
    }
    j["vectors"] = std::move(vs);
  }
  j["answer"] = sign_string(r.answer);
  return j;
}

// One JSON object per line.
inline void write_query_log(std::ostream& os, const QueryLedger& ledger) {
  if (!ledger.log) return;
  for (const auto& r : *ledger.log) os << query_record_json(r).dump() << '\n';
}

// Pairs as 1-based (i, j) meaning a_i + b_j.
inline Json answer_json(const Encoding& e, const Answer& a) {
  Json j;
  if (a.kind == AnswerKind::Decision) {
    j["decision"] = a.decision;
    if (a.witness) {
      std::vector<std::size_t> idx;
      for (auto t : e.tuples.at(*a.witness)) idx.push_back(t + 1);
      j["witness"] = idx;
    } else {
      j["witness"] = nullptr;
    }
    return j;
  }
  Json groups = Json::array();
  for (const auto& g : a.order) {
    Json gj = Json::array();
    for (auto [i, k] : g) gj.push_back({i + 1, k + 1});
    groups.push_back(std::move(gj));
  }
  j["order"] = std::move(groups);
  return j;
}

inline Json rounds_json(const std::vector<RoundTrace>& rounds) {
  Json out = Json::array();
  for (const auto& r : rounds)
    out.push_back({{"remaining", r.remaining},
                   {"sample", r.sample},
                   {"inferred", r.inferred},
                   {"label_queries", r.label_queries},
                   {"comparison_queries", r.comparison_queries}});
  return out;
}

struct RunReport {
  ProblemKind problem = ProblemKind::KSum;
  Json instance;  // n, k, caps and other descriptors
  Json answer;
  SolveReport solve;
  Rational sample_constant;
  bool strict_comparison = false;
  double wall_time_ms = 0;
};

inline Json to_json(const RunReport& r, bool include_timing = true, bool include_log = false) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["problem"] = to_string(r.problem);
  j["instance"] = r.instance;
  j["answer"] = r.answer;
  j["label_queries"] = r.solve.ledger.label_count;
  j["comparison_queries"] = r.solve.ledger.comparison_count;
  j["total_queries"] = r.solve.ledger.total();
  j["rounds"] = rounds_json(r.solve.rounds);
  j["seed"] = r.solve.seed;
  j["sample_constant"] = r.sample_constant.str();
  j["d_estimate"] = r.solve.d_estimate;
  j["strict_comparison"] = r.strict_comparison;
  if (include_log && r.solve.ledger.log) {
    Json log = Json::array();
    for (const auto& q : *r.solve.ledger.log) log.push_back(query_record_json(q));
    j["query_log"] = std::move(log);
  }
  if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

struct LabRecord {
  std::string check;
  Json parameters;
  Json observed;
  Json bound;
  bool pass = false;
};

inline Json to_json(const LabRecord& r) {
  return Json{{"schema", kSchemaVersion},
              {"check", r.check},
              {"parameters", r.parameters},
              {"observed", r.observed},
              {"bound", r.bound},
              {"pass", r.pass}};
}

}  // namespace ldt
