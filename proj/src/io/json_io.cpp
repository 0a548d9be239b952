#include <fstream>
#include <sstream>

#include "seqvote/error.hpp"
#include "seqvote/io.hpp"

namespace seqvote::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

std::size_t index_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorCode::ParseError, where + " must be a non-negative integer");
  return v.get<std::size_t>();
}

Json fractions(const std::vector<Fraction>& v) {
  Json out = Json::array();
  for (const Fraction& f : v) out.push_back(f.str());
  return out;
}

Json detail_to_json(const RoundDetail& detail) {
  Json d = Json::object();
  if (const auto* p = std::get_if<PhragmenDetail>(&detail)) {
    d["water_line"] = p->water_line.str();
    d["load_set"] = p->load_set;
    d["loads"] = fractions(p->loads);
  } else if (const auto* m = std::get_if<MesDetail>(&detail)) {
    d["rho"] = m->rho ? Json(m->rho->str()) : Json(nullptr);
    d["payments"] = fractions(m->payments);
    d["budgets"] = fractions(m->budgets);
    if (m->top_up.sign() != 0) d["top_up"] = m->top_up.str();
    if (m->premature) d["premature"] = true;
  } else if (const auto* w = std::get_if<WeightDetail>(&detail)) {
    d["weights"] = fractions(w->weights);
  } else if (const auto* q = std::get_if<QuotaDetail>(&detail)) {
    d["quota"] = fractions(q->quota);
    d["satisfaction"] = q->satisfaction;
  }
  return d;
}

Json decision_json(AlternativeIndex c) { return c == kUndecided ? Json(nullptr) : Json(c); }

}  // namespace

DecisionInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
  if (!doc.contains("voters") || !doc.contains("rounds"))
    throw Error(ErrorCode::ParseError, "instance needs 'voters' and 'rounds'");
  DecisionInstance inst;
  inst.voters = index_value(doc["voters"], "'voters'");
  const Json& rounds = doc["rounds"];
  if (!rounds.is_array()) throw Error(ErrorCode::ParseError, "'rounds' must be an array");
  for (std::size_t j = 0; j < rounds.size(); ++j) {
    const Json& r = rounds[j];
    const std::string where = "round " + std::to_string(j);
    if (!r.is_object() || !r.contains("alternatives") || !r.contains("approvals"))
      throw Error(ErrorCode::ParseError, where + " needs 'alternatives' and 'approvals'");
    Round round;
    for (const Json& a : r["alternatives"]) {
      if (!a.is_string()) throw Error(ErrorCode::ParseError, where + ": alternative labels must be strings");
      round.alternatives.push_back(a.get<std::string>());
    }
    if (!r["approvals"].is_array()) throw Error(ErrorCode::ParseError, where + ": 'approvals' must be an array");
    for (const Json& set : r["approvals"]) {
      if (!set.is_array()) throw Error(ErrorCode::ParseError, where + ": each approval set must be an array");
      ApprovalSet s;
      for (const Json& c : set) s.push_back(index_value(c, where + " approval"));
      round.approvals.push_back(std::move(s));
    }
    inst.rounds.push_back(std::move(round));
  }
  validate(inst);
  return inst;
}

Json instance_to_json(const DecisionInstance& instance) {
  Json rounds = Json::array();
  for (const Round& r : instance.rounds) {
    Json approvals = Json::array();
    for (const auto& s : r.approvals) approvals.push_back(s);
    rounds.push_back({{"alternatives", r.alternatives}, {"approvals", approvals}});
  }
  return {{"voters", instance.voters}, {"rounds", rounds}};
}

DecisionInstance read_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_json(slurp(path), path.string()));
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void write_instance(const std::filesystem::path& path, const DecisionInstance& instance) {
  auto out = open_output(path);
  out << instance_to_json(instance).dump() << '\n';
}

DecisionSequence sequence_from_json(const DecisionInstance& instance, const Json& doc) {
  DecisionSequence seq;
  const Json* list = &doc;
  bool labels = false;
  if (doc.is_object()) {
    if (doc.contains("decisions")) {
      list = &doc["decisions"];
    } else if (doc.contains("labels")) {
      list = &doc["labels"];
      labels = true;
    } else {
      throw Error(ErrorCode::ParseError, "decisions object needs 'decisions' or 'labels'");
    }
  }
  if (!list->is_array()) throw Error(ErrorCode::ParseError, "decisions must be an array");
  if (labels) {
    std::vector<std::string> names;
    for (const Json& l : *list) {
      if (!l.is_string()) throw Error(ErrorCode::ParseError, "labels must be strings");
      names.push_back(l.get<std::string>());
    }
    return sequence_from_labels(instance, names);
  }
  for (const Json& d : *list) seq.decisions.push_back(index_value(d, "decision"));
  validate(instance, seq);
  return seq;
}

DecisionSequence read_sequence(const DecisionInstance& instance, const std::filesystem::path& path) {
  return sequence_from_json(instance, parse_json(slurp(path), path.string()));
}

DecisionSequence parse_sequence_text(const DecisionInstance& instance, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  try {
    return sequence_from_labels(instance, parts);
  } catch (const Error&) {
    DecisionSequence seq;
    for (const std::string& p : parts) {
      if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::ParseError, "'" + p + "' is neither a label nor an index");
      seq.decisions.push_back(std::stoull(p));
    }
    validate(instance, seq);
    return seq;
  }
}

Json trace_to_json(const RuleTrace& trace) {
  Json t;
  t["rule"] = trace.rule;
  Json rounds = Json::array();
  for (const RoundRecord& r : trace.per_round) {
    Json rec = {{"round", r.round}, {"chosen", decision_json(r.chosen)}, {"decided_by", r.decided_by}};
    Json d = detail_to_json(r.detail);
    if (!d.empty()) rec["detail"] = d;
    rounds.push_back(rec);
  }
  t["per_round"] = rounds;
  t["premature_round"] = trace.premature_round ? Json(*trace.premature_round) : Json(nullptr);
  if (!trace.swaps.empty()) {
    Json swaps = Json::array();
    for (const SwapRecord& s : trace.swaps)
      swaps.push_back({{"round", s.round}, {"from", s.from}, {"to", s.to}, {"gain", s.gain.str()}});
    t["swaps"] = swaps;
  }
  if (trace.pav_score) t["pav_score"] = trace.pav_score->str();
  if (trace.nodes) t["nodes"] = trace.nodes;
  return t;
}

Json result_to_json(const DecisionInstance& instance, const RuleResult& result) {
  Json decisions = Json::array();
  Json labels = Json::array();
  for (std::size_t j = 0; j < result.sequence.size(); ++j) {
    const AlternativeIndex c = result.sequence[j];
    decisions.push_back(decision_json(c));
    labels.push_back(c == kUndecided ? Json(nullptr) : Json(instance.rounds[j].alternatives[c]));
  }
  UtilityVector utilities(instance.voters, 0);
  for (std::size_t j = 0; j < result.sequence.size(); ++j)
    if (result.sequence[j] != kUndecided)
      for (VoterIndex v = 0; v < instance.voters; ++v)
        if (instance.rounds[j].approves(v, result.sequence[j])) ++utilities[v];
  Json out = {{"decisions", decisions}, {"labels", labels}, {"utilities", utilities}};
  if (!result.complete) out["complete"] = false;
  out["trace"] = trace_to_json(result.trace);
  return out;
}

Json report_to_json(const DecisionInstance& instance, const AxiomReport& report) {
  Json out = {{"axiom", report.axiom}, {"satisfied", report.satisfied}};
  if (report.witness) {
    const Witness& w = *report.witness;
    Json wj = {{"group", w.group}, {"agreement", w.agreement}, {"demand", w.demand}, {"observed", w.observed}};
    if (w.voter) wj["voter"] = *w.voter;
    if (w.dominating) {
      wj["dominating"] = {{"decisions", w.dominating->decisions}, {"labels", labels_of(instance, *w.dominating)}};
    }
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

}  // namespace seqvote::io
