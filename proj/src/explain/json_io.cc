#include "xmcts/json_io.h"

#include "explain/json_fields.h"
#include "xmcts/errors.h"

namespace xmcts {

namespace {

using json_fields::field;
using json_fields::get;
using json_fields::get_opt;

constexpr std::string_view kBucketNames[] = {"decisive_advantage", "slight_advantage", "balanced",
                                             "slight_disadvantage", "decisive_disadvantage"};

Bucket parse_bucket(const std::string& s) {
  for (size_t i = 0; i < std::size(kBucketNames); ++i) {
    if (kBucketNames[i] == s) return static_cast<Bucket>(i);
  }
  throw ParseError("unknown bucket '" + s + "'");
}

Json pn_to_json(const PnView& p) { return {{"pn", p.pn}, {"dn", p.dn}}; }
PnView pn_from_json(const Json& j) { return {get<std::uint64_t>(j, "pn", "pn"), get<std::uint64_t>(j, "dn", "pn")}; }

}  // namespace

std::string_view bucket_name(Bucket b) { return kBucketNames[static_cast<size_t>(b)]; }

Json flags_to_json(const EnhancementFlags& f) {
  return {{"solver", f.solver}, {"mast", f.mast}, {"nst", f.nst}, {"grave", f.grave}, {"pn", f.pn}};
}

EnhancementFlags flags_from_json(const Json& j) {
  EnhancementFlags f;
  if (j.is_string()) return parse_flags(j.get<std::string>());
  f.solver = get_opt<bool>(j, "solver", "enhancements").value_or(false);
  f.mast = get_opt<bool>(j, "mast", "enhancements").value_or(false);
  f.nst = get_opt<bool>(j, "nst", "enhancements").value_or(false);
  f.grave = get_opt<bool>(j, "grave", "enhancements").value_or(false);
  f.pn = get_opt<bool>(j, "pn", "enhancements").value_or(false);
  return f;
}

EnhancementFlags parse_flags(std::string_view list) {
  EnhancementFlags f;
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t end = list.find(',', pos);
    if (end == std::string_view::npos) end = list.size();
    std::string_view tok = list.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "solver" || tok == "score-bounded") {
      f.solver = true;
    } else if (tok == "mast") {
      f.mast = true;
    } else if (tok == "nst") {
      f.nst = true;
    } else if (tok == "grave") {
      f.grave = true;
    } else if (tok == "pn") {
      f.pn = true;
    } else if (tok == "all") {
      f = {true, true, true, true, true};
    } else if (!tok.empty() && tok != "none") {
      throw ConfigError("unknown enhancement '" + std::string(tok) + "'");
    }
    pos = end + 1;
  }
  return f;
}

std::string format_flags(const EnhancementFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(f.solver, "solver");
  add(f.mast, "mast");
  add(f.nst, "nst");
  add(f.grave, "grave");
  add(f.pn, "pn");
  return out.empty() ? "none" : out;
}

Json move_stats_to_json(const MoveStats& m) {
  Json j = {{"notation", m.notation}, {"visits", m.visits}, {"score", m.score}};
  if (m.amaf) j["amaf"] = {{"visits", m.amaf->visits}, {"score", m.amaf->score}};
  if (!m.ngrams.empty()) {
    Json arr = Json::array();
    for (const auto& g : m.ngrams) arr.push_back({{"visits", g.visits}, {"score", g.score}});
    j["ngrams"] = std::move(arr);
  }
  if (m.bounds) {
    j["pess"] = m.bounds->pess;
    j["opt"] = m.bounds->opt;
  }
  j["solved"] = m.solved;
  if (m.solved) {
    j["solved_value"] = m.solved_value;
    j["solved_distance_plies"] = m.solved_distance_plies;
  }
  if (m.pn) j["pn"] = pn_to_json(*m.pn);
  return j;
}

MoveStats move_stats_from_json(const Json& j) {
  constexpr std::string_view kWhere = "move_stats";
  MoveStats m;
  m.notation = get<std::string>(j, "notation", kWhere);
  m.visits = get<std::int64_t>(j, "visits", kWhere);
  m.score = get<double>(j, "score", kWhere);
  if (auto it = j.find("amaf"); it != j.end() && !it->is_null()) {
    m.amaf = AmafView{get<std::int64_t>(*it, "visits", "amaf"), get<double>(*it, "score", "amaf")};
  }
  if (auto it = j.find("ngrams"); it != j.end()) {
    if (!it->is_array()) throw ParseError("move_stats: field 'ngrams' has the wrong type");
    for (const auto& g : *it) m.ngrams.push_back({get<std::int64_t>(g, "visits", "ngrams"), get<double>(g, "score", "ngrams")});
  }
  auto pess = get_opt<double>(j, "pess", kWhere);
  auto opt = get_opt<double>(j, "opt", kWhere);
  if (pess && opt) m.bounds = BoundsView{*pess, *opt};
  m.solved = get_opt<bool>(j, "solved", kWhere).value_or(false);
  if (m.solved) {
    m.solved_value = get<double>(j, "solved_value", kWhere);
    m.solved_distance_plies = get<int>(j, "solved_distance_plies", kWhere);
  }
  if (auto it = j.find("pn"); it != j.end() && !it->is_null()) m.pn = pn_from_json(*it);
  return m;
}

Json snapshot_to_json(const TurnSnapshot& s) {
  Json moves = Json::array();
  for (const auto& m : s.move_stats) moves.push_back(move_stats_to_json(m));
  Json j = {{"game", s.game},
            {"mover", index(s.mover)},
            {"iterations_performed", s.iterations_performed},
            {"previous_turn_score", s.previous_turn_score ? Json(*s.previous_turn_score) : Json(nullptr)},
            {"move_stats", std::move(moves)},
            {"selected_index", s.selected_index},
            {"rationale", rationale_name(s.rationale)},
            {"principal_variation", s.principal_variation},
            {"features", flags_to_json(s.features)}};
  if (s.root_pn) j["root_pn"] = pn_to_json(*s.root_pn);
  return j;
}

TurnSnapshot snapshot_from_json(const Json& j) {
  constexpr std::string_view kWhere = "snapshot";
  TurnSnapshot s;
  s.game = get<std::string>(j, "game", kWhere);
  const int mover = get<int>(j, "mover", kWhere);
  if (mover != 0 && mover != 1) throw ParseError("snapshot: field 'mover' must be 0 or 1");
  s.mover = player_from_index(mover);
  s.iterations_performed = get<std::int64_t>(j, "iterations_performed", kWhere);
  s.previous_turn_score = get_opt<double>(j, "previous_turn_score", kWhere);
  const Json& moves = field(j, "move_stats", kWhere);
  if (!moves.is_array()) throw ParseError("snapshot: field 'move_stats' has the wrong type");
  for (const auto& m : moves) s.move_stats.push_back(move_stats_from_json(m));
  s.selected_index = get<std::size_t>(j, "selected_index", kWhere);
  if (s.selected_index >= s.move_stats.size()) throw ParseError("snapshot: selected_index out of range");
  s.rationale = parse_rationale(get<std::string>(j, "rationale", kWhere));
  s.principal_variation = get<std::vector<std::string>>(j, "principal_variation", kWhere);
  s.features = flags_from_json(field(j, "features", kWhere));
  if (auto it = j.find("root_pn"); it != j.end() && !it->is_null()) s.root_pn = pn_from_json(*it);
  return s;
}

namespace {

struct FactWriter {
  Json operator()(const BucketSummary& b) const {
    Json groups = Json::array();
    for (size_t i = 0; i < b.groups.size(); ++i) {
      groups.push_back({{"bucket", bucket_name(static_cast<Bucket>(i))},
                        {"count", b.groups[i].count},
                        {"any_proven", b.groups[i].any_proven},
                        {"extreme", b.groups[i].extreme}});
    }
    return {{"total", b.total}, {"groups", std::move(groups)}};
  }
  Json operator()(const ProvenResult& r) const {
    static constexpr const char* kOutcome[] = {"win", "loss", "draw"};
    return {{"move", r.move}, {"outcome", kOutcome[static_cast<int>(r.outcome)]}, {"turns", r.turns}, {"pv", r.pv}};
  }
  Json operator()(const PositionAssessment& a) const {
    return {{"move", a.move},
            {"category", bucket_name(a.category)},
            {"probability", a.probability},
            {"general_flag", a.general_flag},
            {"worst_probability", a.worst_probability}};
  }
  Json operator()(const PreviousTurnDelta& d) const { return {{"delta_probability", d.delta_probability}}; }
  Json operator()(const WorseAlternatives& w) const {
    return {{"count", w.count}, {"proven_defeats", w.proven_defeats}, {"likely_defeats", w.likely_defeats}};
  }
  Json operator()(const Margin& m) const {
    return {{"delta_probability", m.delta_probability},
            {"next_best", m.next_best},
            {"significant", m.significant},
            {"named_move", m.named_move}};
  }
  Json operator()(const WhyNot& w) const {
    return {{"move", w.move},
            {"probability", w.probability},
            {"better_count", w.better_count},
            {"best", w.best},
            {"advantage", w.advantage},
            {"attributed_metric", w.metric == AttributedMetric::kAmaf ? "amaf" : "visit_count"},
            {"metric_delta", w.metric_delta},
            {"metric_significant", w.metric_significant}};
  }
  Json operator()(const MetricCommentary& c) const {
    return {{"metric", c.metric},
            {"gram_length", c.gram_length},
            {"dominant", c.dominant},
            {"better_count", c.better_count},
            {"magnitude", c.magnitude}};
  }
  Json operator()(const PnImbalance& p) const { return {{"ratio", p.ratio}}; }
  Json operator()(const Forced& f) const { return {{"move", f.move}}; }
};

}  // namespace

Json fact_to_json(const ExplanationFact& f) {
  Json j = std::visit(FactWriter{}, f);
  j["type"] = fact_type_name(f);
  return j;
}

ExplanationFact fact_from_json(const Json& j) {
  const std::string type = get<std::string>(j, "type", "fact");
  const std::string where = "fact '" + type + "'";
  if (type == "bucket_summary") {
    BucketSummary b;
    b.total = get<int>(j, "total", where);
    const Json& groups = field(j, "groups", where);
    if (!groups.is_array() || groups.size() != b.groups.size()) throw ParseError(where + ": expected 5 groups");
    for (const auto& g : groups) {
      auto& out = b.groups[static_cast<size_t>(parse_bucket(get<std::string>(g, "bucket", where)))];
      out.count = get<int>(g, "count", where);
      out.any_proven = get<bool>(g, "any_proven", where);
      out.extreme = get<double>(g, "extreme", where);
    }
    return b;
  }
  if (type == "proven_result") {
    ProvenResult r;
    r.move = get<std::string>(j, "move", where);
    const std::string o = get<std::string>(j, "outcome", where);
    if (o == "win") {
      r.outcome = ProvenOutcome::kWin;
    } else if (o == "loss") {
      r.outcome = ProvenOutcome::kLoss;
    } else if (o == "draw") {
      r.outcome = ProvenOutcome::kDraw;
    } else {
      throw ParseError(where + ": unknown outcome '" + o + "'");
    }
    r.turns = get<int>(j, "turns", where);
    r.pv = get<std::vector<std::string>>(j, "pv", where);
    return r;
  }
  if (type == "position_assessment") {
    return PositionAssessment{get<std::string>(j, "move", where), parse_bucket(get<std::string>(j, "category", where)),
                              get<double>(j, "probability", where), get<bool>(j, "general_flag", where),
                              get<double>(j, "worst_probability", where)};
  }
  if (type == "previous_turn_delta") return PreviousTurnDelta{get<double>(j, "delta_probability", where)};
  if (type == "worse_alternatives") {
    return WorseAlternatives{get<int>(j, "count", where), get<int>(j, "proven_defeats", where),
                             get<int>(j, "likely_defeats", where)};
  }
  if (type == "margin") {
    return Margin{get<double>(j, "delta_probability", where), get<std::string>(j, "next_best", where),
                  get<bool>(j, "significant", where), get<std::string>(j, "named_move", where)};
  }
  if (type == "why_not") {
    WhyNot w;
    w.move = get<std::string>(j, "move", where);
    w.probability = get<double>(j, "probability", where);
    w.better_count = get<int>(j, "better_count", where);
    w.best = get<std::string>(j, "best", where);
    w.advantage = get<double>(j, "advantage", where);
    const std::string m = get<std::string>(j, "attributed_metric", where);
    if (m != "amaf" && m != "visit_count") throw ParseError(where + ": unknown metric '" + m + "'");
    w.metric = m == "amaf" ? AttributedMetric::kAmaf : AttributedMetric::kVisitCount;
    w.metric_delta = get<double>(j, "metric_delta", where);
    w.metric_significant = get<bool>(j, "metric_significant", where);
    return w;
  }
  if (type == "metric_commentary") {
    return MetricCommentary{get<std::string>(j, "metric", where), get<int>(j, "gram_length", where),
                            get<bool>(j, "dominant", where), get<int>(j, "better_count", where),
                            get<double>(j, "magnitude", where)};
  }
  if (type == "pn_imbalance") return PnImbalance{get<double>(j, "ratio", where)};
  if (type == "forced") return Forced{get<std::string>(j, "move", where)};
  throw ParseError("unknown fact type '" + type + "'");
}

Json report_to_json(const ExplanationReport& r) {
  Json facts = Json::array();
  for (const auto& f : r.facts) facts.push_back(fact_to_json(f));
  return {{"facts", std::move(facts)}, {"raw_dump", r.raw_dump}, {"prose", r.prose}, {"verbosity", r.verbosity}};
}

ExplanationReport report_from_json(const Json& j) {
  ExplanationReport r;
  const Json& facts = field(j, "facts", "report");
  if (!facts.is_array()) throw ParseError("report: field 'facts' has the wrong type");
  for (const auto& f : facts) r.facts.push_back(fact_from_json(f));
  r.raw_dump = get<std::string>(j, "raw_dump", "report");
  r.prose = get<std::string>(j, "prose", "report");
  r.verbosity = get<int>(j, "verbosity", "report");
  return r;
}

}  // namespace xmcts
