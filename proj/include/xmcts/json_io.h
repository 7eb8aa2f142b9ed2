#pragma once

// JSON forms of snapshots and explanation reports, shared by transcripts and
// the HTTP service. Readers throw ParseError naming the offending field.

#include "json.hpp"
#include "xmcts/explain.h"
#include "xmcts/snapshot.h"

namespace xmcts {

using Json = nlohmann::json;

Json flags_to_json(const EnhancementFlags& f);
EnhancementFlags flags_from_json(const Json& j);
// Comma separated list such as "solver,mast,nst"; "none" or "" disables all.
EnhancementFlags parse_flags(std::string_view list);
std::string format_flags(const EnhancementFlags& f);

Json move_stats_to_json(const MoveStats& m);
MoveStats move_stats_from_json(const Json& j);

Json snapshot_to_json(const TurnSnapshot& s);
TurnSnapshot snapshot_from_json(const Json& j);

Json fact_to_json(const ExplanationFact& f);
ExplanationFact fact_from_json(const Json& j);

Json report_to_json(const ExplanationReport& r);
ExplanationReport report_from_json(const Json& j);

std::string_view bucket_name(Bucket b);

}  // namespace xmcts
