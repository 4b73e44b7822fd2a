#pragma once

// JSON forms of the library types. Readers throw Error(parse_error) on
// malformed input and let domain errors (duplicate_value, not_comparable,
// config_invalid) through unchanged.

#include <filesystem>
#include "json.hpp"

#include "treedup/diagonal.hpp"
#include "treedup/gruenhage.hpp"
#include "treedup/talagrand.hpp"

namespace treedup::io {

using nlohmann::json;

json to_json(const Node& n);
json to_json(const NodeOrRoot& n);
json to_json(const Point& p);
json to_json(const BasicOpen& w);
json to_json(const OpenSet& u);
json to_json(const Fragment& f);
json to_json(const Candidate& c);
json to_json(const DiagTrace& t);
json to_json(const FinSuppFn& f);
json to_json(const StarSequence& s);
json to_json(const VSet& v);

Node node_from_json(const json& j);
NodeOrRoot node_or_root_from_json(const json& j);
Point point_from_json(const json& j);
BasicOpen basic_open_from_json(const json& j);
OpenSet open_set_from_json(const json& j);
Fragment fragment_from_json(const json& j, Injectivity injectivity = Injectivity::enforce);
Candidate candidate_from_json(const json& j);
DiagTrace trace_from_json(const json& j);
FinSuppFn fin_supp_fn_from_json(const json& j);
StarSequence star_from_json(const json& j);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace treedup::io
