#pragma once

// JSON and text serialization for every wire format the CLI speaks:
// families, tables, joints, bases, graphs, matrices, polytopes, reports.
// Readers throw input_error on malformed data; writers emit canonical,
// deterministic documents that the readers accept back unchanged.

#include <string>
#include <vector>

#include <json.hpp>

#include "cprel/algebra.hpp"
#include "cprel/geometry.hpp"
#include "cprel/relations.hpp"

namespace cprel {

using json = nlohmann::json;

// {"m": 3, "events": [[1,2],[2,3],[1,2,3]]}
EventFamily family_from_json(const json& j);
json family_to_json(const EventFamily& family);

// {"mode":"exact","entries":[{"i":1,"event":[1,2],"value":"2/3"},...]};
// float mode carries JSON numbers instead of strings.
CPTable table_from_json(const json& j);
json table_to_json(const CPTable& table);

// {"m":3,"p":["1/2","1/4","1/4"]}
JointDistribution joint_from_json(const json& j);
json joint_to_json(const JointDistribution& joint);

json binomial_to_json(const Binomial& b);
Binomial binomial_from_json(const json& j);
json basis_to_json(const GroebnerBasis& basis);
std::string basis_to_text(const GroebnerBasis& basis);

json graph_to_json(const BipartiteGraph& g);
std::string graph_to_dot(const BipartiteGraph& g);
json matrix_to_json(const IncidenceMatrix& a);

// {"equality_sum":3,"vertices":[[2,1,0],...],"inequalities":[{"J":[1],"bound":2},...]}
json polytope_to_json(const LatticePolytope& p);

json report_to_json(const CompatibilityReport& report);

json load_json_file(const std::string& path);

}  // namespace cprel
