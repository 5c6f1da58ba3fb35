#pragma once

#include <string>

#include <json.hpp>

#include "pcjsr/alphabet.hpp"
#include "pcjsr/graph.hpp"
#include "pcjsr/lmi.hpp"

namespace pcjsr {

using Json = nlohmann::ordered_json;

// Graph files: {"m": int, "nodes": [string], "edges":
//   [{"from": string, "to": string, "label": [int]}]}
// with 1-based letters in application order.
Json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const Json& j);
LabeledGraph load_graph(const std::string& path);
void save_graph(const LabeledGraph& g, const std::string& path);

// Matrix set files: {"n": int, "matrices": [[[number]]]} row-major.
Json matrix_set_to_json(const MatrixSet& A);
MatrixSet matrix_set_from_json(const Json& j);
MatrixSet load_matrix_set(const std::string& path);
void save_matrix_set(const MatrixSet& A, const std::string& path);

Json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const Json& j);

// Debugging dump of an assembled feasibility system.
Json lmi_to_json(const LmiSystem& sys);

}  // namespace pcjsr
