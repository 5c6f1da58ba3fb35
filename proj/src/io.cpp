#include "pcjsr/io.hpp"

#include <fstream>

#include "pcjsr/errors.hpp"

namespace pcjsr {

namespace {

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON");
  return j;
}

void write_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(ErrorCode::InvalidInput, std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Json graph_to_json(const LabeledGraph& g) {
  Json j;
  j["m"] = g.m;
  j["nodes"] = g.nodes;
  j["edges"] = Json::array();
  for (const Edge& e : g.edges)
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  return j;
}

LabeledGraph graph_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "graph: expected a JSON object");
  LabeledGraph g;
  g.m = get_int(j, "m");
  if (!j.contains("nodes") || !j["nodes"].is_array())
    fail(ErrorCode::InvalidInput, "graph: missing 'nodes' array");
  for (const Json& v : j["nodes"]) {
    if (!v.is_string()) fail(ErrorCode::InvalidInput, "graph: node ids must be strings");
    g.nodes.push_back(v.get<std::string>());
  }
  if (!j.contains("edges") || !j["edges"].is_array())
    fail(ErrorCode::InvalidInput, "graph: missing 'edges' array");
  for (const Json& je : j["edges"]) {
    if (!je.is_object() || !je.contains("from") || !je.contains("to") || !je.contains("label") ||
        !je["from"].is_string() || !je["to"].is_string() || !je["label"].is_array())
      fail(ErrorCode::InvalidInput, "graph: each edge needs string 'from'/'to' and array 'label'");
    Edge e;
    e.from = je["from"].get<std::string>();
    e.to = je["to"].get<std::string>();
    for (const Json& l : je["label"]) {
      if (!l.is_number_integer()) fail(ErrorCode::InvalidInput, "graph: labels are integer arrays");
      e.label.push_back(l.get<int>());
    }
    g.edges.push_back(std::move(e));
  }
  validate(g);
  return g;
}

LabeledGraph load_graph(const std::string& path) { return graph_from_json(parse_file(path)); }

void save_graph(const LabeledGraph& g, const std::string& path) {
  write_file(graph_to_json(g), path);
}

Json matrix_to_json(const Matrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::InvalidInput, "matrix: expected a nonempty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) fail(ErrorCode::InvalidInput, "matrix: rows must be arrays");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols || cols == 0)
      fail(ErrorCode::InvalidInput, "matrix: rows must be nonempty and of equal length");
  }
  Matrix M(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) fail(ErrorCode::InvalidInput, "matrix: entries must be numbers");
      M(i, k) = j[i][k].get<double>();
    }
  return M;
}

Json matrix_set_to_json(const MatrixSet& A) {
  Json j;
  j["n"] = A.n;
  j["matrices"] = Json::array();
  for (const Matrix& M : A.matrices) j["matrices"].push_back(matrix_to_json(M));
  return j;
}

MatrixSet matrix_set_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "matrix set: expected a JSON object");
  const int n = get_int(j, "n");
  if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
    fail(ErrorCode::InvalidInput, "matrix set: missing nonempty 'matrices' array");
  std::vector<Matrix> mats;
  for (const Json& jm : j["matrices"]) mats.push_back(matrix_from_json(jm));
  MatrixSet A = make_matrix_set(std::move(mats));
  if (A.n != n)
    fail(ErrorCode::InvalidInput, "matrix set: declared n=" + std::to_string(n) +
                                      " does not match matrices of size " + std::to_string(A.n));
  return A;
}

MatrixSet load_matrix_set(const std::string& path) {
  return matrix_set_from_json(parse_file(path));
}

void save_matrix_set(const MatrixSet& A, const std::string& path) {
  write_file(matrix_set_to_json(A), path);
}

Json lmi_to_json(const LmiSystem& sys) {
  Json j;
  j["n"] = sys.n;
  j["gamma"] = sys.gamma;
  j["template"] = sys.tpl.name();
  j["blocks"] = Json::array();
  for (const BlockInfo& b : sys.blocks) j["blocks"].push_back({{"name", b.name}, {"dim", b.dim}});
  j["constraints"] = Json::array();
  for (const LmiConstraint& c : sys.constraints) {
    Json jc;
    jc["name"] = c.name;
    jc["kind"] = c.kind == LmiConstraint::Kind::PsdSlack ? "psd" : "poly_zero";
    jc["normalization"] = c.is_normalization;
    jc["terms"] = Json::array();
    for (const AffineTerm& t : c.expr.terms)
      jc["terms"].push_back({{"block", sys.blocks[t.block].name},
                             {"coeff", t.coeff},
                             {"congruence", matrix_to_json(t.congruence)}});
    jc["constant"] = matrix_to_json(c.expr.constant);
    j["constraints"].push_back(std::move(jc));
  }
  return j;
}

}  // namespace pcjsr
