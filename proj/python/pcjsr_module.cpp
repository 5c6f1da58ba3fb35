#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcjsr/benchmarks.hpp"
#include "pcjsr/engine.hpp"
#include "pcjsr/errors.hpp"
#include "pcjsr/io.hpp"

namespace py = pybind11;
using namespace pcjsr;

namespace {

MatrixSet to_set(const std::vector<Matrix>& mats) { return make_matrix_set(mats); }

LyapunovTemplate to_template(const std::string& text) {
  if (text == "quadratic") return LyapunovTemplate::quadratic();
  if (text.rfind("sos:", 0) == 0) return LyapunovTemplate::sos(std::stoi(text.substr(4)));
  fail(ErrorCode::InvalidInput, "unknown template '" + text + "'");
}

py::dict bound_dict(const BoundReport& rep) {
  py::dict d;
  d["rho_hat"] = rep.rho_hat;
  d["gamma_star"] = rep.gamma_star;
  d["graph"] = rep.graph_name;
  d["template"] = rep.template_name;
  d["lower_bound"] = rep.lower_bound_used;
  d["verify_margin"] = rep.verify_margin;
  d["factor"] = rep.factor ? py::object(py::float_(*rep.factor)) : py::object(py::none());
  d["solves"] = rep.solves;
  d["seconds"] = rep.seconds;
  py::list blocks;
  for (const Matrix& B : rep.certificate.blocks) blocks.append(B);
  d["certificate_blocks"] = std::move(blocks);
  return d;
}

}  // namespace

PYBIND11_MODULE(_pcjsr, mod) {
  mod.doc() = "Certified joint spectral radius bounds from path-complete Lyapunov functions";

  py::register_exception<Error>(mod, "JsrError");

  mod.def(
      "lower_bound",
      [](const std::vector<Matrix>& mats, int max_len) {
        const LowerBoundReport rep = lower_bound(to_set(mats), max_len);
        return py::make_tuple(rep.value, rep.witness);
      },
      py::arg("matrices"), py::arg("max_len"),
      "Best spectral-radius lower bound over words up to max_len; returns (value, witness).");

  mod.def(
      "norm_upper_bound",
      [](const std::vector<Matrix>& mats, int len) {
        return norm_upper_bound(to_set(mats), len);
      },
      py::arg("matrices"), py::arg("len"),
      "max over length-len words of the product operator norm^(1/len).");

  mod.def(
      "upper_bound",
      [](const std::vector<Matrix>& mats, const std::string& graph,
         const std::string& template_text, double tol) {
        const MatrixSet A = to_set(mats);
        const FamilySpec family = parse_family(graph);
        UpperBoundOptions opts;
        opts.tol = tol;
        opts.family = family;
        return bound_dict(
            upper_bound(build(family, A.m()), graph, A, to_template(template_text), opts));
      },
      py::arg("matrices"), py::arg("graph"), py::arg("template") = "quadratic",
      py::arg("tol") = 1e-6,
      "Certified upper bound on the joint spectral radius for one graph family.");

  mod.def(
      "is_path_complete",
      [](const std::string& graph, int m) {
        const FamilySpec family = parse_family(graph);
        const LabeledGraph g =
            build(family, family.kind == FamilySpec::Kind::FromFile ? 0 : m);
        const PathCompletenessResult res = is_path_complete(g);
        std::string status;
        switch (res.status) {
          case PathCompletenessResult::Status::Complete: status = "path-complete"; break;
          case PathCompletenessResult::Status::Incomplete: status = "not-path-complete"; break;
          case PathCompletenessResult::Status::Undecided: status = "undecided"; break;
        }
        return py::make_tuple(status, res.witness ? py::cast(*res.witness)
                                                  : py::object(py::none()));
      },
      py::arg("graph"), py::arg("m") = 2,
      "Checks a family spec or file:<path> graph; returns (status, witness_or_None).");

  mod.def(
      "compare",
      [](const std::vector<Matrix>& mats, const std::vector<std::string>& graph_names,
         const std::string& template_text, double tol) {
        const MatrixSet A = to_set(mats);
        std::vector<std::pair<std::string, LabeledGraph>> graphs;
        for (const std::string& name : graph_names)
          graphs.emplace_back(name, build(parse_family(name), A.m()));
        UpperBoundOptions opts;
        opts.tol = tol;
        const CompareReport rep = compare(graphs, A, to_template(template_text), opts);
        py::list rows;
        for (const CompareRow& r : rep.rows) {
          py::dict d;
          d["graph"] = r.name;
          d["rho_hat"] = r.rho_hat;
          d["factor"] = r.factor ? py::object(py::float_(*r.factor)) : py::object(py::none());
          rows.append(std::move(d));
        }
        py::list eqs;
        for (const EqualityCheck& e : rep.equalities) {
          py::dict d;
          d["names"] = e.names;
          d["max_rel_spread"] = e.max_rel_spread;
          d["ok"] = e.ok;
          eqs.append(std::move(d));
        }
        py::list ords;
        for (const OrderCheck& o : rep.orderings) {
          py::dict d;
          d["from"] = o.from;
          d["to"] = o.to;
          d["ok"] = o.ok;
          ords.append(std::move(d));
        }
        py::dict out;
        out["rows"] = std::move(rows);
        out["equalities"] = std::move(eqs);
        out["orderings"] = std::move(ords);
        return out;
      },
      py::arg("matrices"), py::arg("graphs"), py::arg("template") = "quadratic",
      py::arg("tol") = 1e-6,
      "Bounds each graph family and annotates proven equalities and orderings.");

  mod.def(
      "benchmark",
      [](const std::string& id) {
        const Benchmark& b = benchmark(id);
        py::list mats;
        for (const Matrix& M : b.matrices.matrices) mats.append(M);
        return mats;
      },
      py::arg("id"), "Matrices of a bundled benchmark instance (ex4.1, ex5.2, ex5.3).");

  mod.def("benchmark_ids", [] {
    std::vector<std::string> ids;
    for (const Benchmark& b : benchmarks()) ids.push_back(b.id);
    return ids;
  });
}
