// Acceptance gate: runs every release criterion and prints one line each.
// Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcjsr/benchmarks.hpp"
#include "pcjsr/engine.hpp"
#include "pcjsr/errors.hpp"
#include "pcjsr/io.hpp"

using namespace pcjsr;

namespace {

struct Audit {
  int reports = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  int missing_certificates = 0;

  void add(double margin, bool has_certificate) {
    ++reports;
    min_margin = std::min(min_margin, margin);
    if (!has_certificate) ++missing_certificates;
  }
};

Audit g_audit;

BoundReport abound(const LabeledGraph& g, const std::string& name, const MatrixSet& A,
                   const LyapunovTemplate& tpl, const UpperBoundOptions& opts = {}) {
  BoundReport rep = upper_bound(g, name, A, tpl, opts);
  g_audit.add(rep.verify_margin, !rep.certificate.blocks.empty());
  return rep;
}

BoundReport abound_family(const MatrixSet& A, const std::string& family,
                          const LyapunovTemplate& tpl = LyapunovTemplate::quadratic(),
                          double tol = 1e-6) {
  const FamilySpec spec = parse_family(family);
  UpperBoundOptions opts;
  opts.tol = tol;
  opts.family = spec;
  return abound(build(spec, A.m()), family, A, tpl, opts);
}

SolveResult asolve(const LmiSystem& sys) {
  SolveResult res = solve(sys);
  if (res.status == SolveResult::Status::Feasible)
    g_audit.add(res.verify_margin, res.certificate.has_value());
  return res;
}

MatrixSet random_pair(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Matrix> mats;
  for (int i = 0; i < 2; ++i) {
    Matrix M(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) M(r, c) = u(rng);
    mats.push_back(M);
  }
  return make_matrix_set(std::move(mats));
}

bool rel_close(double value, double reference, double rel) {
  return std::abs(value - reference) <= rel * std::abs(reference);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int g_failures = 0;

void criterion(int id, double time_budget,
               const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [ok, text] = body();
    pass = ok;
    detail = text;
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_budget > 0.0 && seconds > time_budget) {
    pass = false;
    detail += " [over the " + fmt(time_budget) + "s budget]";
  }
  std::printf("criterion %d: %s (%.1fs) %s\n", id, pass ? "PASS" : "FAIL", seconds,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// Per-word path search on the expanded graph, independent of the subset
// decision procedure: a word is spelled if some path spells it exactly.
bool word_spelled(const LabeledGraph& ex, const Word& w) {
  std::set<std::string> cur(ex.nodes.begin(), ex.nodes.end());
  for (int letter : w) {
    std::set<std::string> next;
    for (const Edge& e : ex.edges)
      if (e.label.size() == 1 && e.label[0] == letter && cur.count(e.from)) next.insert(e.to);
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  return true;
}

bool brute_force_complete(const LabeledGraph& g, int max_len) {
  const LabeledGraph ex = expand(g);
  Word w;
  std::function<bool(int)> rec = [&](int remaining) {
    if (!word_spelled(ex, w)) return false;
    if (remaining == 0) return true;
    for (int letter = 1; letter <= g.m; ++letter) {
      w.push_back(letter);
      const bool ok = rec(remaining - 1);
      w.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int letter = 1; letter <= g.m; ++letter) {
    w.assign(1, letter);
    if (!rec(max_len - 1)) return false;
  }
  return true;
}

LabeledGraph random_graph(std::mt19937& rng) {
  std::uniform_int_distribution<int> node_count(1, 4), edge_count(1, 6), len(1, 2), letter(1, 2);
  LabeledGraph g;
  g.m = 2;
  const int nodes = node_count(rng);
  for (int i = 1; i <= nodes; ++i) g.nodes.push_back(std::to_string(i));
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  const int edges = edge_count(rng);
  for (int e = 0; e < edges; ++e) {
    Word w;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) w.push_back(letter(rng));
    g.edges.push_back({g.nodes[pick(rng)], g.nodes[pick(rng)], std::move(w)});
  }
  return g;
}

}  // namespace

int main() {
  const LyapunovTemplate quad = LyapunovTemplate::quadratic();

  criterion(1, 5.0, [&]() -> std::pair<bool, std::string> {
    const MatrixSet A = benchmark("ex5.2").matrices;
    const double h1 = abound_family(A, "h1").rho_hat;
    const double g1 = abound_family(A, "g1").rho_hat;
    const LowerBoundReport lb = lower_bound(A, 1);
    const bool ok = std::abs(h1 - 1.41421) <= 1e-3 && g1 >= 0.999 && g1 <= 1.001 &&
                    std::abs(lb.value - 1.0) <= 1e-9;
    return {ok, "h1=" + fmt(h1) + " g1=" + fmt(g1) + " lb=" + fmt(lb.value)};
  });

  criterion(2, 600.0, [&]() -> std::pair<bool, std::string> {
    const MatrixSet A = benchmark("ex5.3").matrices;
    const double h1 = abound_family(A, "h1").rho_hat;

    // The reference for the squared-set bound uses the products A_i A_j with
    // i <= j rather than all ordered products.
    std::vector<Matrix> sq;
    for (int i = 0; i < A.m(); ++i)
      for (int j = i; j < A.m(); ++j) sq.push_back(A.matrices[i] * A.matrices[j]);
    const MatrixSet A2 = make_matrix_set(std::move(sq));
    const double sq_bound = std::sqrt(abound_family(A2, "h1").rho_hat);

    const double g1 = abound_family(A, "g1").rho_hat;
    const double sos = abound_family(A, "h1", LyapunovTemplate::sos(4)).rho_hat;
    const LowerBoundReport lb = lower_bound(A, 3);

    bool ok = rel_close(h1, 12.5683, 5e-3) && rel_close(sq_bound, 11.9575, 5e-3) &&
              rel_close(g1, 11.8097, 5e-3) && rel_close(sos, 11.8015, 5e-3);
    ok = ok && std::abs(lb.value - 11.8015) <= 1e-2 && lb.witness == Word{1, 2, 2};
    return {ok, "h1=" + fmt(h1) + " sq=" + fmt(sq_bound) + " g1=" + fmt(g1) +
                    " sos4=" + fmt(sos) + " lb=" + fmt(lb.value) + " witness=" +
                    word_to_string(lb.witness)};
  });

  criterion(3, 600.0, [&]() -> std::pair<bool, std::string> {
    const MatrixSet A = benchmark("ex4.1").matrices;
    const double direct = abound_family(A, "h1", LyapunovTemplate::sos(4)).rho_hat;
    const double flipped = abound_family(transposed(A), "h1", LyapunovTemplate::sos(4)).rho_hat;
    const double gap = std::abs(direct - flipped);
    const bool ok = rel_close(direct, 21.411, 5e-3) && rel_close(flipped, 21.214, 5e-3) &&
                    gap >= 0.1;
    return {ok, "sos4=" + fmt(direct) + " transposed=" + fmt(flipped) + " gap=" + fmt(gap)};
  });

  // Shared corpus with per-family bounds for the equality and ordering suites.
  const std::vector<std::string> family_names = {
      "h1",  "h2:t=2", "g1",  "g1d", "g2",  "g2b", "g2d", "g2bd",
      "g3",  "g3b",    "g4",  "h3",  "h3b", "h3d", "h3bd"};
  std::vector<std::map<std::string, double>> corpus_bounds;
  std::vector<MatrixSet> corpus;
  {
    std::mt19937 rng(42);
    for (int i = 0; i < 20; ++i) corpus.push_back(random_pair(rng, 3));
  }

  criterion(4, 0.0, [&]() -> std::pair<bool, std::string> {
    // h3b, h3d, h3bd are the swapped and dual variants of the one-node list.
    const LabeledGraph h3 = build(parse_family("h3"), 2);
    std::vector<std::pair<std::string, LabeledGraph>> graphs;
    for (const std::string& name : family_names) {
      if (name == "h3b") graphs.emplace_back(name, swap_labels(h3));
      else if (name == "h3d") graphs.emplace_back(name, dual(h3));
      else if (name == "h3bd") graphs.emplace_back(name, dual(swap_labels(h3)));
      else graphs.emplace_back(name, build(parse_family(name), 2));
    }

    static const std::vector<std::vector<std::string>> groups = {
        {"g1", "g1d"},   {"h1", "g3", "g3b", "g4"}, {"g2", "h3"},
        {"g2b", "h3b"},  {"g2d", "h3d"},            {"g2bd", "h3bd"},
    };

    int violations = 0, checks = 0;
    double worst = 0.0;
    for (const MatrixSet& A : corpus) {
      std::map<std::string, double> bounds;
      for (const auto& [name, g] : graphs) {
        UpperBoundOptions opts;
        opts.family = parse_family(name == "h3b" || name == "h3d" || name == "h3bd" ? "h3"
                                                                                    : name);
        bounds[name] = abound(g, name, A, quad, opts).rho_hat;
      }
      corpus_bounds.push_back(bounds);
      for (const auto& group : groups) {
        double lo = bounds.at(group[0]), hi = lo;
        for (const std::string& name : group) {
          lo = std::min(lo, bounds.at(name));
          hi = std::max(hi, bounds.at(name));
        }
        const double spread = (hi - lo) / lo;
        worst = std::max(worst, spread);
        ++checks;
        if (spread > 1e-3) ++violations;
      }
    }

    // Cross-check the packaged comparison on the first corpus set.
    const CompareReport rep = compare(graphs, corpus.front(), quad);
    bool cross = rep.equalities.size() == groups.size();
    for (const auto& eq : rep.equalities) cross = cross && eq.ok;

    const bool ok = violations == 0 && cross;
    return {ok, std::to_string(checks) + " group checks, " + std::to_string(violations) +
                    " violations, worst spread " + fmt(worst)};
  });

  criterion(5, 0.0, [&]() -> std::pair<bool, std::string> {
    static const std::vector<std::pair<std::string, std::string>> arrows = {
        {"h1", "h2:t=2"}, {"h2:t=2", "g1"}, {"h1", "g1"},  {"h1", "g2"},
        {"h1", "g2b"},    {"h1", "g2d"},    {"h1", "g2bd"},
    };
    if (corpus_bounds.size() != corpus.size())
      return {false, "corpus bounds missing (criterion 4 did not complete)"};
    int violations = 0, checks = 0;
    double worst = 0.0;
    for (const auto& bounds : corpus_bounds) {
      for (const auto& [tail, head] : arrows) {
        const double from = bounds.at(tail), to = bounds.at(head);
        ++checks;
        const double excess = (to - from) / from;
        worst = std::max(worst, excess);
        if (to > from * (1.0 + 1e-3)) ++violations;
      }
    }
    return {violations == 0, std::to_string(checks) + " arrow checks, " +
                                 std::to_string(violations) + " violations, worst excess " +
                                 fmt(worst)};
  });

  criterion(6, 30.0, [&]() -> std::pair<bool, std::string> {
    std::mt19937 rng(2026);
    int oracle_mismatches = 0, dual_mismatches = 0, complete_count = 0;
    for (int i = 0; i < 500; ++i) {
      const LabeledGraph g = random_graph(rng);
      const auto sub = is_path_complete(g);
      const bool brute = brute_force_complete(g, 8);
      const bool subset = sub.status == PathCompletenessResult::Status::Complete;
      if (subset != brute) ++oracle_mismatches;
      if (subset) ++complete_count;
      const auto dual_verdict = is_path_complete(dual(g));
      if (dual_verdict.status != sub.status) ++dual_mismatches;
    }
    const bool ok = oracle_mismatches == 0 && dual_mismatches == 0;
    return {ok, "500 graphs (" + std::to_string(complete_count) + " complete), " +
                    std::to_string(oracle_mismatches) + " oracle and " +
                    std::to_string(dual_mismatches) + " dual mismatches"};
  });

  criterion(7, 0.0, [&]() -> std::pair<bool, std::string> {
    std::mt19937 rng(7);
    int failures = 0, instances = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int l : {2, 3}) {
      for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const MatrixSet A = random_pair(rng, n);
        const double gamma = 0.9 / norm_upper_bound(A, 1);

        // Common quadratic for the scaled length-l products.
        const MatrixSet powers = power_alphabet(scaled(A, gamma), l);
        const LmiSystem common =
            build_lmi(build(parse_family("h1"), powers.m()), powers, 1.0, quad);
        const SolveResult sol = asolve(common);
        if (sol.status != SolveResult::Status::Feasible) {
          ++failures;
          continue;
        }
        const Matrix Q = sol.certificate->blocks[0];

        auto check = [&](const Certificate& cert, const LabeledGraph& target) {
          const LmiSystem sys = build_lmi(target, A, gamma, quad);
          const double margin =
              verify_certificate(sys, rescaled_to_normalization(sys, cert));
          worst = std::min(worst, margin);
          ++instances;
          if (margin < -1e-9) ++failures;
        };
        if (l == 2)
          check(two_step_certificate(A, gamma, Q), build(parse_family("g1"), A.m()));
        check(nested_certificate(A, gamma, l, Q),
              build(parse_family("debruijnd:k=" + std::to_string(l - 1)), A.m()));
      }
    }
    return {failures == 0, std::to_string(instances) + " certificates, " +
                               std::to_string(failures) + " failures, worst margin " +
                               fmt(worst)};
  });

  criterion(8, 0.0, [&]() -> std::pair<bool, std::string> {
    struct Instance {
      std::string label;
      MatrixSet matrices;
      double rho_true;
    };
    Matrix rot(2, 2), mirror(2, 2), tri(2, 2), d2 = Matrix::Zero(2, 2),
        d3 = Matrix::Zero(3, 3);
    rot << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
    mirror << 0.3, 0.4, 0.4, -0.3;  // symmetric, eigenvalues +/- 0.5
    tri << 0.7, 0.2, 0.0, 0.6;
    d2(0, 0) = 0.9;
    d2(1, 1) = 0.3;
    d3(0, 0) = 0.95;
    d3(1, 1) = -0.4;
    d3(2, 2) = 0.2;
    const std::vector<Instance> instances = {
        {"pair", benchmark("ex5.2").matrices, 1.0},
        {"diag", make_matrix_set({d2}), 0.9},
        {"rotation", make_matrix_set({0.8 * rot}), 0.8},
        {"mirror", make_matrix_set({mirror}), 0.5},
        {"triangular", make_matrix_set({tri}), 0.7},
        {"diag3", make_matrix_set({d3}), 0.95},
    };

    struct Method {
      std::string family;
      LyapunovTemplate tpl;
    };
    const std::vector<Method> methods = {
        {"h1", quad},           {"h1", LyapunovTemplate::sos(4)},
        {"g1", quad},           {"g1d", quad},
        {"h2:t=2", quad},       {"h2:t=3", quad},
        {"debruijnd:k=1", quad}, {"debruijnd:k=2", quad},
        {"h3", quad},           {"h4", quad},
    };

    int checks = 0, violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    std::string worst_at = "none";
    for (const Instance& inst : instances) {
      for (const Method& method : methods) {
        if (inst.matrices.m() != 2 && (method.family == "h3" || method.family == "h4"))
          continue;  // defined for two-letter alphabets only
        const BoundReport rep =
            abound_family(inst.matrices, method.family, method.tpl, 1e-8);
        if (!rep.factor) return {false, "missing factor for " + method.family};
        const double low = rep.rho_hat / *rep.factor;
        ++checks;
        const double excess =
            std::max(low - (inst.rho_true + 1e-6), inst.rho_true - (rep.rho_hat + 1e-6));
        if (excess > worst) {
          worst = excess;
          worst_at = inst.label + "/" + method.family + "(" + method.tpl.name() + ")";
        }
        if (excess > 0.0) ++violations;
      }
    }
    return {violations == 0, std::to_string(checks) + " sandwich checks, " +
                                 std::to_string(violations) + " violations, tightest " +
                                 worst_at + " at " + fmt(worst)};
  });

  criterion(9, 0.0, [&]() -> std::pair<bool, std::string> {
    std::mt19937 rng(17);
    int violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
      const MatrixSet A = random_pair(rng, 3);
      const double lhs = abound_family(A, "g1").rho_hat;
      const double rhs = std::sqrt(abound_family(power_alphabet(A, 2), "h1").rho_hat);
      worst = std::max(worst, lhs - rhs);
      if (lhs > rhs + 1e-4) ++violations;
    }
    return {violations == 0, "20 pairs, " + std::to_string(violations) +
                                 " violations, worst excess " + fmt(worst)};
  });

  criterion(10, 0.0, [&]() -> std::pair<bool, std::string> {
    const bool ok = g_audit.reports > 0 && g_audit.missing_certificates == 0 &&
                    g_audit.min_margin >= 5e-8;
    return {ok, std::to_string(g_audit.reports) + " certified results, min margin " +
                    fmt(g_audit.min_margin) + ", " +
                    std::to_string(g_audit.missing_certificates) + " without certificates"};
  });

  if (g_failures == 0) std::printf("all criteria passed\n");
  else std::printf("%d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
