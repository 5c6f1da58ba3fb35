#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcjsr/families.hpp"
#include "pcjsr/solver.hpp"

namespace pcjsr {

struct LowerBoundReport {
  double value = 0.0;  // max over words of rho(product)^(1/len)
  Word witness;        // shortest, then lexicographically smallest maximizer
  std::uint64_t words_checked = 0;
};

// Enumerates all words of length 1..max_len. Candidates within 1e-12 relative
// of the incumbent count as ties so cyclic rotations of the same word cannot
// steal the witness through last-ulp noise.
LowerBoundReport lower_bound(const MatrixSet& A, int max_len,
                             std::uint64_t budget = std::uint64_t(1) << 20);

// max over words of exact length len of ||product||^(1/len); an upper bound
// on the joint spectral radius for every fixed len.
double norm_upper_bound(const MatrixSet& A, int len,
                        std::uint64_t budget = std::uint64_t(1) << 20);

struct BisectionStep {
  double gamma = 0.0;
  SolveResult::Status status = SolveResult::Status::Inconclusive;
};

struct BoundReport {
  double rho_hat = 0.0;    // 1 / gamma_star
  double gamma_star = 0.0;  // largest gamma certified feasible
  std::string graph_name;
  std::string template_name;
  Certificate certificate;  // verified at gamma_star
  double verify_margin = 0.0;
  std::optional<double> factor;  // rho_hat / factor <= rho <= rho_hat
  double lower_bound_used = 0.0;
  std::vector<BisectionStep> trace;
  int solves = 0;
  double seconds = 0.0;
};

struct UpperBoundOptions {
  double tol = 1e-6;  // relative bracket width at termination
  SolveOptions solve;
  int lower_bound_len = 3;      // bracket top from this enumeration depth
  std::uint64_t enum_budget = std::uint64_t(1) << 20;
  std::optional<FamilySpec> family;  // enables the guarantee factor lookup
};

// Certified upper bound: checks path-completeness, brackets gamma between
// 1/norm_upper_bound (halving on failure) and 1/lower_bound, then bisects,
// treating Inconclusive solves as infeasible. Every reported bound carries a
// re-verified certificate at gamma_star.
BoundReport upper_bound(const LabeledGraph& g, const std::string& graph_name,
                        const MatrixSet& A, const LyapunovTemplate& tpl,
                        const UpperBoundOptions& opts = {});

// Proven one-sided accuracy factor for template/family combinations that have
// one; absence means no guarantee is claimed, not a guess.
std::optional<double> guarantee_factor(const LyapunovTemplate& tpl, const FamilySpec& family,
                                       int n, int m);

struct CompareRow {
  std::string name;
  double rho_hat = 0.0;
  std::optional<double> factor;
};

struct EqualityCheck {
  std::vector<std::string> names;
  double max_rel_spread = 0.0;
  bool ok = false;
};

struct OrderCheck {
  std::string from, to;  // claim: rho_hat(to) <= rho_hat(from) (+ tolerance)
  bool ok = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;        // ascending rho_hat
  std::vector<EqualityCheck> equalities;  // proven-equal groups present in the input
  std::vector<OrderCheck> orderings;      // proven orderings present in the input
};

// Bounds each named graph with the same template and annotates the result
// with the relations proven for the built-in families (keyed by name).
CompareReport compare(const std::vector<std::pair<std::string, LabeledGraph>>& graphs,
                      const MatrixSet& A, const LyapunovTemplate& tpl,
                      const UpperBoundOptions& opts = {}, double rel_tol = 1e-3);

}  // namespace pcjsr
