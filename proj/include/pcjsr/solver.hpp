#pragma once

#include <limits>
#include <optional>
#include <string>

#include "pcjsr/lmi.hpp"

namespace pcjsr {

struct SolveOptions {
  // Three-valued verdict band: Feasible needs slack >= slack_tol plus a
  // re-verified certificate, Infeasible needs the dual bound below
  // -slack_tol, anything else is Inconclusive.
  double slack_tol = 1e-7;
  int max_newton_iters = 200;  // total budget across barrier stages
  // Trace of all decision blocks. Nonpositive selects the automatic budget
  // 1e5 * total block dimension, which leaves room for certificates with
  // condition numbers up to ~1e5 while keeping eigenvalue evaluation error
  // far below slack_tol.
  double trace_norm = 0.0;
  int var_budget = 2000;  // scalar decision variables
};

struct SolveResult {
  enum class Status { Feasible, Infeasible, Inconclusive };
  Status status = Status::Inconclusive;
  // Reported uniform slack (lower estimate of the optimum t*) and the
  // barrier dual upper bound on t*.
  double slack = std::numeric_limits<double>::quiet_NaN();
  double slack_upper_bound = std::numeric_limits<double>::quiet_NaN();
  std::optional<Certificate> certificate;  // present iff Feasible
  double verify_margin = std::numeric_limits<double>::quiet_NaN();
  int newton_iters = 0;
  std::string diagnostics;
};

// Maximizes the uniform slack t with every PsdSlack constraint >= t*I, the
// PolyZero rows and the trace normalization held exactly (eliminated into a
// null-space parameterization), by a damped-Newton log-det barrier method.
// Deterministic: identical inputs give identical results. Numerical failures
// surface as Inconclusive with diagnostics, never as a wrong verdict.
SolveResult solve(const LmiSystem& sys, const SolveOptions& opts = {});

const char* status_name(SolveResult::Status s);

}  // namespace pcjsr
