#include "pcjsr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "pcjsr/errors.hpp"

namespace pcjsr {

const char* status_name(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Feasible: return "feasible";
    case SolveResult::Status::Infeasible: return "infeasible";
    case SolveResult::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Scalar coordinates are the upper-triangle entries of every block, blocks in
// system order, entries in row-major (i <= j) order.
struct VarLayout {
  std::vector<int> offset;  // per block
  int total = 0;

  explicit VarLayout(const LmiSystem& sys) {
    for (const BlockInfo& b : sys.blocks) {
      offset.push_back(total);
      total += b.dim * (b.dim + 1) / 2;
    }
  }

  static int tri(int dim, int i, int j) {  // i <= j
    return i * dim - i * (i - 1) / 2 + (j - i);
  }

  std::vector<Matrix> unpack(const LmiSystem& sys, const Vector& x) const {
    std::vector<Matrix> blocks;
    for (size_t b = 0; b < sys.blocks.size(); ++b) {
      const int d = sys.blocks[b].dim;
      Matrix M(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) M(i, j) = M(j, i) = x[offset[b] + tri(d, i, j)];
      blocks.push_back(std::move(M));
    }
    return blocks;
  }

  Vector pack(const LmiSystem& sys, const std::vector<Matrix>& blocks) const {
    Vector x(total);
    for (size_t b = 0; b < sys.blocks.size(); ++b) {
      const int d = sys.blocks[b].dim;
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) x[offset[b] + tri(d, i, j)] = blocks[b](i, j);
    }
    return x;
  }
};

// Linear rows holding the PolyZero coefficient identities and the trace
// normalization: E x = e.
struct EqualitySystem {
  Matrix E;
  Vector e;
};

EqualitySystem build_equalities(const LmiSystem& sys, const VarLayout& layout, double trace_norm) {
  std::vector<Vector> rows;
  std::vector<double> rhs;

  for (const LmiConstraint& c : sys.constraints) {
    if (c.kind != LmiConstraint::Kind::PolyZero) continue;
    const GramCoeffMap& cm = *sys.coeff_map;
    Vector const_coeffs = cm.coefficients(symmetrized(c.expr.constant));
    for (int mu = 0; mu < cm.num_monomials(); ++mu) {
      Vector row = Vector::Zero(layout.total);
      for (const AffineTerm& t : c.expr.terms) {
        const int d = static_cast<int>(t.congruence.rows());
        // coefficient of monomial mu in coeff * G^T X G as a function of the
        // upper-triangle entries of X
        Matrix W = Matrix::Zero(d, d);
        for (const auto& [a, b] : cm.pairs(mu))
          W += t.congruence.col(a) * t.congruence.col(b).transpose();
        const int base = layout.offset[t.block];
        for (int i = 0; i < d; ++i) {
          row[base + VarLayout::tri(d, i, i)] += t.coeff * W(i, i);
          for (int j = i + 1; j < d; ++j)
            row[base + VarLayout::tri(d, i, j)] += t.coeff * (W(i, j) + W(j, i));
        }
      }
      rows.push_back(std::move(row));
      rhs.push_back(-const_coeffs[mu]);
    }
  }

  Vector trace_row = Vector::Zero(layout.total);
  for (size_t b = 0; b < sys.blocks.size(); ++b) {
    const int d = sys.blocks[b].dim;
    for (int i = 0; i < d; ++i) trace_row[layout.offset[b] + VarLayout::tri(d, i, i)] = 1.0;
  }
  rows.push_back(std::move(trace_row));
  rhs.push_back(trace_norm);

  EqualitySystem eq;
  eq.E.resize(static_cast<Eigen::Index>(rows.size()), layout.total);
  eq.e.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    eq.E.row(static_cast<Eigen::Index>(r)) = rows[r];
    eq.e[static_cast<Eigen::Index>(r)] = rhs[r];
  }
  return eq;
}

struct PsdData {
  int dim = 0;
  const LmiConstraint* constraint = nullptr;
  Matrix M0;                  // value at the base point
  std::vector<Matrix> dirs;   // linear image of each null-space direction
};

bool is_pd(const Matrix& S) {
  Eigen::LLT<Matrix> llt(S);
  return llt.info() == Eigen::Success;
}

}  // namespace

SolveResult solve(const LmiSystem& sys, const SolveOptions& opts) {
  SolveResult res;
  const VarLayout layout(sys);
  if (layout.total > opts.var_budget)
    fail(ErrorCode::BudgetExceeded,
         "solve: " + std::to_string(layout.total) + " scalar variables exceed the budget of " +
             std::to_string(opts.var_budget));
  if (sys.constraints.empty()) fail(ErrorCode::InvalidInput, "solve: empty system");

  const double trace_norm =
      opts.trace_norm > 0.0 ? opts.trace_norm : 1e5 * static_cast<double>(sys.total_dim());

  try {
    // Base point on the equality manifold, nearest to scaled identity blocks.
    const EqualitySystem eq = build_equalities(sys, layout, trace_norm);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(eq.E);
    std::vector<Matrix> tgt;
    const double mean = trace_norm / sys.total_dim();
    for (const BlockInfo& b : sys.blocks) tgt.push_back(mean * Matrix::Identity(b.dim, b.dim));
    Vector x0 = layout.pack(sys, tgt);
    for (int pass = 0; pass < 3; ++pass) x0 += cod.solve(eq.e - eq.E * x0);
    const double eq_resid = (eq.e - eq.E * x0).cwiseAbs().maxCoeff();
    const double eq_scale = std::max(1.0, eq.e.cwiseAbs().maxCoeff());
    if (!x0.allFinite() || eq_resid > 1e-6 * eq_scale) {
      res.status = SolveResult::Status::Inconclusive;
      res.diagnostics = "equality projection failed (residual " + std::to_string(eq_resid) + ")";
      return res;
    }

    // Orthonormal basis of the equality null space.
    Eigen::FullPivLU<Matrix> lu(eq.E);
    lu.setThreshold(1e-10);
    Matrix kernel = lu.kernel();
    int Z = (lu.rank() == layout.total) ? 0 : static_cast<int>(kernel.cols());
    Matrix N;
    if (Z > 0) {
      Eigen::HouseholderQR<Matrix> qr(kernel);
      N = qr.householderQ() * Matrix::Identity(layout.total, Z);
    }

    std::vector<PsdData> psd;
    for (const LmiConstraint& c : sys.constraints) {
      if (c.kind != LmiConstraint::Kind::PsdSlack) continue;
      PsdData p;
      p.dim = c.expr.dim;
      p.constraint = &c;
      p.M0 = symmetrized(c.expr.evaluate(layout.unpack(sys, x0)));
      MatrixExpr linear = c.expr;
      linear.constant = Matrix::Zero(c.expr.dim, c.expr.dim);
      for (int a = 0; a < Z; ++a)
        p.dirs.push_back(symmetrized(linear.evaluate(layout.unpack(sys, N.col(a)))));
      psd.push_back(std::move(p));
    }
    if (psd.empty()) fail(ErrorCode::InvalidInput, "solve: no PSD constraints");

    double nu = 0.0;
    for (const PsdData& p : psd) nu += p.dim;

    // Strictly interior start in (z, t).
    Vector z = Vector::Zero(Z);
    double t0 = std::numeric_limits<double>::infinity();
    for (const PsdData& p : psd) t0 = std::min(t0, min_eig_sym(p.M0));
    double t = t0 - std::max(1.0, 0.1 * std::abs(t0));

    auto slack_at = [&](const PsdData& p, const Vector& zz, double tt) {
      Matrix S = p.M0 - tt * Matrix::Identity(p.dim, p.dim);
      for (int a = 0; a < Z; ++a) S += zz[a] * p.dirs[a];
      return S;
    };

    std::vector<Matrix> S(psd.size());
    for (size_t c = 0; c < psd.size(); ++c) S[c] = slack_at(psd[c], z, t);

    double mu = 0.0;
    for (const Matrix& Sc : S) mu += Sc.trace();
    mu = std::max(mu / nu, 1.0);
    const double gap_floor = std::max(opts.slack_tol / 10.0, 1e-10 * trace_norm);
    const double mu_floor = gap_floor / nu;

    double t_upper = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool budget_hit = false;

    auto barrier_f = [&](const std::vector<Matrix>& Ss, double tt, double mm,
                         bool& ok) -> double {
      double f = -tt / mm;
      ok = true;
      for (const Matrix& Sc : Ss) {
        Eigen::LLT<Matrix> llt(Sc);
        if (llt.info() != Eigen::Success) { ok = false; return 0.0; }
        f -= 2.0 * llt.matrixLLT().diagonal().array().log().sum();
      }
      return f;
    };

    while (true) {
      // Center at the current mu, then tighten mu until the gap target.
      bool centered = false;
      for (int stage_iter = 0; stage_iter < 60; ++stage_iter) {
        if (iters >= opts.max_newton_iters) { budget_hit = true; break; }
        ++iters;

        Vector grad = Vector::Zero(Z + 1);
        Matrix H = Matrix::Zero(Z + 1, Z + 1);
        bool ok = true;
        for (size_t c = 0; c < psd.size(); ++c) {
          Eigen::LLT<Matrix> llt(S[c]);
          if (llt.info() != Eigen::Success) { ok = false; break; }
          const Matrix L = llt.matrixL();
          const int d = psd[c].dim;
          // Whitened directions W_a = L^-1 D_a L^-T; the t-direction is -I.
          Matrix T(Z + 1, d * d);
          for (int a = 0; a <= Z; ++a) {
            Matrix D = (a < Z) ? psd[c].dirs[a] : Matrix(-Matrix::Identity(d, d));
            Matrix W = L.triangularView<Eigen::Lower>().solve(D);
            W = L.triangularView<Eigen::Lower>().solve(W.transpose()).transpose();
            grad[a] -= W.trace();
            T.row(a) = Eigen::Map<const Vector>(W.data(), d * d);
          }
          H.selfadjointView<Eigen::Lower>().rankUpdate(T);
        }
        if (!ok) {
          res.status = SolveResult::Status::Inconclusive;
          res.diagnostics = "slack factorization lost positive definiteness";
          res.newton_iters = iters;
          return res;
        }
        grad[Z] -= 1.0 / mu;
        H = Matrix(H.selfadjointView<Eigen::Lower>());

        Vector step;
        double ridge = 0.0;
        for (int attempt = 0;; ++attempt) {
          Eigen::LLT<Matrix> hl(H + ridge * Matrix::Identity(Z + 1, Z + 1));
          if (hl.info() == Eigen::Success) { step = hl.solve(-grad); break; }
          if (attempt > 12) {
            res.status = SolveResult::Status::Inconclusive;
            res.diagnostics = "newton system not positive definite";
            res.newton_iters = iters;
            return res;
          }
          ridge = (ridge == 0.0) ? 1e-12 * std::max(1.0, H.trace() / (Z + 1)) : 10.0 * ridge;
        }
        const double decrement2 = -grad.dot(step);

        bool f_ok = true;
        const double f_cur = barrier_f(S, t, mu, f_ok);
        double alpha = 1.0;
        Vector z_new;
        double t_new = 0.0;
        std::vector<Matrix> S_new(psd.size());
        bool accepted = false;
        for (int back = 0; back < 80; ++back) {
          z_new = z + alpha * step.head(Z);
          t_new = t + alpha * step[Z];
          bool pd = true;
          for (size_t c = 0; c < psd.size(); ++c) {
            S_new[c] = slack_at(psd[c], z_new, t_new);
            if (!is_pd(S_new[c])) { pd = false; break; }
          }
          if (pd) {
            bool ok2 = true;
            const double f_new = barrier_f(S_new, t_new, mu, ok2);
            if (ok2 && f_new <= f_cur - 0.25 * alpha * decrement2 + 1e-12 * std::abs(f_cur)) {
              accepted = true;
              break;
            }
          }
          alpha *= 0.5;
        }
        if (!accepted) {
          // No descent left at this mu; treat as centered and move on.
          centered = decrement2 <= 1.0;
          break;
        }
        z = z_new;
        t = t_new;
        S = std::move(S_new);
        if (decrement2 <= 0.0625) { centered = true; break; }
      }
      if (budget_hit) break;
      if (centered) t_upper = std::min(t_upper, t + 2.0 * mu * nu);
      if (mu <= mu_floor) break;
      mu = std::max(mu * 0.15, mu_floor * 0.999);
    }

    res.slack = t;
    res.slack_upper_bound = t_upper;
    res.newton_iters = iters;

    if (t >= opts.slack_tol) {
      Vector x = x0;
      if (Z > 0) x += N * z;
      for (int pass = 0; pass < 2; ++pass) x += cod.solve(eq.e - eq.E * x);
      Certificate cert;
      cert.gamma = sys.gamma;
      cert.blocks = layout.unpack(sys, x);
      const double margin = verify_certificate(sys, cert);
      if (margin >= opts.slack_tol / 2.0) {
        res.status = SolveResult::Status::Feasible;
        res.certificate = std::move(cert);
        res.verify_margin = margin;
        return res;
      }
      res.status = SolveResult::Status::Inconclusive;
      res.verify_margin = margin;
      res.diagnostics = "slack positive but certificate failed independent verification";
      return res;
    }
    if (t_upper <= -opts.slack_tol) {
      res.status = SolveResult::Status::Infeasible;
      return res;
    }
    res.status = SolveResult::Status::Inconclusive;
    res.diagnostics = budget_hit ? "newton iteration budget exhausted"
                                 : "slack within the inconclusive band";
    return res;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::BudgetExceeded || err.code() == ErrorCode::InvalidInput ||
        err.code() == ErrorCode::DimensionMismatch)
      throw;
    res.status = SolveResult::Status::Inconclusive;
    res.diagnostics = std::string("numerical failure: ") + err.what();
    return res;
  }
}

}  // namespace pcjsr
