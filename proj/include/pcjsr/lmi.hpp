#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcjsr/graph.hpp"
#include "pcjsr/monomials.hpp"

namespace pcjsr {

struct LyapunovTemplate {
  enum class Kind { Quadratic, Sos };
  Kind kind = Kind::Quadratic;
  int degree = 2;  // 2d, the polynomial degree; 2 for quadratic

  static LyapunovTemplate quadratic() { return {Kind::Quadratic, 2}; }
  static LyapunovTemplate sos(int two_d);

  int half_degree() const { return degree / 2; }
  std::string name() const;
};

// One symmetric decision block (a quadratic P or an SOS Gram / slack).
struct BlockInfo {
  std::string name;
  int dim = 0;
};

// coeff * G^T X_block G; always symmetric in symmetric X.
struct AffineTerm {
  int block = 0;
  double coeff = 1.0;
  Matrix congruence;
};

// sum of terms plus a constant matrix, all dim x dim.
struct MatrixExpr {
  int dim = 0;
  std::vector<AffineTerm> terms;
  Matrix constant;

  Matrix evaluate(const std::vector<Matrix>& blocks) const;
};

struct LmiConstraint {
  enum class Kind {
    PsdSlack,  // expr(X) >= t*I, shares the uniform slack t
    PolyZero,  // the polynomial with Gram expr(X) is identically zero
  };
  Kind kind = Kind::PsdSlack;
  std::string name;
  bool is_normalization = false;
  MatrixExpr expr;
};

// Feasibility system for a graph, alphabet, and scaling gamma: one Lyapunov
// block per node, one decrease constraint per edge, unit normalization on the
// node blocks. SOS systems additionally carry a Gram slack block per edge and
// the coefficient-matching equalities tying it to the edge polynomial.
struct LmiSystem {
  int n = 0;          // state dimension
  double gamma = 1.0;
  LyapunovTemplate tpl;
  std::vector<BlockInfo> blocks;
  std::vector<LmiConstraint> constraints;
  int num_node_blocks = 0;  // leading blocks that carry the normalization
  std::optional<MonomialBasis> basis;   // SOS only
  std::optional<GramCoeffMap> coeff_map;  // SOS only

  int total_dim() const;
};

// Edge (u, v, w) encodes V_v(M_w x) <= V_u(x) where M_w is the word product
// of the gamma-scaled alphabet, so each letter contributes one factor gamma.
LmiSystem build_lmi(const LabeledGraph& g, const MatrixSet& A, double gamma,
                    const LyapunovTemplate& tpl);

struct Certificate {
  double gamma = 0.0;
  std::vector<Matrix> blocks;  // same order as LmiSystem::blocks
};

// Minimum margin over all constraints: eigenvalue margins for PSD rows, and
// for SOS systems the worst coefficient residual of the PolyZero rows folded
// in as -N2d * max|residual| (which bounds the residual polynomial on the
// unit sphere of the monomial image).
double verify_certificate(const LmiSystem& sys, const Certificate& cert);

// Scales the certificate so the node blocks exactly meet the unit
// normalization (smallest node-block eigenvalue becomes 1).
Certificate rescaled_to_normalization(const LmiSystem& sys, const Certificate& cert);

// From a common quadratic certificate Q for all gamma-scaled products of
// length 2, builds the quadratic blocks P_i = Q + B_i^T Q B_i (B_i = gamma
// A_i) feasible for the full shift graph on m nodes (family g1).
Certificate two_step_certificate(const MatrixSet& A, double gamma, const Matrix& Q);

// From a common quadratic certificate Q for all gamma-scaled products of
// length l >= 2, builds blocks indexed by the nodes of debruijnd:k=l-1 via
// nested sums of conjugated copies of Q; l = 2 reduces to the two-step form.
Certificate nested_certificate(const MatrixSet& A, double gamma, int l, const Matrix& Q);

}  // namespace pcjsr
