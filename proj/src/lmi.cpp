#include "pcjsr/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "pcjsr/errors.hpp"

namespace pcjsr {

LyapunovTemplate LyapunovTemplate::sos(int two_d) {
  if (two_d < 2 || two_d % 2 != 0)
    fail(ErrorCode::InvalidInput, "sos template: degree must be a positive even integer");
  return {Kind::Sos, two_d};
}

std::string LyapunovTemplate::name() const {
  return kind == Kind::Quadratic ? "quadratic" : "sos:" + std::to_string(degree);
}

Matrix MatrixExpr::evaluate(const std::vector<Matrix>& blocks) const {
  Matrix out = constant;
  for (const AffineTerm& t : terms)
    out += t.coeff * t.congruence.transpose() * blocks[t.block] * t.congruence;
  return out;
}

int LmiSystem::total_dim() const {
  int d = 0;
  for (const BlockInfo& b : blocks) d += b.dim;
  return d;
}

namespace {

std::string edge_tag(const Edge& e) {
  return e.from + "->" + e.to + " " + word_to_string(e.label);
}

}  // namespace

LmiSystem build_lmi(const LabeledGraph& g, const MatrixSet& A, double gamma,
                    const LyapunovTemplate& tpl) {
  validate(g);
  if (g.m != A.m())
    fail(ErrorCode::DimensionMismatch,
         "graph alphabet size " + std::to_string(g.m) + " does not match matrix set size " +
             std::to_string(A.m()));
  if (!(gamma > 0.0)) fail(ErrorCode::GammaNonPositive, "gamma must be positive");

  LmiSystem sys;
  sys.n = A.n;
  sys.gamma = gamma;
  sys.tpl = tpl;

  const MatrixSet B = scaled(A, gamma);
  const bool sos = tpl.kind == LyapunovTemplate::Kind::Sos;
  int block_dim = A.n;
  if (sos) {
    sys.basis.emplace(A.n, tpl.half_degree());
    sys.coeff_map.emplace(*sys.basis);
    block_dim = sys.basis->size();
  }

  std::unordered_map<std::string, int> node_block;
  for (const std::string& v : g.nodes) {
    node_block[v] = static_cast<int>(sys.blocks.size());
    sys.blocks.push_back({v, block_dim});
  }
  sys.num_node_blocks = static_cast<int>(sys.blocks.size());

  const Matrix I = Matrix::Identity(block_dim, block_dim);
  for (const std::string& v : g.nodes) {
    LmiConstraint c;
    c.kind = LmiConstraint::Kind::PsdSlack;
    c.name = "P[" + v + "] >= I";
    c.is_normalization = true;
    c.expr.dim = block_dim;
    c.expr.constant = -I;
    c.expr.terms.push_back({node_block[v], 1.0, I});
    sys.constraints.push_back(std::move(c));
  }

  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    const Edge& e = g.edges[ei];
    const Matrix Mw = word_product(B, e.label);
    if (!sos) {
      LmiConstraint c;
      c.kind = LmiConstraint::Kind::PsdSlack;
      c.name = "edge " + edge_tag(e);
      c.expr.dim = block_dim;
      c.expr.constant = Matrix::Zero(block_dim, block_dim);
      c.expr.terms.push_back({node_block[e.from], 1.0, I});
      c.expr.terms.push_back({node_block[e.to], -1.0, Mw});
      sys.constraints.push_back(std::move(c));
      continue;
    }

    // Slack Gram block S_e with S_e >= t I, plus the coefficient identity
    // coeffs(Q_from - L^T Q_to L - S_e) = 0, where L lifts the scaled word
    // product to the monomial basis (degree scaling included automatically).
    int slack = static_cast<int>(sys.blocks.size());
    sys.blocks.push_back({"slack[" + std::to_string(ei) + "] " + edge_tag(e), block_dim});

    LmiConstraint psd;
    psd.kind = LmiConstraint::Kind::PsdSlack;
    psd.name = "slack " + edge_tag(e);
    psd.expr.dim = block_dim;
    psd.expr.constant = Matrix::Zero(block_dim, block_dim);
    psd.expr.terms.push_back({slack, 1.0, I});
    sys.constraints.push_back(std::move(psd));

    const Matrix L = monomial_lift(Mw, *sys.basis);
    LmiConstraint zero;
    zero.kind = LmiConstraint::Kind::PolyZero;
    zero.name = "poly " + edge_tag(e);
    zero.expr.dim = block_dim;
    zero.expr.constant = Matrix::Zero(block_dim, block_dim);
    zero.expr.terms.push_back({node_block[e.from], 1.0, I});
    zero.expr.terms.push_back({node_block[e.to], -1.0, L});
    zero.expr.terms.push_back({slack, -1.0, I});
    sys.constraints.push_back(std::move(zero));
  }
  return sys;
}

double verify_certificate(const LmiSystem& sys, const Certificate& cert) {
  if (cert.blocks.size() != sys.blocks.size())
    fail(ErrorCode::DimensionMismatch, "certificate block count does not match system");
  for (size_t b = 0; b < sys.blocks.size(); ++b)
    if (cert.blocks[b].rows() != sys.blocks[b].dim || cert.blocks[b].cols() != sys.blocks[b].dim)
      fail(ErrorCode::DimensionMismatch, "certificate block '" + sys.blocks[b].name +
                                             "' has wrong dimensions");

  double psd_margin = std::numeric_limits<double>::infinity();
  double worst_residual = 0.0;
  for (const LmiConstraint& c : sys.constraints) {
    Matrix value = c.expr.evaluate(cert.blocks);
    if (c.kind == LmiConstraint::Kind::PsdSlack) {
      psd_margin = std::min(psd_margin, min_eig_sym(value));
    } else {
      Vector r = sys.coeff_map->coefficients(symmetrized(value));
      worst_residual = std::max(worst_residual, r.cwiseAbs().maxCoeff());
    }
  }
  if (worst_residual > 0.0)
    psd_margin -= sys.coeff_map->num_monomials() * worst_residual;
  return psd_margin;
}

Certificate rescaled_to_normalization(const LmiSystem& sys, const Certificate& cert) {
  if (cert.blocks.size() != sys.blocks.size())
    fail(ErrorCode::DimensionMismatch, "certificate block count does not match system");
  double min_eig = std::numeric_limits<double>::infinity();
  for (int b = 0; b < sys.num_node_blocks; ++b)
    min_eig = std::min(min_eig, min_eig_sym(cert.blocks[b]));
  if (!(min_eig > 0.0))
    fail(ErrorCode::InvalidInput, "certificate node blocks are not positive definite");
  Certificate out = cert;
  for (Matrix& M : out.blocks) M /= min_eig;
  return out;
}

namespace {

void check_common_quadratic(const MatrixSet& B, int len, const Matrix& Q, const char* who) {
  if (Q.rows() != B.n || Q.cols() != B.n)
    fail(ErrorCode::DimensionMismatch, std::string(who) + ": Q has wrong dimensions");
  const double scale = std::max(1.0, max_eig_sym(Q));
  if (min_eig_sym(Q) <= 0.0)
    fail(ErrorCode::PreconditionUnverified, std::string(who) + ": Q is not positive definite");
  Word w(len, 1);
  while (true) {
    Matrix P = word_product(B, w);
    if (min_eig_sym(Q - P.transpose() * Q * P) < -1e-9 * scale)
      fail(ErrorCode::PreconditionUnverified,
           std::string(who) + ": Q does not contract the scaled product for word " +
               word_to_string(w));
    int pos = len - 1;
    while (pos >= 0 && w[pos] == B.m()) { w[pos] = 1; --pos; }
    if (pos < 0) break;
    ++w[pos];
  }
}

}  // namespace

Certificate two_step_certificate(const MatrixSet& A, double gamma, const Matrix& Q) {
  if (!(gamma > 0.0)) fail(ErrorCode::GammaNonPositive, "two_step_certificate: gamma must be positive");
  const MatrixSet B = scaled(A, gamma);
  check_common_quadratic(B, 2, Q, "two_step_certificate");
  Certificate cert;
  cert.gamma = gamma;
  for (const Matrix& Bi : B.matrices)
    cert.blocks.push_back(symmetrized(Q + Bi.transpose() * Q * Bi));
  return cert;
}

Certificate nested_certificate(const MatrixSet& A, double gamma, int l, const Matrix& Q) {
  if (!(gamma > 0.0)) fail(ErrorCode::GammaNonPositive, "nested_certificate: gamma must be positive");
  if (l < 2) fail(ErrorCode::InvalidInput, "nested_certificate: need l >= 2");
  const MatrixSet B = scaled(A, gamma);
  check_common_quadratic(B, l, Q, "nested_certificate");

  // One block per node of debruijnd:k=l-1, in that graph's node order
  // (lexicographic over the digit words). For node (i_1, ..., i_k) the block
  // is Q plus conjugates of Q by the suffix products, longest suffix last:
  //   P = Q + sum_s (B_{i_{k-s+1}} ... B_{i_k})^T Q (B_{i_{k-s+1}} ... B_{i_k}).
  Certificate cert;
  cert.gamma = gamma;
  const int k = l - 1;
  Word w(k, 1);
  while (true) {
    Matrix P = Q;
    Matrix suffix = Matrix::Identity(B.n, B.n);
    for (int s = 1; s <= k; ++s) {
      suffix = B.matrices[w[k - s] - 1] * suffix;
      P += suffix.transpose() * Q * suffix;
    }
    cert.blocks.push_back(symmetrized(P));
    int pos = k - 1;
    while (pos >= 0 && w[pos] == B.m()) { w[pos] = 1; --pos; }
    if (pos < 0) break;
    ++w[pos];
  }
  return cert;
}

}  // namespace pcjsr
