#include "pcjsr/monomials.hpp"

#include <cmath>

#include "pcjsr/errors.hpp"

namespace pcjsr {

namespace {

void gen_exponents(int n, int d, int pos, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  // Descending first entry yields lexicographically decreasing order.
  for (int e = d; e >= 0; --e) {
    cur[pos] = e;
    gen_exponents(n, d - e, pos + 1, cur, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 1)
    fail(ErrorCode::InvalidInput, "monomial basis: need n >= 1 and d >= 1");
  std::vector<int> cur(n, 0);
  gen_exponents(n, d, 0, cur, exponents_);
  for (int i = 0; i < size(); ++i) index_[exponents_[i]] = i;
}

int MonomialBasis::index_of(const std::vector<int>& expo) const {
  auto it = index_.find(expo);
  return it == index_.end() ? -1 : it->second;
}

Vector MonomialBasis::evaluate(const Vector& x) const {
  if (x.size() != n_) fail(ErrorCode::DimensionMismatch, "monomial basis: point has wrong dimension");
  Vector v(size());
  for (int i = 0; i < size(); ++i) {
    double p = 1.0;
    for (int j = 0; j < n_; ++j)
      for (int e = 0; e < exponents_[i][j]; ++e) p *= x[j];
    v[i] = p;
  }
  return v;
}

Matrix monomial_lift(const Matrix& M, const MonomialBasis& basis) {
  if (M.rows() != basis.n() || M.cols() != basis.n())
    fail(ErrorCode::DimensionMismatch, "monomial_lift: matrix dimension does not match basis");
  const int n = basis.n();
  const int N = basis.size();
  Matrix L = Matrix::Zero(N, N);

  // Row r expands (Mx)^alpha as a polynomial in x by repeated multiplication
  // with the linear forms (Mx)_j; all terms end at total degree d.
  using Poly = std::map<std::vector<int>, double>;
  for (int r = 0; r < N; ++r) {
    const std::vector<int>& alpha = basis.exponents()[r];
    Poly poly;
    poly[std::vector<int>(n, 0)] = 1.0;
    for (int j = 0; j < n; ++j) {
      for (int e = 0; e < alpha[j]; ++e) {
        Poly next;
        for (const auto& [expo, c] : poly) {
          for (int k = 0; k < n; ++k) {
            if (M(j, k) == 0.0) continue;
            std::vector<int> ne = expo;
            ++ne[k];
            next[ne] += c * M(j, k);
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [expo, c] : poly) {
      int col = basis.index_of(expo);
      if (col < 0) fail(ErrorCode::NumericalFailure, "monomial_lift: internal exponent bookkeeping");
      L(r, col) = c;
    }
  }
  return L;
}

GramCoeffMap::GramCoeffMap(const MonomialBasis& basis)
    : squared_(basis.n(), 2 * basis.degree()) {
  groups_.resize(squared_.size());
  const int N = basis.size();
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      std::vector<int> sum(basis.n());
      for (int j = 0; j < basis.n(); ++j)
        sum[j] = basis.exponents()[a][j] + basis.exponents()[b][j];
      int mu = squared_.index_of(sum);
      if (mu < 0) fail(ErrorCode::NumericalFailure, "gram coefficient map: exponent bookkeeping");
      groups_[mu].emplace_back(a, b);
    }
  }
}

Vector GramCoeffMap::coefficients(const Matrix& G) const {
  Vector c = Vector::Zero(num_monomials());
  for (int mu = 0; mu < num_monomials(); ++mu)
    for (const auto& [a, b] : groups_[mu]) c[mu] += G(a, b);
  return c;
}

}  // namespace pcjsr
