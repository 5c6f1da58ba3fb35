#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pcjsr/linalg.hpp"

namespace pcjsr {

// All monomials of total degree exactly d in n variables, ordered by
// lexicographically decreasing exponent vector (n=2, d=2: x1^2, x1*x2, x2^2).
class MonomialBasis {
 public:
  MonomialBasis(int n, int d);

  int n() const { return n_; }
  int degree() const { return d_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const std::vector<std::vector<int>>& exponents() const { return exponents_; }

  // Index of an exponent vector, -1 if it is not in the basis.
  int index_of(const std::vector<int>& expo) const;

  // m_d(x), the basis evaluated at a point.
  Vector evaluate(const Vector& x) const;

 private:
  int n_, d_;
  std::vector<std::vector<int>> exponents_;
  std::map<std::vector<int>, int> index_;
};

// L_M with m_d(M x) = L_M m_d(x); rows follow the basis order.
Matrix monomial_lift(const Matrix& M, const MonomialBasis& basis);

// Maps a Gram matrix G over basis m_d to the coefficient vector of
// m_d(x)^T G m_d(x) over the degree-2d basis.
class GramCoeffMap {
 public:
  explicit GramCoeffMap(const MonomialBasis& basis);

  const MonomialBasis& squared_basis() const { return squared_; }
  int num_monomials() const { return squared_.size(); }

  // Ordered index pairs (a, b) of basis monomials with exponent sum equal to
  // the degree-2d monomial at index mu.
  const std::vector<std::pair<int, int>>& pairs(int mu) const { return groups_[mu]; }

  Vector coefficients(const Matrix& G) const;

 private:
  MonomialBasis squared_;
  std::vector<std::vector<std::pair<int, int>>> groups_;
};

}  // namespace pcjsr
