#pragma once

#include <string>
#include <vector>

#include "pcjsr/linalg.hpp"

namespace pcjsr {

// A word lists 1-based letter indices in application order: w = (w1, ..., wk)
// denotes the matrix product A_{wk} * ... * A_{w1} (the first listed letter
// acts first on the state).
using Word = std::vector<int>;

struct MatrixSet {
  int n = 0;  // common square dimension
  std::vector<Matrix> matrices;  // letter i is matrices[i-1]

  int m() const { return static_cast<int>(matrices.size()); }
};

// Validates that the set is nonempty and all matrices are square with a
// common dimension.
MatrixSet make_matrix_set(std::vector<Matrix> mats);

void check_word(const Word& w, int m);

// Product in application order; the empty word gives the identity.
Matrix word_product(const MatrixSet& A, const Word& w);

MatrixSet scaled(const MatrixSet& A, double factor);
MatrixSet transposed(const MatrixSet& A);

// (A_i + eps*I) / (1 + eps), the standard spectral-radius-continuity nudge.
MatrixSet perturbed(const MatrixSet& A, double eps);

// All m^t ordered products of length t, enumerated lexicographically by word.
MatrixSet power_alphabet(const MatrixSet& A, int t);

std::string word_to_string(const Word& w);
Word reversed_word(const Word& w);

}  // namespace pcjsr
