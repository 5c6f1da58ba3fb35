#include "pcjsr/alphabet.hpp"

#include <algorithm>

#include "pcjsr/errors.hpp"

namespace pcjsr {

MatrixSet make_matrix_set(std::vector<Matrix> mats) {
  if (mats.empty()) fail(ErrorCode::InvalidInput, "matrix set: at least one matrix required");
  const int n = static_cast<int>(mats[0].rows());
  for (const Matrix& M : mats) {
    if (M.rows() != n || M.cols() != n)
      fail(ErrorCode::DimensionMismatch, "matrix set: all matrices must be square of equal size");
    if (!M.allFinite())
      fail(ErrorCode::InvalidInput, "matrix set: non-finite entries");
  }
  if (n < 1) fail(ErrorCode::InvalidInput, "matrix set: dimension must be at least 1");
  MatrixSet A;
  A.n = n;
  A.matrices = std::move(mats);
  return A;
}

void check_word(const Word& w, int m) {
  for (int letter : w)
    if (letter < 1 || letter > m)
      fail(ErrorCode::InvalidWord,
           "word letter " + std::to_string(letter) + " outside 1.." + std::to_string(m));
}

Matrix word_product(const MatrixSet& A, const Word& w) {
  check_word(w, A.m());
  Matrix P = Matrix::Identity(A.n, A.n);
  // Letters act first-to-last, so each new letter multiplies on the left.
  for (int letter : w) P = A.matrices[letter - 1] * P;
  return P;
}

MatrixSet scaled(const MatrixSet& A, double factor) {
  MatrixSet B = A;
  for (Matrix& M : B.matrices) M *= factor;
  return B;
}

MatrixSet transposed(const MatrixSet& A) {
  MatrixSet B = A;
  for (Matrix& M : B.matrices) M = M.transpose().eval();
  return B;
}

MatrixSet perturbed(const MatrixSet& A, double eps) {
  if (eps < 0) fail(ErrorCode::InvalidInput, "perturbed: eps must be nonnegative");
  MatrixSet B = A;
  const Matrix I = Matrix::Identity(A.n, A.n);
  for (Matrix& M : B.matrices) M = (M + eps * I) / (1.0 + eps);
  return B;
}

MatrixSet power_alphabet(const MatrixSet& A, int t) {
  if (t < 1) fail(ErrorCode::InvalidInput, "power_alphabet: length must be at least 1");
  std::vector<Matrix> out;
  Word w(t, 1);
  while (true) {
    out.push_back(word_product(A, w));
    // Next word in lexicographic order.
    int pos = t - 1;
    while (pos >= 0 && w[pos] == A.m()) { w[pos] = 1; --pos; }
    if (pos < 0) break;
    ++w[pos];
  }
  return make_matrix_set(std::move(out));
}

std::string word_to_string(const Word& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

Word reversed_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  return r;
}

}  // namespace pcjsr
