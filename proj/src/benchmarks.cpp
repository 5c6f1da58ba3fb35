#include "pcjsr/benchmarks.hpp"

#include "pcjsr/errors.hpp"

namespace pcjsr {

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix M(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) M(i, j++) = v;
    ++i;
  }
  return M;
}

std::vector<Benchmark> make_benchmarks() {
  std::vector<Benchmark> out;

  out.push_back({"ex5.2",
                 "2x2 pair with JSR exactly 1; worst case for a common quadratic",
                 make_matrix_set({
                     from_rows({{1, 0}, {1, 0}}),
                     from_rows({{0, 1}, {0, -1}}),
                 })});

  out.push_back({"ex5.3",
                 "5x5 triple separating the quadratic, two-node and quartic bounds",
                 make_matrix_set({
                     from_rows({{0, -2, 2, 2, 4},
                                {0, 0, -4, -1, -6},
                                {2, 6, 0, -8, 0},
                                {-2, -2, -3, 1, -3},
                                {-1, -5, 2, 6, -4}}),
                     from_rows({{-5, -2, -4, 6, -1},
                                {1, 1, 4, 3, -5},
                                {-2, 3, -2, 8, -1},
                                {0, 8, -6, 2, 5},
                                {-1, -5, 1, 7, -4}}),
                     from_rows({{3, -8, -3, 2, -4},
                                {-2, -2, -9, 4, -1},
                                {2, 2, -5, -8, 6},
                                {-4, -1, 4, -3, 0},
                                {0, 5, 0, -3, 5}}),
                 })});

  out.push_back({"ex4.1",
                 "3x3 quadruple where the quartic bound moves under transposition",
                 make_matrix_set({
                     from_rows({{10, -6, -1}, {8, 1, -16}, {-8, 0, 17}}),
                     from_rows({{-5, 9, -14}, {1, 5, 10}, {3, 2, 16}}),
                     from_rows({{-14, 1, 0}, {-15, -8, -12}, {-1, -6, 7}}),
                     from_rows({{1, -8, -2}, {1, 16, 3}, {16, 11, 14}}),
                 })});

  return out;
}

}  // namespace

const std::vector<Benchmark>& benchmarks() {
  static const std::vector<Benchmark> all = make_benchmarks();
  return all;
}

const Benchmark& benchmark(const std::string& id) {
  for (const Benchmark& b : benchmarks())
    if (b.id == id) return b;
  fail(ErrorCode::InvalidInput, "unknown benchmark id '" + id + "'");
}

}  // namespace pcjsr
