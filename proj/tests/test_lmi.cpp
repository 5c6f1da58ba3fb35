#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "pcjsr/benchmarks.hpp"
#include "pcjsr/errors.hpp"
#include "pcjsr/families.hpp"
#include "pcjsr/io.hpp"
#include "pcjsr/lmi.hpp"

using namespace pcjsr;

namespace {

MatrixSet pair_benchmark() { return benchmark("ex5.2").matrices; }

Matrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = u(rng);
  return M;
}

// Two random n x n matrices with operator norm at most `cap`.
MatrixSet random_contractions(std::mt19937& rng, int n, double cap) {
  std::vector<Matrix> mats;
  for (int i = 0; i < 2; ++i) {
    Matrix M = random_matrix(rng, n);
    mats.push_back(M * (cap / std::max(operator_norm(M), 1e-12)));
  }
  return make_matrix_set(std::move(mats));
}

int count_kind(const LmiSystem& sys, LmiConstraint::Kind kind) {
  return static_cast<int>(std::count_if(
      sys.constraints.begin(), sys.constraints.end(),
      [&](const LmiConstraint& c) { return c.kind == kind; }));
}

}  // namespace

TEST_CASE("quadratic system shapes") {
  const MatrixSet A = pair_benchmark();
  const auto quad = LyapunovTemplate::quadratic();

  const LmiSystem common = build_lmi(build(parse_family("h1"), 2), A, 1.0, quad);
  CHECK(common.n == 2);
  CHECK(common.blocks.size() == 1);
  CHECK(common.blocks[0].dim == 2);
  CHECK(common.num_node_blocks == 1);
  CHECK(common.constraints.size() == 3);
  CHECK(count_kind(common, LmiConstraint::Kind::PsdSlack) == 3);
  int norms = 0;
  for (const auto& c : common.constraints) norms += c.is_normalization ? 1 : 0;
  CHECK(norms == 1);
  CHECK(!common.basis.has_value());

  const LmiSystem shift = build_lmi(build(parse_family("g1"), 2), A, 1.0, quad);
  CHECK(shift.blocks.size() == 2);
  CHECK(shift.num_node_blocks == 2);
  CHECK(shift.constraints.size() == 6);
}

TEST_CASE("edge words fold one gamma factor per letter") {
  // With an identity alphabet and unit blocks the edge residual for a word of
  // length l is (1 - gamma^{2l}) I, which pins down the scaling exponent.
  const Matrix I2 = Matrix::Identity(2, 2);
  const MatrixSet A = make_matrix_set({I2, I2});
  const LmiSystem sys =
      build_lmi(build(parse_family("h4"), 2), A, 2.0, LyapunovTemplate::quadratic());
  Certificate cert;
  cert.gamma = 2.0;
  cert.blocks = {I2};
  std::vector<double> edge_margins;
  for (const auto& c : sys.constraints)
    if (!c.is_normalization) edge_margins.push_back(min_eig_sym(c.expr.evaluate(cert.blocks)));
  std::sort(edge_margins.begin(), edge_margins.end());
  // Word lengths 3, 3, 2, 1 give 1 - 4^l.
  REQUIRE(edge_margins.size() == 4);
  CHECK(edge_margins[0] == doctest::Approx(1.0 - 64.0));
  CHECK(edge_margins[1] == doctest::Approx(1.0 - 64.0));
  CHECK(edge_margins[2] == doctest::Approx(1.0 - 16.0));
  CHECK(edge_margins[3] == doctest::Approx(1.0 - 4.0));
}

TEST_CASE("building at gamma equals building the pre-scaled set at one") {
  std::mt19937 rng(7);
  std::vector<Matrix> mats = {random_matrix(rng, 3), random_matrix(rng, 3)};
  const MatrixSet A = make_matrix_set(mats);
  const double gamma = 0.7;
  const LabeledGraph g = build(parse_family("g2"), 2);

  const LmiSystem direct = build_lmi(g, A, gamma, LyapunovTemplate::quadratic());
  const LmiSystem prescaled = build_lmi(g, scaled(A, gamma), 1.0, LyapunovTemplate::quadratic());
  REQUIRE(direct.constraints.size() == prescaled.constraints.size());

  Certificate cert;
  cert.gamma = gamma;
  for (const auto& b : direct.blocks) {
    Matrix M = random_matrix(rng, b.dim);
    cert.blocks.push_back(symmetrized(M));
  }
  for (size_t i = 0; i < direct.constraints.size(); ++i) {
    const Matrix lhs = direct.constraints[i].expr.evaluate(cert.blocks);
    const Matrix rhs = prescaled.constraints[i].expr.evaluate(cert.blocks);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quadratic certificate verification") {
  const MatrixSet A = pair_benchmark();
  const LabeledGraph g = build(parse_family("g1"), 2);
  const double gamma = 1.0 / 1.1;
  const LmiSystem sys = build_lmi(g, A, gamma, LyapunovTemplate::quadratic());

  auto diag_cert = [&](double a, double b) {
    Certificate cert;
    cert.gamma = gamma;
    Matrix P1 = Matrix::Zero(2, 2), P2 = Matrix::Zero(2, 2);
    P1(0, 0) = a; P1(1, 1) = b;
    P2(0, 0) = b; P2(1, 1) = a;
    cert.blocks = {P1, P2};
    return cert;
  };

  // Every edge residual is diag(a - gamma^2 (a + b), b) up to coordinate swap,
  // so a = 6, b = 1 is feasible with the normalization rows binding at zero.
  const Certificate good = diag_cert(6.0, 1.0);
  CHECK(verify_certificate(sys, good) == doctest::Approx(0.0).epsilon(1e-12));

  Certificate inflated = good;
  for (Matrix& P : inflated.blocks) P *= 1.05;
  CHECK(verify_certificate(sys, inflated) == doctest::Approx(0.05));

  const double bad_margin = verify_certificate(sys, diag_cert(2.0, 1.0));
  CHECK(bad_margin < -0.4);
  CHECK(bad_margin == doctest::Approx(2.0 - 3.0 / (1.1 * 1.1)));

  Certificate zero = good;
  for (Matrix& P : zero.blocks) P.setZero();
  CHECK(verify_certificate(sys, zero) <= -1.0);

  Certificate short_cert = good;
  short_cert.blocks.pop_back();
  CHECK_THROWS_AS(verify_certificate(sys, short_cert), Error);
  Certificate wrong_dim = good;
  wrong_dim.blocks[0] = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(verify_certificate(sys, wrong_dim), Error);
}

TEST_CASE("rescaling to the normalization floor") {
  const MatrixSet A = pair_benchmark();
  const LmiSystem sys =
      build_lmi(build(parse_family("g1"), 2), A, 0.9, LyapunovTemplate::quadratic());
  Certificate cert;
  cert.gamma = 0.9;
  Matrix P1 = Matrix::Zero(2, 2), P2 = Matrix::Zero(2, 2);
  P1(0, 0) = 6.0; P1(1, 1) = 2.0;
  P2(0, 0) = 2.0; P2(1, 1) = 6.0;
  cert.blocks = {P1, P2};

  const Certificate scaled_cert = rescaled_to_normalization(sys, cert);
  CHECK(scaled_cert.gamma == cert.gamma);
  CHECK(scaled_cert.blocks[0](0, 0) == doctest::Approx(3.0));
  double floor = std::min(min_eig_sym(scaled_cert.blocks[0]), min_eig_sym(scaled_cert.blocks[1]));
  CHECK(floor == doctest::Approx(1.0));

  Certificate indefinite = cert;
  indefinite.blocks[0](1, 1) = -1.0;
  CHECK_THROWS_AS(rescaled_to_normalization(sys, indefinite), Error);
}

TEST_CASE("degree-two sos system is the quadratic system in a monomial frame") {
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  const MatrixSet A = make_matrix_set({half});
  const LmiSystem sys =
      build_lmi(build(parse_family("h1"), 1), A, 1.0, LyapunovTemplate::sos(2));
  REQUIRE(sys.basis.has_value());
  CHECK(sys.basis->size() == 2);
  CHECK(sys.blocks.size() == 2);  // node Gram plus one edge slack
  CHECK(sys.num_node_blocks == 1);
  CHECK(count_kind(sys, LmiConstraint::Kind::PolyZero) == 1);

  // P = I, S = I - L^T L with L the degree-1 lift of 0.5 I, so S = 0.75 I and
  // the coefficient identity holds exactly.
  Certificate cert;
  cert.gamma = 1.0;
  cert.blocks = {Matrix::Identity(2, 2), 0.75 * Matrix::Identity(2, 2)};
  CHECK(verify_certificate(sys, cert) == doctest::Approx(0.0).epsilon(1e-12));

  // Shrinking the slack leaves a residual polynomial 0.05 (x1^2 + x2^2) whose
  // worst coefficient is charged three times (one per degree-2 monomial).
  Certificate off = cert;
  off.blocks[1] = 0.70 * Matrix::Identity(2, 2);
  CHECK(verify_certificate(sys, off) == doctest::Approx(-0.15));
}

TEST_CASE("quartic sos blocks use the degree-two monomial basis") {
  const MatrixSet A = pair_benchmark();
  const LmiSystem sys =
      build_lmi(build(parse_family("h1"), 2), A, 1.0, LyapunovTemplate::sos(4));
  REQUIRE(sys.basis.has_value());
  CHECK(sys.basis->size() == 3);
  CHECK(sys.blocks.size() == 3);  // one node Gram, two edge slacks
  for (const auto& b : sys.blocks) CHECK(b.dim == 3);
  CHECK(sys.total_dim() == 9);
  CHECK(sys.constraints.size() == 5);
}

TEST_CASE("two-step certificate construction") {
  const Matrix I2 = Matrix::Identity(2, 2);

  SUBCASE("single contraction") {
    const MatrixSet A = make_matrix_set({0.4 * I2});
    const Certificate cert = two_step_certificate(A, 1.0, I2);
    REQUIRE(cert.blocks.size() == 1);
    CHECK((cert.blocks[0] - 1.16 * I2).cwiseAbs().maxCoeff() < 1e-12);
    const LmiSystem sys =
        build_lmi(build(parse_family("g1"), 1), A, 1.0, LyapunovTemplate::quadratic());
    CHECK(verify_certificate(sys, cert) == doctest::Approx(0.16));
  }

  SUBCASE("random contractive pairs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + trial % 3;
      const MatrixSet A = random_contractions(rng, n, 0.5);
      const double gamma = 1.25;
      const Matrix Q = Matrix::Identity(n, n);
      const Certificate cert = two_step_certificate(A, gamma, Q);
      const LmiSystem sys =
          build_lmi(build(parse_family("g1"), 2), A, gamma, LyapunovTemplate::quadratic());
      CHECK(verify_certificate(sys, cert) > 0.0);
      CHECK(verify_certificate(sys, rescaled_to_normalization(sys, cert)) >= -1e-9);
    }
  }

  SUBCASE("rejects bad inputs") {
    const MatrixSet A = make_matrix_set({0.4 * I2, 0.4 * I2});
    CHECK_THROWS_AS(two_step_certificate(A, 0.0, I2), Error);
    CHECK_THROWS_AS(two_step_certificate(A, 1.0, Matrix::Identity(3, 3)), Error);
    const MatrixSet big = make_matrix_set({1.1 * I2});
    CHECK_THROWS_AS(two_step_certificate(big, 1.0, I2), Error);
    CHECK_THROWS_AS(two_step_certificate(A, 1.0, -I2), Error);
  }
}

TEST_CASE("nested certificate construction") {
  std::mt19937 rng(23);

  SUBCASE("order two reduces to the two-step form") {
    const MatrixSet A = random_contractions(rng, 3, 0.6);
    const Matrix Q = Matrix::Identity(3, 3);
    const Certificate two = two_step_certificate(A, 1.0, Q);
    const Certificate nested = nested_certificate(A, 1.0, 2, Q);
    REQUIRE(two.blocks.size() == nested.blocks.size());
    for (size_t i = 0; i < two.blocks.size(); ++i)
      CHECK((two.blocks[i] - nested.blocks[i]).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("order three certifies the dual de Bruijn graph") {
    for (int trial = 0; trial < 5; ++trial) {
      const MatrixSet A = random_contractions(rng, 2, 0.7);
      const Matrix Q = Matrix::Identity(2, 2);
      const Certificate cert = nested_certificate(A, 1.0, 3, Q);
      CHECK(cert.blocks.size() == 4);
      const LmiSystem sys = build_lmi(build(parse_family("debruijnd:k=2"), 2), A, 1.0,
                                      LyapunovTemplate::quadratic());
      CHECK(verify_certificate(sys, cert) > 0.0);
      CHECK(verify_certificate(sys, rescaled_to_normalization(sys, cert)) >= -1e-9);
    }
  }

  SUBCASE("rejects bad inputs") {
    const Matrix I2 = Matrix::Identity(2, 2);
    const MatrixSet A = make_matrix_set({0.5 * I2, 0.5 * I2});
    CHECK_THROWS_AS(nested_certificate(A, 1.0, 1, I2), Error);
    CHECK_THROWS_AS(nested_certificate(A, -2.0, 2, I2), Error);
    const MatrixSet big = make_matrix_set({1.2 * I2, 0.5 * I2});
    CHECK_THROWS_AS(nested_certificate(big, 1.0, 3, I2), Error);
  }
}

TEST_CASE("system construction rejects bad inputs") {
  const MatrixSet A = pair_benchmark();
  const LabeledGraph g = build(parse_family("h1"), 2);
  CHECK_THROWS_AS(build_lmi(g, A, 0.0, LyapunovTemplate::quadratic()), Error);
  CHECK_THROWS_AS(build_lmi(g, A, -1.0, LyapunovTemplate::quadratic()), Error);
  const LabeledGraph g3 = build(parse_family("h1"), 3);
  CHECK_THROWS_AS(build_lmi(g3, A, 1.0, LyapunovTemplate::quadratic()), Error);
  CHECK_THROWS_AS(LyapunovTemplate::sos(3), Error);
  CHECK_THROWS_AS(LyapunovTemplate::sos(0), Error);
}

TEST_CASE("matrix set json round trip") {
  const MatrixSet A = benchmark("ex5.3").matrices;
  const Json j = matrix_set_to_json(A);
  const MatrixSet back = matrix_set_from_json(j);
  REQUIRE(back.m() == A.m());
  CHECK(back.n == A.n);
  for (int i = 0; i < A.m(); ++i)
    CHECK((back.matrices[i] - A.matrices[i]).cwiseAbs().maxCoeff() == 0.0);

  Json bad = j;
  bad["matrices"][0][0] = Json::array({1.0, 2.0});  // ragged row
  CHECK_THROWS_AS(matrix_set_from_json(bad), Error);
}

TEST_CASE("system json dump names every block and constraint") {
  const MatrixSet A = pair_benchmark();
  const LmiSystem sys =
      build_lmi(build(parse_family("g1"), 2), A, 0.8, LyapunovTemplate::quadratic());
  const Json j = lmi_to_json(sys);
  CHECK(j["n"] == 2);
  CHECK(j["gamma"] == doctest::Approx(0.8));
  CHECK(j["template"] == "quadratic");
  CHECK(j["blocks"].size() == 2);
  CHECK(j["constraints"].size() == 6);
  int normalizations = 0;
  for (const auto& jc : j["constraints"]) {
    CHECK(jc["kind"] == "psd");
    if (jc["normalization"].get<bool>()) ++normalizations;
  }
  CHECK(normalizations == 2);
}
