#include <doctest.h>

#include <random>

#include "tfcs/linalg.hpp"

using namespace tfcs;

namespace {

MatrixXc random_matrix(Index r, Index c, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  MatrixXc m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity truncated to rank 1") {
  SvdResult r = svd_truncated(MatrixXc::Identity(2, 2), 1, 0.0);
  REQUIRE(r.rank() == 1);
  CHECK(r.singular_values(0) == doctest::Approx(1.0));
  CHECK(r.discarded_weight == doctest::Approx(1.0));
}

TEST_CASE("diagonal matrix keeps the largest value") {
  MatrixXc m = MatrixXc::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 4.0;
  SvdResult r = svd_truncated(m, 1, 0.0);
  REQUIRE(r.rank() == 1);
  CHECK(r.singular_values(0) == doctest::Approx(4.0));
  CHECK(r.discarded_weight == doctest::Approx(3.0));
}

TEST_CASE("no truncation reconstructs the input") {
  std::mt19937 rng(5);
  MatrixXc m = random_matrix(8, 8, rng);
  SvdResult r = svd_truncated(m, 8, 0.0);
  CHECK((r.reconstruct() - m).norm() < 1e-12);
  CHECK(r.discarded_weight < 1e-14);
}

TEST_CASE("chi_max = 0 is invalid") {
  CHECK_THROWS_AS(svd_truncated(MatrixXc::Identity(2, 2), 0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("isometries and ordering") {
  std::mt19937 rng(11);
  MatrixXc m = random_matrix(9, 5, rng);
  SvdResult r = svd_truncated(m, 5, 0.0);
  CHECK((r.left_isometry.adjoint() * r.left_isometry -
         MatrixXc::Identity(r.rank(), r.rank()))
            .norm() < 1e-12);
  CHECK((r.right_isometry.adjoint() * r.right_isometry -
         MatrixXc::Identity(r.rank(), r.rank()))
            .norm() < 1e-12);
  for (Index i = 0; i + 1 < r.rank(); ++i)
    CHECK(r.singular_values(i) >= r.singular_values(i + 1));
  CHECK(r.singular_values.minCoeff() >= 0.0);
}

TEST_CASE("spectral reconstruction error equals largest discarded value") {
  std::mt19937 rng(17);
  MatrixXc u = vector_to_e1_unitary(random_matrix(6, 1, rng).col(0));
  MatrixXc v = vector_to_e1_unitary(random_matrix(6, 1, rng).col(0));
  Eigen::VectorXd s(6);
  s << 5.0, 2.0, 1.0, 0.5, 0.25, 0.1;
  MatrixXc m = u.adjoint() * s.asDiagonal() * v;
  SvdResult r = svd_truncated(m, 3, 0.0);
  const double spectral =
      svd_full(m - r.reconstruct()).singular_values.maxCoeff();
  CHECK(spectral == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.discarded_weight == doctest::Approx(0.85).epsilon(1e-10));
}

TEST_CASE("relative cutoff drops small values") {
  MatrixXc m = MatrixXc::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-1;
  m(2, 2) = 1e-9;
  SvdResult r = svd_truncated(m, 3, 1e-6);
  CHECK(r.rank() == 2);
  CHECK(r.discarded_weight == doctest::Approx(1e-9));
}

TEST_CASE("householder rotates (3,4) onto e1") {
  VectorXc v(2);
  v << 3.0, 4.0;
  MatrixXc w = vector_to_e1_unitary(v);
  VectorXc wv = w * v;
  CHECK(std::abs(wv(0)) == doctest::Approx(5.0));
  CHECK(std::abs(wv(1)) < 1e-13);
}

TEST_CASE("aligned vector gives identity up to phase") {
  VectorXc v(3);
  v << 1.0, 0.0, 0.0;
  MatrixXc w = vector_to_e1_unitary(v);
  CHECK((w - MatrixXc::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("householder is unitary with vanishing tail on random input") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 8; ++rep) {
    VectorXc v = random_matrix(16, 1, rng).col(0);
    MatrixXc w = vector_to_e1_unitary(v);
    CHECK((w.adjoint() * w - MatrixXc::Identity(16, 16)).norm() < 1e-12);
    VectorXc wv = w * v;
    CHECK(std::abs(wv(0) - cplx(v.norm(), 0.0)) < 1e-12);
    CHECK(wv.tail(15).norm() < 1e-12);
  }
}

TEST_CASE("degenerate vector raises") {
  VectorXc v = VectorXc::Zero(4);
  CHECK_THROWS_AS(vector_to_e1_unitary(v), std::domain_error);
}

TEST_CASE("expi of a Pauli rotation") {
  MatrixXc z(2, 2);
  z << 1, 0, 0, -1;
  MatrixXc u = expi_hermitian(0.3 * z);
  CHECK(std::abs(u(0, 0) - std::exp(cplx(0, -0.3))) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(cplx(0, 0.3))) < 1e-14);
}

}  // TEST_SUITE
