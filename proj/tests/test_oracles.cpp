#include <doctest.h>

#include <numbers>

#include "tfcs/oracles.hpp"

using namespace tfcs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("oracles") {

TEST_CASE("single-particle step at j = 0 is the identity") {
  SingleParticleOp op = ff_step_matrix(0.0, 4);
  CHECK((op.matrix - MatrixXc::Identity(8, 8)).norm() < 1e-14);
}

TEST_CASE("single-particle step is unitary") {
  for (double j : {0.25, 0.7, kPi / 4}) {
    SingleParticleOp op = ff_step_matrix(j, 5);
    CHECK((op.matrix.adjoint() * op.matrix - MatrixXc::Identity(10, 10))
              .norm() < 1e-13);
  }
}

TEST_CASE("one-step matrix element at the interface") {
  SingleParticleOp op = ff_step_matrix(0.25, 4);
  const Index i0 = SingleParticleOp::site_index(0, 4);
  const double c = std::cos(0.5);
  CHECK(std::abs(op.matrix(i0, i0) - cplx(c * c, 0.0)) < 1e-13);
}

TEST_CASE("free-fermion correlator values") {
  CHECK(ff_correlator(0.33, 4, 0) == doctest::Approx(1.0));
  const double c = std::cos(0.5);
  CHECK(ff_correlator(0.25, 4, 1) == doctest::Approx(c * c * c * c));
  CHECK(ff_correlator(kPi / 4, 4, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(ff_correlator(0.25, 3, 4), std::domain_error);
}

TEST_CASE("determinant mgf normalization") {
  CHECK(std::abs(ff_mgf(0.4, 5, 3, 0.0) - 1.0) < 1e-12);
  for (double lambda : {0.5, 2.0})
    CHECK(std::abs(ff_mgf(0.4, 5, 0, lambda) - 1.0) < 1e-12);
}

TEST_CASE("determinant mgf is real and matches the dual-unitary line") {
  for (Index n : {1, 2, 4})
    for (double lambda : {0.3, 1.2, 2.9}) {
      const cplx z = ff_mgf(kPi / 4, 5, n, lambda);
      CHECK(std::abs(z.imag()) < 1e-10);
      CHECK(std::abs(z - du_mgf(lambda, n)) < 1e-10);
    }
}

TEST_CASE("determinant mgf has small imaginary part off the special lines") {
  for (double lambda : {0.7, 1.9, 4.5})
    CHECK(std::abs(ff_mgf(0.3, 6, 5, lambda).imag()) < 1e-10);
}

TEST_CASE("dual-unitary closed form values") {
  CHECK(du_mgf(1.234, 0) == doctest::Approx(1.0));
  CHECK(du_mgf(kPi, 1) == doctest::Approx(0.0));
  CHECK(du_mgf(kPi / 2, 3) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("generic dual-unitary trace form agrees with the closed form") {
  const ChargeConvention conv = ChargeConvention::spin_half();
  for (double jp : {0.0, 0.6}) {
    TwoSiteGate g = build_xxz_gate({kPi / 4, jp});
    for (double lambda : {0.4, 1.8})
      CHECK(std::abs(du_mgf_generic(g, conv, lambda, 3) -
                     du_mgf(lambda, 3)) < 1e-12);
  }
}

TEST_CASE("statevector mgf normalization and cross-checks") {
  CHECK(std::abs(exact_mgf_statevector(0.4, 0.7, 3, 2, 0.0) - 1.0) < 1e-12);

  // free-fermion line
  for (double lambda : {0.0, 0.9, 2.2})
    CHECK(std::abs(exact_mgf_statevector(0.3, 0.0, 3, 3, lambda) -
                   ff_mgf(0.3, 3, 3, lambda)) < 1e-10);

  // dual-unitary line
  for (double lambda : {0.5, 1.6})
    CHECK(std::abs(exact_mgf_statevector(kPi / 4, 0.35, 3, 3, lambda) -
                   du_mgf(lambda, 3)) < 1e-10);
}

TEST_CASE("statevector mgf is light-cone exact under lattice growth") {
  for (double lambda : {0.8, 2.5}) {
    const cplx a = exact_mgf_statevector(0.4, 0.7, 2, 2, lambda);
    const cplx b = exact_mgf_statevector(0.4, 0.7, 3, 2, lambda);
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("statevector correlator cross-checks") {
  CHECK(exact_correlator_statevector(0.4, 0.7, 3, 0) == doctest::Approx(1.0));
  for (Index n : {1, 2, 3})
    CHECK(std::abs(exact_correlator_statevector(0.3, 0.0, 3, n) -
                   ff_correlator(0.3, 3, n)) < 1e-12);
  for (Index n : {1, 2})
    CHECK(std::abs(exact_correlator_statevector(kPi / 4, 0.6, 3, n)) < 1e-12);
}

TEST_CASE("statevector oracle rejects infeasible sizes") {
  CHECK_THROWS_AS(FiniteLattice(GateParams{0.3, 0.1}, 7), std::length_error);
  FiniteLattice lat(GateParams{0.3, 0.1}, 3);
  CHECK_THROWS_AS(lat.mgf(4, 0.5), std::domain_error);
}

TEST_CASE("determinant-oracle distribution is a probability") {
  const Index n = 6, half = 6;
  const Index points = 2 * n + 1;
  std::vector<cplx> z(points);
  for (Index k = 0; k < points; ++k)
    z[k] = ff_mgf(0.25, half, n, 2.0 * kPi * k / points);
  double sum = 0.0;
  for (Index q = -n; q <= n; ++q) {
    cplx p = 0.0;
    for (Index k = 0; k < points; ++k)
      p += z[k] * std::exp(cplx(0.0, -2.0 * kPi * k * q / points));
    p /= static_cast<double>(points);
    CHECK(std::abs(p.imag()) < 1e-10);
    CHECK(p.real() > -1e-10);
    sum += p.real();
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

}  // TEST_SUITE
