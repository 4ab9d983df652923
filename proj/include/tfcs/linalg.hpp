#pragma once

#include "tfcs/tensor.hpp"

namespace tfcs {

/// Thin SVD m = left_isometry * diag(singular_values) * right_isometry^dagger,
/// truncated to at most chi_max values. discarded_weight is the sum of the
/// dropped singular values.
struct SvdResult {
  MatrixXc left_isometry;
  Eigen::VectorXd singular_values;
  MatrixXc right_isometry;
  double discarded_weight = 0.0;

  Index rank() const { return singular_values.size(); }
  MatrixXc reconstruct() const {
    return left_isometry * singular_values.asDiagonal() *
           right_isometry.adjoint();
  }
};

/// Full thin SVD (no truncation), singular values non-increasing.
SvdResult svd_full(const MatrixXc& m);

/// Keeps at most chi_max singular values and drops values below
/// cutoff * (largest singular value). chi_max must be positive.
SvdResult svd_truncated(const MatrixXc& m, Index chi_max, double cutoff);

/// Unitary W with W v = (|v| * phase, 0, ..., 0), built from a single
/// Householder reflection. Throws for vanishing input.
MatrixXc vector_to_e1_unitary(const VectorXc& v);

MatrixXc kron(const MatrixXc& a, const MatrixXc& b);

/// exp(-i * h) for Hermitian h, by diagonalization.
MatrixXc expi_hermitian(const MatrixXc& h);

}  // namespace tfcs
