#include "tfcs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace tfcs {

SvdResult svd_full(const MatrixXc& m) {
  if (m.size() == 0) throw std::invalid_argument("svd: empty matrix");
  if (!m.allFinite()) throw std::invalid_argument("svd: non-finite entries");

  SvdResult out;
  const Index small = 16;  // BDCSVD degenerates to Jacobi below this anyway
  if (std::min(m.rows(), m.cols()) <= small) {
    Eigen::JacobiSVD<MatrixXc> svd(m,
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.left_isometry = svd.matrixU();
    out.singular_values = svd.singularValues();
    out.right_isometry = svd.matrixV();
  } else {
    Eigen::BDCSVD<MatrixXc> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.left_isometry = svd.matrixU();
    out.singular_values = svd.singularValues();
    out.right_isometry = svd.matrixV();
  }
  return out;
}

SvdResult svd_truncated(const MatrixXc& m, Index chi_max, double cutoff) {
  if (chi_max <= 0)
    throw std::invalid_argument("svd_truncated: chi_max must be positive");
  if (cutoff < 0)
    throw std::invalid_argument("svd_truncated: negative cutoff");

  SvdResult full = svd_full(m);
  const Index r = full.rank();
  const double top = r > 0 ? full.singular_values(0) : 0.0;

  Index keep = std::min(chi_max, r);
  while (keep > 1 && full.singular_values(keep - 1) < cutoff * top) --keep;

  SvdResult out;
  out.left_isometry = full.left_isometry.leftCols(keep);
  out.singular_values = full.singular_values.head(keep);
  out.right_isometry = full.right_isometry.leftCols(keep);
  out.discarded_weight = full.singular_values.tail(r - keep).sum();
  return out;
}

MatrixXc vector_to_e1_unitary(const VectorXc& v) {
  const Index n = v.size();
  if (n == 0) throw std::invalid_argument("vector_to_e1_unitary: empty vector");
  const double nrm = v.norm();
  if (nrm < 1e-300)
    throw std::domain_error("vector_to_e1_unitary: degenerate (zero) vector");

  // Householder W = I - 2 w w^dag with w || (v - alpha e1), alpha chosen
  // opposite in phase to v(0) so the subtraction never cancels.
  cplx phase = cplx(1.0, 0.0);
  if (std::abs(v(0)) > 0) phase = v(0) / std::abs(v(0));
  const cplx alpha = -phase * nrm;

  VectorXc w = v;
  w(0) -= alpha;
  const double wn = w.norm();
  MatrixXc out = MatrixXc::Identity(n, n);
  if (wn > 1e-300) {
    w /= wn;
    out.noalias() -= 2.0 * w * w.adjoint();
  }
  // Now out * v = alpha e1; rotate the first row so (W v)(0) = |v| > 0.
  out.row(0) *= std::conj(-phase);
  return out;
}

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXc expi_hermitian(const MatrixXc& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("expi_hermitian: non-square input");
  if ((h - h.adjoint()).norm() > 1e-12 * std::max(1.0, h.norm()))
    throw std::invalid_argument("expi_hermitian: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  VectorXc phases(ev.size());
  for (Index i = 0; i < ev.size(); ++i)
    phases(i) = std::exp(cplx(0.0, -ev(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace tfcs
