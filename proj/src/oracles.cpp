#include "tfcs/oracles.hpp"

#include <Eigen/LU>

namespace tfcs {

namespace {

/// Insert a 2x2 single-particle hopping block at (i, i+1).
void put_bond_block(MatrixXc& m, Index i, double j) {
  const double c = std::cos(2.0 * j), s = std::sin(2.0 * j);
  m(i, i) = c;
  m(i + 1, i + 1) = c;
  m(i, i + 1) = cplx(0.0, -s);
  m(i + 1, i) = cplx(0.0, -s);
}

MatrixXc single_particle_layer(double j, Index half_size, bool even) {
  const Index n = 2 * half_size;
  MatrixXc m = MatrixXc::Identity(n, n);
  for (Index i = 0; i + 1 < n; ++i) {
    const Index l = i - half_size + 1;  // lattice label of the bond start
    const bool l_even = ((l % 2) + 2) % 2 == 0;
    if (l_even == even) put_bond_block(m, i, j);
  }
  return m;
}

MatrixXc matrix_power_unitary(const MatrixXc& m, Index n) {
  MatrixXc out = MatrixXc::Identity(m.rows(), m.cols());
  for (Index k = 0; k < n; ++k) out = m * out;
  return out;
}

}  // namespace

SingleParticleOp ff_step_matrix(double j, Index half_size) {
  if (half_size < 1)
    throw std::invalid_argument("ff_step_matrix: half_size must be >= 1");
  SingleParticleOp op;
  op.half_size = half_size;
  op.matrix = single_particle_layer(j, half_size, true) *
              single_particle_layer(j, half_size, false);
  return op;
}

double ff_correlator(double j, Index half_size, Index n) {
  if (n < 0) throw std::invalid_argument("ff_correlator: negative depth");
  if (n > half_size)
    throw std::domain_error(
        "ff_correlator: depth exceeds half_size (light-cone violation)");
  const SingleParticleOp op = ff_step_matrix(j, half_size);
  const Index i0 = SingleParticleOp::site_index(0, half_size);
  const MatrixXc un = matrix_power_unitary(op.matrix, n);
  return std::norm(un(i0, i0));
}

cplx ff_mgf(double j, Index half_size, Index n, double lambda) {
  if (n < 0) throw std::invalid_argument("ff_mgf: negative depth");
  if (n > half_size)
    throw std::domain_error(
        "ff_mgf: depth exceeds half_size (light-cone violation)");
  const Index sz = 2 * half_size;
  const SingleParticleOp op = ff_step_matrix(j, half_size);
  const MatrixXc un = matrix_power_unitary(op.matrix, n);

  VectorXc phase(sz);
  for (Index i = 0; i < sz; ++i) {
    const Index l = i - half_size + 1;
    const double t = l <= 0 ? 1.0 : -1.0;
    phase(i) = std::exp(cplx(0.0, 0.5 * lambda * t));
  }
  MatrixXc inner = phase.asDiagonal() * un * phase.conjugate().asDiagonal() *
                   un.adjoint();
  inner = 0.5 * (MatrixXc::Identity(sz, sz) + inner);
  return inner.partialPivLu().determinant();
}

double du_mgf(double lambda, Index n) {
  if (n < 0) throw std::invalid_argument("du_mgf: negative depth");
  return std::pow(0.5 * (1.0 + std::cos(lambda)), static_cast<double>(n));
}

cplx du_mgf_generic(const TwoSiteGate& gate, const ChargeConvention& conv,
                    double lambda, Index n) {
  const Index d = gate.dim();
  const MatrixXc g = conv.interface_generator();
  const MatrixXc plus = expi_hermitian(-lambda * g);  // e^{+i lambda g}
  const MatrixXc minus = expi_hermitian(lambda * g);
  const cplx base =
      (plus * gate.matrix * minus * gate.matrix.adjoint()).trace() /
      static_cast<double>(d * d);
  return std::pow(base, static_cast<double>(n));
}

FiniteLattice::FiniteLattice(const GateParams& params, Index half_size)
    : half_size_(half_size) {
  if (half_size < 1)
    throw std::invalid_argument("FiniteLattice: half_size must be >= 1");
  if (2 * half_size > 12)
    throw std::length_error(
        "FiniteLattice: 2N > 12 is not feasible with dense operators");
  const Index sites = 2 * half_size;
  dim_ = Index(1) << sites;

  const TwoSiteGate gate = build_xxz_gate(params);
  const MatrixXc id2 = MatrixXc::Identity(2, 2);
  auto layer = [&](bool even) {
    MatrixXc m = MatrixXc::Identity(1, 1);
    Index i = 0;
    while (i < sites) {
      const Index l = i - half_size + 1;
      const bool l_even = ((l % 2) + 2) % 2 == 0;
      if (i + 1 < sites && l_even == even) {
        m = kron(m, gate.matrix);
        i += 2;
      } else {
        m = kron(m, id2);
        i += 1;
      }
    }
    return m;
  };
  step_ = layer(true) * layer(false);  // odd sublattice acts first

  // Occupation n_l = (Z_l + 1)/2 is 1 for bit value 0 (spin up).
  charge_difference_.resize(dim_);
  for (Index s = 0; s < dim_; ++s) {
    double delta = 0.0;
    for (Index i = 0; i < sites; ++i) {
      const Index l = i - half_size + 1;
      const Index bit = (s >> (sites - 1 - i)) & 1;
      const double occ = bit == 0 ? 1.0 : 0.0;
      delta += (l <= 0 ? occ : -occ);
    }
    charge_difference_(s) = delta;
  }
  powers_.push_back(MatrixXc::Identity(dim_, dim_));
}

const MatrixXc& FiniteLattice::power(Index n) const {
  while (static_cast<Index>(powers_.size()) <= n)
    powers_.push_back(step_ * powers_.back());
  return powers_[static_cast<size_t>(n)];
}

cplx FiniteLattice::mgf(Index n, double lambda) const {
  if (n < 0) throw std::invalid_argument("mgf: negative depth");
  if (n > half_size_)
    throw std::domain_error("mgf: depth exceeds half_size (light cone)");
  const MatrixXc& un = power(n);
  VectorXc phase(dim_);
  for (Index s = 0; s < dim_; ++s)
    phase(s) = std::exp(cplx(0.0, 0.5 * lambda * charge_difference_(s)));
  cplx sum = 0.0;
  for (Index r = 0; r < dim_; ++r)
    for (Index c = 0; c < dim_; ++c)
      sum += phase(r) * std::conj(phase(c)) * std::norm(un(r, c));
  return sum / static_cast<double>(dim_);
}

double FiniteLattice::correlator(Index n) const {
  if (n < 0) throw std::invalid_argument("correlator: negative depth");
  if (n > half_size_)
    throw std::domain_error("correlator: depth exceeds half_size (light cone)");
  const MatrixXc& un = power(n);
  const Index sites = 2 * half_size_;
  const Index i0 = SingleParticleOp::site_index(0, half_size_);
  double sum = 0.0;
  for (Index r = 0; r < dim_; ++r) {
    const double zr = ((r >> (sites - 1 - i0)) & 1) == 0 ? 1.0 : -1.0;
    for (Index c = 0; c < dim_; ++c) {
      const double zc = ((c >> (sites - 1 - i0)) & 1) == 0 ? 1.0 : -1.0;
      sum += zr * zc * std::norm(un(r, c));
    }
  }
  return sum / static_cast<double>(dim_);
}

cplx exact_mgf_statevector(double j, double jprime, Index half_size, Index n,
                           double lambda) {
  FiniteLattice lat(GateParams{j, jprime}, half_size);
  return lat.mgf(n, lambda);
}

double exact_correlator_statevector(double j, double jprime, Index half_size,
                                    Index n) {
  FiniteLattice lat(GateParams{j, jprime}, half_size);
  return lat.correlator(n);
}

}  // namespace tfcs
