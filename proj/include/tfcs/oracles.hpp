#pragma once

#include "tfcs/circuit.hpp"

namespace tfcs {

/// Single-particle operator on the 2N-site lattice, sites l in
/// {-N+1, ..., N} mapped to indices 0 .. 2N-1.
struct SingleParticleOp {
  Index half_size = 0;
  MatrixXc matrix;

  Index size() const { return 2 * half_size; }
  static Index site_index(Index l, Index half_size) {
    return l + half_size - 1;
  }
};

/// One-step single-particle propagator U = U_e U_o of the matchgate
/// (jprime = 0) circuit; 2x2 bond blocks [[cos 2j, -i sin 2j], ...].
SingleParticleOp ff_step_matrix(double j, Index half_size);

/// <Z_0(n) Z_0(0)> = |[U^n]_00|^2. Requires n <= half_size.
double ff_correlator(double j, Index half_size, Index n);

/// Determinant formula for the matchgate moment-generating function:
/// det[ (I + e^{i lambda T / 2} U^n e^{-i lambda T / 2} U^{-n}) / 2 ]
/// with T = sum_{l<=0} |l><l| - sum_{l>0} |l><l|.
cplx ff_mgf(double j, Index half_size, Index n, double lambda);

/// Closed form at the dual-unitary point: [(1 + cos lambda)/2]^n.
double du_mgf(double lambda, Index n);

/// Generic dual-unitary trace form
/// ( Tr[e^{i lambda g} U e^{-i lambda g} U^dag] / d^2 )^n.
cplx du_mgf_generic(const TwoSiteGate& gate, const ChargeConvention& conv,
                    double lambda, Index n);

/// Dense brickwork circuit on 2N qubits with open boundaries; exact for
/// depth n <= N by the light-cone structure. 2N <= 12 enforced.
class FiniteLattice {
 public:
  FiniteLattice(const GateParams& params, Index half_size);

  Index half_size() const { return half_size_; }
  Index hilbert_dim() const { return dim_; }

  /// Tr[e^{i lambda D/2} U^n e^{-i lambda D/2} U^{-n}] / 2^{2N} with
  /// D the left-right particle-number difference.
  cplx mgf(Index n, double lambda) const;

  /// Tr[Z_0(n) Z_0(0)] / 2^{2N}.
  double correlator(Index n) const;

 private:
  const MatrixXc& power(Index n) const;

  Index half_size_;
  Index dim_;
  MatrixXc step_;
  Eigen::VectorXd charge_difference_;       // diagonal of D per basis state
  mutable std::vector<MatrixXc> powers_;    // U^0, U^1, ...
};

cplx exact_mgf_statevector(double j, double jprime, Index half_size, Index n,
                           double lambda);
double exact_correlator_statevector(double j, double jprime, Index half_size,
                                    Index n);

}  // namespace tfcs
