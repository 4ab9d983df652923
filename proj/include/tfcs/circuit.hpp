#pragma once

#include "tfcs/linalg.hpp"
#include "tfcs/tensor.hpp"

namespace tfcs {

/// Couplings of the two-site gate exp(-i j (XX + YY) - i jprime ZZ).
struct GateParams {
  double j = 0.0;
  double jprime = 0.0;
  Index local_dim = 2;

  double anisotropy() const {
    if (j == 0.0) throw std::domain_error("anisotropy undefined at j = 0");
    return jprime / j;
  }
  bool operator==(const GateParams&) const = default;
};

/// Unitary on two neighbouring sites, d^2 x d^2, commuting with the total
/// local charge.
struct TwoSiteGate {
  MatrixXc matrix;
  GateParams params;

  Index dim() const { return params.local_dim; }
};

/// Vectorized (folded) two-site superoperator. Legs, each of extent d^2:
/// (in-left, in-right, out-left, out-right). Each folded leg is the pair
/// (bra index, ket index), bra slowest. tilt is the counting field; 0 means
/// the plain conj(U) (x) U fold.
struct FoldedGate {
  Tensor tensor;
  double tilt = 0.0;
  GateParams params;

  Index leg_dim() const { return tensor.extent(0); }
};

/// Single-site charge N with spectrum {0, 1, ...} in elementary-charge
/// units, plus the interface tilt generator g = (N_0 - N_1) / 2.
struct ChargeConvention {
  MatrixXc local_charge;

  Index dim() const { return local_charge.rows(); }
  /// g = (N (x) I - I (x) N) / 2 on the two-site space.
  MatrixXc interface_generator() const;

  static ChargeConvention spin_half();
};

/// |I_1) = d^{-1/2} sum_k |k>|k>: the vectorized local infinite-temperature
/// state. Entries 1/sqrt(d) at positions k*d + k.
Tensor vectorized_identity(Index d);

/// exp(-i j (XX+YY) - i jprime ZZ) by exact 4x4 diagonalization.
TwoSiteGate build_xxz_gate(const GateParams& params);

/// Untilted fold conj(U) (x) U, reshaped to four site legs.
FoldedGate fold_gate(const TwoSiteGate& gate);

/// Tilted fold conj(U^{(+lambda/2)}) (x) U^{(-lambda/2)} with
/// U^{(mu)} = exp(i mu g) U exp(-i mu g). Requires a charge-conserving gate.
FoldedGate build_tilted_gate(const TwoSiteGate& gate,
                             const ChargeConvention& conv, double lambda);

/// Left-multiplication superoperator conj(O) (x) I on one site, as a
/// d^2 x d^2 matrix (row = out leg, col = in leg).
MatrixXc left_multiply_superop(const MatrixXc& op);

/// Contraction of the folded gate with vectorized identities on all four
/// legs; the single-step generating-function base.
cplx identity_closure(const FoldedGate& gate);

double unitarity_defect(const TwoSiteGate& gate);
double charge_conservation_defect(const TwoSiteGate& gate,
                                  const ChargeConvention& conv);

}  // namespace tfcs
