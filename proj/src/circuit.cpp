#include "tfcs/circuit.hpp"

namespace tfcs {

namespace {

MatrixXc pauli_x() {
  MatrixXc m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
MatrixXc pauli_y() {
  MatrixXc m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
MatrixXc pauli_z() {
  MatrixXc m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Fold two branch operators into the four-leg site-grouped tensor
/// conj(A) (x) B. Folded leg index = bra * d + ket.
Tensor fold_two_branch(const MatrixXc& a, const MatrixXc& b, Index d) {
  const Index D = d * d;
  Tensor t({D, D, D, D});
  auto& v = t.data();
  for (Index l1 = 0; l1 < d; ++l1)
    for (Index k1 = 0; k1 < d; ++k1)
      for (Index l2 = 0; l2 < d; ++l2)
        for (Index k2 = 0; k2 < d; ++k2)
          for (Index m1 = 0; m1 < d; ++m1)
            for (Index p1 = 0; p1 < d; ++p1)
              for (Index m2 = 0; m2 < d; ++m2)
                for (Index p2 = 0; p2 < d; ++p2) {
                  const Index il = l1 * d + k1, ir = l2 * d + k2;
                  const Index ol = m1 * d + p1, orr = m2 * d + p2;
                  const Index flat = ((il * D + ir) * D + ol) * D + orr;
                  v(flat) = std::conj(a(m1 * d + m2, l1 * d + l2)) *
                            b(p1 * d + p2, k1 * d + k2);
                }
  return t;
}

}  // namespace

MatrixXc ChargeConvention::interface_generator() const {
  const Index d = dim();
  const MatrixXc id = MatrixXc::Identity(d, d);
  return 0.5 * (kron(local_charge, id) - kron(id, local_charge));
}

ChargeConvention ChargeConvention::spin_half() {
  ChargeConvention conv;
  conv.local_charge = 0.5 * (pauli_z() + MatrixXc::Identity(2, 2));
  return conv;
}

Tensor vectorized_identity(Index d) {
  if (d < 2) throw std::invalid_argument("vectorized_identity: d must be >= 2");
  Tensor t({d * d});
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index k = 0; k < d; ++k) t[k * d + k] = w;
  return t;
}

TwoSiteGate build_xxz_gate(const GateParams& params) {
  if (params.local_dim != 2)
    throw std::domain_error("build_xxz_gate: only local_dim = 2 is supported");
  const MatrixXc xx = kron(pauli_x(), pauli_x());
  const MatrixXc yy = kron(pauli_y(), pauli_y());
  const MatrixXc zz = kron(pauli_z(), pauli_z());
  const MatrixXc h = params.j * (xx + yy) + params.jprime * zz;
  return TwoSiteGate{expi_hermitian(h), params};
}

FoldedGate fold_gate(const TwoSiteGate& gate) {
  if (unitarity_defect(gate) > 1e-10)
    throw std::invalid_argument("fold_gate: gate is not unitary");
  return FoldedGate{fold_two_branch(gate.matrix, gate.matrix, gate.dim()), 0.0,
                    gate.params};
}

FoldedGate build_tilted_gate(const TwoSiteGate& gate,
                             const ChargeConvention& conv, double lambda) {
  if (conv.dim() != gate.dim())
    throw std::invalid_argument("build_tilted_gate: dimension mismatch");
  if (charge_conservation_defect(gate, conv) > 1e-10)
    throw std::invalid_argument(
        "build_tilted_gate: gate does not conserve the local charge");
  if (lambda == 0.0) {
    FoldedGate g = fold_gate(gate);
    return g;
  }
  const MatrixXc g = conv.interface_generator();
  const MatrixXc plus = expi_hermitian(-0.5 * lambda * g);   // e^{+i l/2 g}
  const MatrixXc minus = expi_hermitian(0.5 * lambda * g);   // e^{-i l/2 g}
  const MatrixXc branch_bra = plus * gate.matrix * minus;    // U^{(+l/2)}
  const MatrixXc branch_ket = minus * gate.matrix * plus;    // U^{(-l/2)}
  return FoldedGate{fold_two_branch(branch_bra, branch_ket, gate.dim()),
                    lambda, gate.params};
}

MatrixXc left_multiply_superop(const MatrixXc& op) {
  const Index d = op.rows();
  if (op.cols() != d) throw std::invalid_argument("superop: non-square op");
  const Index D = d * d;
  MatrixXc s(D, D);
  for (Index m = 0; m < d; ++m)
    for (Index p = 0; p < d; ++p)
      for (Index l = 0; l < d; ++l)
        for (Index k = 0; k < d; ++k)
          s(m * d + p, l * d + k) = std::conj(op(m, l)) * (p == k ? 1.0 : 0.0);
  return s;
}

cplx identity_closure(const FoldedGate& gate) {
  const Index D = gate.leg_dim();
  const Index d = static_cast<Index>(std::llround(std::sqrt(double(D))));
  const Tensor pin = vectorized_identity(d);
  Tensor t = contract(gate.tensor, {0}, pin, {0});  // (ir, ol, or)
  t = contract(t, {0}, pin, {0});                   // (ol, or)
  t = contract(t, {0}, pin, {0});                   // (or)
  t = contract(t, {0}, pin, {0});
  return t[0];
}

double unitarity_defect(const TwoSiteGate& gate) {
  const Index n = gate.matrix.rows();
  return (gate.matrix.adjoint() * gate.matrix - MatrixXc::Identity(n, n))
      .norm();
}

double charge_conservation_defect(const TwoSiteGate& gate,
                                  const ChargeConvention& conv) {
  const Index d = conv.dim();
  const MatrixXc id = MatrixXc::Identity(d, d);
  const MatrixXc total =
      kron(conv.local_charge, id) + kron(id, conv.local_charge);
  return (gate.matrix * total - total * gate.matrix).norm();
}

}  // namespace tfcs
