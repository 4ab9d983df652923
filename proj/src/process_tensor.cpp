#include "tfcs/process_tensor.hpp"

namespace tfcs {

namespace {

Index leg_dim_of(const TemporalMPS& pt) { return pt.sites.at(0).extent(1); }

Index local_dim_from_leg(Index leg_dim) {
  const Index d = static_cast<Index>(std::llround(std::sqrt(double(leg_dim))));
  if (d * d != leg_dim)
    throw std::invalid_argument("folded leg dimension is not a square");
  return d;
}

Tensor pin_site(Index d) {
  Tensor t({1, d * d, 1});
  const Tensor pin = vectorized_identity(d);
  for (Index i = 0; i < d * d; ++i) t[i] = pin[i];
  return t;
}

/// Pin as an awaiting environment: legs (physical, trivial bond).
Tensor pin_await(Index d) {
  Tensor t({d * d, 1});
  const Tensor pin = vectorized_identity(d);
  for (Index i = 0; i < d * d; ++i) t[i] = pin[i];
  return t;
}

/// Gate legs consumed by the environment-side contraction during growth.
/// Left process tensor: the gate's left legs face the environment.
struct GateLegs {
  Index in_env, out_env;  // contracted with the old physical legs
  Index in_new, out_new;  // become the new physical legs
};

GateLegs gate_legs(Side side) {
  // FoldedGate legs: (in-left, in-right, out-left, out-right)
  if (side == Side::Left) return GateLegs{0, 2, 1, 3};
  return GateLegs{1, 3, 0, 2};
}

/// Two-site block after gate application:
/// theta(bond-below, new-lower-leg, new-upper-leg, bond-above).
/// low carries the old leg entering the gate, high the old leg leaving it.
Tensor build_theta(const Tensor& low, const Tensor& high,
                   const FoldedGate& gate, Side side) {
  const GateLegs legs = gate_legs(side);
  // low (chi_b, in_env, mid) x gate -> (chi_b, mid, out_env, in_new, out_new)
  Tensor tmp = contract(low, {1}, gate.tensor, {legs.in_env});
  // order of the remaining gate legs within tmp
  std::vector<Index> rest;
  for (Index l : {Index(0), Index(1), Index(2), Index(3)})
    if (l != legs.in_env) rest.push_back(l);
  auto pos = [&](Index leg) {
    for (size_t i = 0; i < rest.size(); ++i)
      if (rest[i] == leg) return static_cast<Index>(2 + i);
    throw std::logic_error("gate leg bookkeeping");
  };
  // contract mid and out_env with the upper old site (mid, out_env, chi_t)
  Tensor theta = contract(tmp, {1, pos(legs.out_env)}, high, {0, 1});
  // remaining tmp legs: (chi_b, in_new, out_new) in ascending original order,
  // then chi_t from high.
  const bool swap_new = pos(legs.in_new) > pos(legs.out_new);
  if (swap_new) return theta.permuted({0, 2, 1, 3});
  return theta;
}

/// One step of the bottom-up past recursion over the freshly written sites.
Tensor past_step(const Tensor& p, const Tensor& below, const Tensor& above) {
  // p (z, chi_b) x below (chi_b, z, k) over both -> (k)
  Tensor a = contract(p, {0, 1}, below, {1, 0});
  // (k) x above (k, x, chi_t) -> (x, chi_t)
  return contract(a, {0}, above, {0});
}

struct GaugeFactors {
  MatrixXc below;
  MatrixXc above;
  double discarded = 0.0;       // singular-value tail of the trailing block
  double cross_discarded = 0.0; // norm of zeroed cross blocks
};

/// fat = L Q with the rows of Q orthonormal; L is absorbed downward so the
/// block becomes right-canonical.
void pull_right_canonical(MatrixXc& l_out, MatrixXc& q_out, const MatrixXc& m) {
  const Index rows = m.rows(), cols = m.cols();
  const Index k = std::min(rows, cols);
  Eigen::HouseholderQR<MatrixXc> qr(m.adjoint());
  MatrixXc qthin = qr.householderQ() * MatrixXc::Identity(cols, k);
  MatrixXc rthin = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  l_out = rthin.adjoint();  // rows x k
  q_out = qthin.adjoint();  // k x cols
}

/// The gauge-and-truncate core described in the header. svd holds the exact
/// factorization of theta; p and f are the environments expressed in the new
/// bond basis.
GaugeFactors normalization_preserving_split(const SvdResult& svd,
                                            const VectorXc& p,
                                            const VectorXc& f,
                                            const TruncationConfig& cfg) {
  const Index r = svd.rank();
  const double pn = p.norm(), fn = f.norm();
  if (pn < 1e-300 || fn < 1e-300)
    throw DegenerateEnvironmentError(
        "truncate_bond_normalized: environment carries no normalization flux");

  const MatrixXc wp = vector_to_e1_unitary(p);
  const MatrixXc wf = vector_to_e1_unitary(f);

  // M = conj(W_p) * diag(sigma) * W_f^dag, then a diagonal phase on the
  // f side making M(0,0) real positive.
  MatrixXc m = svd.singular_values.asDiagonal() * wf.adjoint();
  m = wp.conjugate() * m;
  const cplx m00 = m(0, 0);
  const cplx ph = std::abs(m00) > 0 ? m00 / std::abs(m00) : cplx(1.0, 0.0);
  m.col(0) *= std::conj(ph);

  const double scale = svd.singular_values(0);

  // trailing block truncation
  const MatrixXc b = m.bottomRightCorner(r - 1, r - 1);
  double discarded = 0.0;
  Index k = 0;
  SvdResult bs;
  if (r > 1) {
    bs = svd_full(b);
    const Index budget =
        cfg.cross_block_mode == CrossBlockMode::KeepCrossBlocks
            ? std::max<Index>(cfg.chi_max - 2, 0)
            : cfg.chi_max - 1;
    k = std::min<Index>(budget, bs.rank());
    while (k > 0 && bs.singular_values(k - 1) < cfg.cutoff * scale) --k;
    discarded += bs.singular_values.tail(bs.rank() - k).sum();
  }

  double cross_discarded = 0.0;
  MatrixXc pk, qk;
  Eigen::VectorXd dk;
  if (cfg.cross_block_mode == CrossBlockMode::ZeroCrossBlocks) {
    cross_discarded = std::hypot(m.row(0).tail(r - 1).norm(),
                                 m.col(0).tail(r - 1).norm());
    pk = MatrixXc::Zero(r, k + 1);
    qk = MatrixXc::Zero(r, k + 1);
    dk.resize(k + 1);
    pk(0, 0) = 1.0;
    qk(0, 0) = 1.0;
    dk(0) = std::abs(m00);
    if (k > 0) {
      pk.block(1, 1, r - 1, k) = bs.left_isometry.leftCols(k);
      qk.block(1, 1, r - 1, k) = bs.right_isometry.leftCols(k);
      dk.tail(k) = bs.singular_values.head(k);
    }
  } else {
    // Exact rank-(k+2) refactorization keeping the cross blocks.
    const VectorXc c_col = m.col(0).tail(r - 1);
    const VectorXc c_row = m.row(0).tail(r - 1).conjugate();  // column form
    const MatrixXc ubar =
        k > 0 ? bs.left_isometry.leftCols(k) : MatrixXc(r - 1, 0);
    const MatrixXc vbar =
        k > 0 ? bs.right_isometry.leftCols(k) : MatrixXc(r - 1, 0);

    const VectorXc a = ubar.adjoint() * c_col;
    VectorXc wres = c_col - ubar * a;
    const double rho = wres.norm();
    if (rho > 1e-300) wres /= rho; else wres.setZero();

    const VectorXc bb = vbar.adjoint() * c_row;
    VectorXc zres = c_row - vbar * bb;
    const double s = zres.norm();
    if (s > 1e-300) zres /= s; else zres.setZero();

    MatrixXc core = MatrixXc::Zero(k + 2, k + 2);
    core(0, 0) = std::abs(m00);
    core.row(0).segment(1, k) = bb.adjoint();
    core(0, k + 1) = s;
    core.col(0).segment(1, k) = a;
    core(k + 1, 0) = rho;
    for (Index i = 0; i < k; ++i) core(1 + i, 1 + i) = bs.singular_values(i);

    const SvdResult cs = svd_full(core);
    Index kk = cs.rank();
    while (kk > 1 && cs.singular_values(kk - 1) < 1e-30 * std::max(scale, 1.0))
      --kk;

    MatrixXc pbasis = MatrixXc::Zero(r, k + 2);
    MatrixXc qbasis = MatrixXc::Zero(r, k + 2);
    pbasis(0, 0) = 1.0;
    qbasis(0, 0) = 1.0;
    if (k > 0) {
      pbasis.block(1, 1, r - 1, k) = ubar;
      qbasis.block(1, 1, r - 1, k) = vbar;
    }
    pbasis.col(k + 1).tail(r - 1) = wres;
    qbasis.col(k + 1).tail(r - 1) = zres;

    pk = pbasis * cs.left_isometry.leftCols(kk);
    qk = qbasis * cs.right_isometry.leftCols(kk);
    dk = cs.singular_values.head(kk);
  }

  // Absorb the gauge back: theta' = (U X_p^dag Pk) (D Qk^dag X_f V^dag) with
  // X_p = conj(W_p), X_f = Phi W_f, Phi = diag(ph, 1, ..., 1). The below
  // factor is a pure isometry so the sweep keeps the chain left-canonical.
  GaugeFactors out;
  out.discarded = discarded;
  out.cross_discarded = cross_discarded;
  out.below = svd.left_isometry * (wp.transpose() * pk);

  MatrixXc e = qk.adjoint();
  e.col(0) *= ph;
  out.above = dk.asDiagonal() * (e * wf) * svd.right_isometry.adjoint();
  return out;
}

GaugeFactors plain_svd_split(const MatrixXc& theta_m,
                             const TruncationConfig& cfg) {
  SvdResult svd = svd_truncated(theta_m, cfg.chi_max, cfg.cutoff);
  GaugeFactors out;
  out.discarded = svd.discarded_weight;
  out.below = svd.left_isometry;
  out.above = svd.singular_values.asDiagonal() * svd.right_isometry.adjoint();
  return out;
}

}  // namespace

std::vector<Index> TemporalMPS::chi_profile() const {
  std::vector<Index> chi;
  for (size_t i = 0; i + 1 < sites.size(); ++i) chi.push_back(sites[i].extent(2));
  return chi;
}

Index TemporalMPS::max_bond() const {
  Index m = 1;
  for (Index c : chi_profile()) m = std::max(m, c);
  return m;
}

TemporalMPS init_process_tensor(const FoldedGate& gate, Side side,
                                const GateParams& params,
                                const TruncationConfig& cfg) {
  cfg.validate();
  if (gate.tilt != 0.0)
    throw std::invalid_argument("init_process_tensor: gate must be untilted");
  if (!(gate.params == params))
    throw std::invalid_argument("init_process_tensor: parameter mismatch");
  const Index d = local_dim_from_leg(gate.leg_dim());

  TemporalMPS pt;
  pt.side = side;
  pt.depth = 1;
  pt.gate_params = params;
  pt.trunc_config = cfg;
  pt.sites.push_back(pin_site(d));  // initial infinite-temperature pin
  pt.sites.push_back(pin_site(d));  // light-cone trace cap
  return pt;
}

TemporalMPS grow(const TemporalMPS& pt, const FoldedGate& gate,
                 const TruncationConfig& cfg, TruncationScheme scheme) {
  cfg.validate();
  if (gate.tilt != 0.0)
    throw std::invalid_argument("grow: the growth gate must be untilted");
  if (!(gate.params == pt.gate_params))
    throw std::invalid_argument("grow: gate parameters differ from the tensor");
  const Index d = local_dim_from_leg(gate.leg_dim());
  const Index dd = d * d;
  const Index m = pt.depth;
  const auto& old = pt.sites;

  // Gate-applied two-site blocks, then a right-canonicalization pass so the
  // singular values seen by the sweep are the honest Schmidt spectrum.
  std::vector<Tensor> fat(static_cast<size_t>(m));
  for (Index b = 0; b < m; ++b)
    fat[static_cast<size_t>(b)] =
        build_theta(old[static_cast<size_t>(2 * b)],
                    old[static_cast<size_t>(2 * b + 1)], gate, pt.side);
  for (Index b = m - 1; b >= 1; --b) {
    Tensor& f = fat[static_cast<size_t>(b)];
    const Index chi_t = f.extent(3);
    MatrixXc l, q;
    pull_right_canonical(l, q, MatrixXc(f.as_matrix(1)));
    const Index kdim = q.rows();
    f = tensor_from_matrix(q).reshaped({kdim, dd, dd, chi_t});
    Tensor lt = tensor_from_matrix(l);
    fat[static_cast<size_t>(b - 1)] =
        contract(fat[static_cast<size_t>(b - 1)], {3}, lt, {0});
  }

  // Future environments over the canonical blocks, top down. fs[b] legs:
  // (awaiting physical leg, bond below block b+1).
  std::vector<Tensor> fs(static_cast<size_t>(m));
  fs[static_cast<size_t>(m - 1)] = pin_await(d);
  for (Index b = m - 1; b >= 1; --b) {
    Tensor nf = contract(fat[static_cast<size_t>(b)], {2, 3},
                         fs[static_cast<size_t>(b)], {0, 1});
    fs[static_cast<size_t>(b - 1)] = nf.permuted({1, 0});
  }

  TemporalMPS out;
  out.side = pt.side;
  out.depth = m + 1;
  out.gate_params = pt.gate_params;
  out.trunc_config = cfg;
  out.total_discarded_weight = pt.total_discarded_weight;
  out.total_cross_weight = pt.total_cross_weight;
  out.sites.resize(static_cast<size_t>(2 * m + 2));
  out.sites[0] = pin_site(d);

  Tensor past = pin_await(d);
  MatrixXc carry = MatrixXc::Identity(1, 1);
  for (Index b = 0; b < m; ++b) {
    Tensor carry_t = tensor_from_matrix(carry);
    Tensor theta = contract(carry_t, {1}, fat[static_cast<size_t>(b)], {0});
    fat[static_cast<size_t>(b)] = Tensor();  // release
    const Index chi_b = theta.extent(0);
    const Index chi_t = theta.extent(3);
    const MatrixXc theta_m = theta.as_matrix(2);

    GaugeFactors split;
    if (scheme == TruncationScheme::NormPreserving) {
      const SvdResult svd = svd_full(theta_m);
      const Index r = svd.rank();
      Tensor u_t =
          tensor_from_matrix(svd.left_isometry).reshaped({chi_b, dd, r});
      Tensor v_t = tensor_from_matrix(svd.right_isometry.conjugate())
                       .reshaped({dd, chi_t, r});
      Tensor p_bond = contract(past, {0, 1}, u_t, {1, 0});
      Tensor f_bond =
          contract(fs[static_cast<size_t>(b)], {0, 1}, v_t, {0, 1});
      split = normalization_preserving_split(svd, p_bond.data(),
                                             f_bond.data(), cfg);
    } else {
      split = plain_svd_split(theta_m, cfg);
    }

    const Index kdim = split.below.cols();
    Tensor below = tensor_from_matrix(split.below).reshaped({chi_b, dd, kdim});
    Tensor above = tensor_from_matrix(split.above).reshaped({kdim, dd, chi_t});
    if (b + 1 < m) {
      // push the centre up through the just-written block
      const MatrixXc am = above.as_matrix(2);  // (kdim dd) x chi_t
      const Index k2 = std::min<Index>(kdim * dd, chi_t);
      Eigen::HouseholderQR<MatrixXc> qr(am);
      MatrixXc q = qr.householderQ() * MatrixXc::Identity(kdim * dd, k2);
      carry =
          MatrixXc(qr.matrixQR().topRows(k2).triangularView<Eigen::Upper>());
      above = tensor_from_matrix(q).reshaped({kdim, dd, k2});
    }
    out.sites[static_cast<size_t>(2 * b + 1)] = below;
    out.sites[static_cast<size_t>(2 * b + 2)] = above;
    out.last_sweep_discarded.push_back(split.discarded);
    out.total_discarded_weight += split.discarded;
    out.total_cross_weight += split.cross_discarded;

    past = past_step(past, below, above);
  }
  out.sites[static_cast<size_t>(2 * m + 1)] = pin_site(d);
  return out;
}

cplx no_intervention_norm(const TemporalMPS& pt) {
  Tensor v = Tensor::scalar(1.0).reshaped({1});
  // contract the two legs of each step against each other
  for (Index t = 0; t < pt.depth; ++t) {
    const Tensor& a = pt.sites[static_cast<size_t>(2 * t)];
    const Tensor& b = pt.sites[static_cast<size_t>(2 * t + 1)];
    Tensor va = contract(v, {0}, a, {0});       // (phys, bond)
    v = contract(va, {0, 1}, b, {1, 0});        // (bond)
  }
  return v[0];
}

BondEnvironments bond_environments(const TemporalMPS& pt, Index bond_index) {
  const Index n_sites = pt.site_count();
  if (bond_index < 1 || bond_index >= n_sites)
    throw std::invalid_argument("bond_environments: bond index out of range");
  const Index d = local_dim_from_leg(leg_dim_of(pt));
  const Tensor pin = vectorized_identity(d);

  BondEnvironments env;
  {  // past: everything below the bond
    Tensor v = Tensor::scalar(1.0).reshaped({1});
    Index k = 0;
    while (k + 1 < bond_index) {  // whole step pairs
      Tensor va = contract(v, {0}, pt.sites[static_cast<size_t>(k)], {0});
      v = contract(va, {0, 1}, pt.sites[static_cast<size_t>(k + 1)], {1, 0});
      k += 2;
    }
    if (k < bond_index) {  // straddling pair: close this leg with the pin
      Tensor va = contract(v, {0}, pt.sites[static_cast<size_t>(k)], {0});
      v = contract(va, {0}, pin, {0});
    }
    env.past = v.data();
  }
  {  // future: everything above the bond
    Tensor v = Tensor::scalar(1.0).reshaped({1});
    Index k = n_sites - 1;
    while (k > bond_index) {  // whole step pairs, top down
      Tensor vb = contract(pt.sites[static_cast<size_t>(k)], {2}, v, {0});
      v = contract(pt.sites[static_cast<size_t>(k - 1)], {1, 2}, vb, {1, 0});
      k -= 2;
    }
    if (k == bond_index) {  // straddling pair
      Tensor vb = contract(pt.sites[static_cast<size_t>(k)], {2}, v, {0});
      v = contract(vb, {1}, pin, {0});
    }
    env.future = v.data();
  }
  return env;
}

TruncatedBond truncate_bond_normalized(const Tensor& theta,
                                       const BondEnvironments& envs,
                                       const TruncationConfig& cfg) {
  cfg.validate();
  if (theta.rank() != 4)
    throw std::invalid_argument("truncate_bond_normalized: theta must be rank 4");
  const Index chi_b = theta.extent(0);
  const Index dd = theta.extent(1);
  const Index chi_t = theta.extent(3);
  if (theta.extent(2) != dd)
    throw std::invalid_argument("truncate_bond_normalized: physical extents differ");
  if (envs.past.size() != chi_b * dd || envs.future.size() != dd * chi_t)
    throw std::invalid_argument(
        "truncate_bond_normalized: environment lengths do not match theta");

  const MatrixXc theta_m = theta.as_matrix(2);
  const SvdResult svd = svd_full(theta_m);
  // environments into the bond basis: p = U^T past, f = V^dag-conj future
  const VectorXc p = svd.left_isometry.transpose() * envs.past;
  const VectorXc f = svd.right_isometry.adjoint() * envs.future;

  GaugeFactors split = normalization_preserving_split(svd, p, f, cfg);
  const Index kdim = split.below.cols();
  TruncatedBond out;
  out.below = tensor_from_matrix(split.below).reshaped({chi_b, dd, kdim});
  out.above = tensor_from_matrix(split.above).reshaped({kdim, dd, chi_t});
  out.discarded_weight = split.discarded;
  return out;
}

TemporalMPS mirror(const TemporalMPS& pt) {
  TemporalMPS out = pt;
  out.side = pt.side == Side::Left ? Side::Right : Side::Left;
  return out;
}

}  // namespace tfcs
