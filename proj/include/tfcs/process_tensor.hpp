#pragma once

#include "tfcs/circuit.hpp"
#include "tfcs/errors.hpp"

namespace tfcs {

enum class Side { Left, Right };

enum class CrossBlockMode { ZeroCrossBlocks, KeepCrossBlocks };

/// Plain truncated SVD without the gauge step violates the no-intervention
/// normalization; it is kept selectable as a diagnostic negative control.
enum class TruncationScheme { NormPreserving, PlainSvd };

struct TruncationConfig {
  Index chi_max = 64;
  /// Relative singular-value threshold, measured against the largest
  /// singular value of the full bond spectrum.
  double cutoff = 1e-12;
  CrossBlockMode cross_block_mode = CrossBlockMode::ZeroCrossBlocks;

  void validate() const {
    if (chi_max < 2) throw ConfigError("TruncationConfig: chi_max must be >= 2");
    if (cutoff < 0) throw ConfigError("TruncationConfig: negative cutoff");
  }
};

struct DegenerateEnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Temporal MPS representation of a left or right process tensor (influence
/// matrix) at a given circuit depth.
///
/// Sites run bottom (earliest) to top (latest), one rank-3 tensor
/// (bond-below, physical d^2, bond-above) per physical leg. Time step t
/// (1-based) owns two consecutive legs:
///   site 2t-2: the state handed to the interface gate at step t,
///   site 2t-1: the state returned by the interface gate at step t.
/// The bottom site is the initial infinite-temperature pin |I_1); the top
/// site is the light-cone trace cap (I_1|. The no-intervention closure
/// contracts the two legs of each step with each other and must give 1.
struct TemporalMPS {
  Side side = Side::Left;
  Index depth = 0;
  std::vector<Tensor> sites;
  GateParams gate_params;
  TruncationConfig trunc_config;

  /// Singular-value weight removed at each truncated bond of the most
  /// recent growth sweep, bottom to top.
  std::vector<double> last_sweep_discarded;
  double total_discarded_weight = 0.0;
  /// Norm of the cross blocks dropped under ZeroCrossBlocks (diagnostic).
  double total_cross_weight = 0.0;

  Index site_count() const { return static_cast<Index>(sites.size()); }
  /// Bond extents between consecutive sites (length 2*depth - 1).
  std::vector<Index> chi_profile() const;
  Index max_bond() const;
};

/// Environment vectors of a bond against the no-intervention closure:
/// `future` contracts everything above the bond, `past` everything below.
/// The closure identity reads sum_k future[k] * past[k] = 1 (a straight
/// contraction, no conjugation).
struct BondEnvironments {
  VectorXc future;
  VectorXc past;

  cplx overlap() const { return (future.array() * past.array()).sum(); }
  cplx overlap(const Eigen::VectorXd& bond_weights) const {
    return (future.array() * bond_weights.array().cast<cplx>() *
            past.array())
        .sum();
  }
};

struct TruncatedBond {
  Tensor below;   // (bond-below, d^2, k)
  Tensor above;   // (k, d^2, bond-above)
  double discarded_weight = 0.0;
};

/// Depth-1 process tensor: the initial pin and the light-cone cap; exact,
/// all bonds trivial.
TemporalMPS init_process_tensor(const FoldedGate& gate, Side side,
                                const GateParams& params,
                                const TruncationConfig& cfg);

/// One light-cone growth step, depth n -> n+1: a spatial layer of folded
/// gates applied transversally across consecutive site pairs, new pin and
/// cap appended, every new bond compressed with the normalization-preserving
/// truncation, sweeping bottom to top.
TemporalMPS grow(const TemporalMPS& pt, const FoldedGate& gate,
                 const TruncationConfig& cfg,
                 TruncationScheme scheme = TruncationScheme::NormPreserving);

/// Contraction of the process tensor against the no-intervention closure;
/// equals 1 for a trace-preserving environment, truncated or not.
cplx no_intervention_norm(const TemporalMPS& pt);

/// Environments of bond `bond_index` (1-based, between sites k-1 and k) of a
/// finished process tensor. For bonds inside a time step the straddling
/// closure pair is closed with pins on both halves, which is also
/// trace-preserving.
BondEnvironments bond_environments(const TemporalMPS& pt, Index bond_index);

/// The normalization-preserving two-site split. theta has legs
/// (bond-below, d^2, d^2, bond-above) and is cut between the two physical
/// legs. Steps:
///   1. exact SVD theta = A Lambda B^dag across the bond;
///   2. gauge unitaries from the environments expressed in the new bond
///      basis, W_f future-aligning and W_p past-aligning, so that in the
///      gauged basis the no-intervention overlap reads
///      e1^T M e1 * |f| * |p|  with  M = conj(W_p) Lambda W_f^dag;
///   3. the (1,1) element of M is kept exactly; the trailing block is
///      SVD-truncated to rank <= chi_max - 1; the cross blocks M[0,1:],
///      M[1:,0] are zeroed or kept exactly per cfg.cross_block_mode;
///   4. the rank-(k+1) factorization is reassembled and the gauge unitaries
///      absorbed back into the site tensors.
/// The overlap carried by the bond is preserved exactly by construction.
TruncatedBond truncate_bond_normalized(const Tensor& theta,
                                       const BondEnvironments& envs,
                                       const TruncationConfig& cfg);

/// Side-flipped view of a process tensor. For a swap-symmetric gate the
/// mirrored network is identical, so the tensors carry over unchanged.
TemporalMPS mirror(const TemporalMPS& pt);

}  // namespace tfcs
