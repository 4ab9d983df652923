#pragma once

#include "tfcs/process_tensor.hpp"

#include <array>
#include <optional>

namespace tfcs {

/// Moment-generating function Z(lambda, n) sampled on a lambda grid.
struct FcsTable {
  Index depth = 0;
  std::vector<double> lambdas;
  std::vector<cplx> values;
};

/// P(q, n) over integer transferred charge q in [-depth, depth], plus the
/// truncation-quality diagnostics of the Fourier inversion.
struct ChargeDistribution {
  Index depth = 0;
  std::vector<double> probabilities;  // index q + depth
  double max_imag_residual = 0.0;
  double min_probability = 0.0;

  double probability(Index q) const {
    return probabilities.at(static_cast<size_t>(q + depth));
  }
  double sum() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
  }
};

struct CumulantEntry {
  Index depth = 0;
  std::array<double, 6> kappa{};  // kappa_1 .. kappa_6
  std::optional<double> g4;       // kappa_4 / kappa_2^2, absent if kappa_2 ~ 0
  std::optional<double> g6;       // kappa_6 / kappa_2^3
};

using CumulantSeries = std::vector<CumulantEntry>;

/// Z(lambda, n): the central column of n tilted gates contracted between the
/// left and right process tensors.
cplx mgf(const TemporalMPS& left, const TemporalMPS& right,
         const TwoSiteGate& gate, const ChargeConvention& conv, double lambda);

/// Z on the uniform grid lambda_k = 2 pi k / n_points. n_points must resolve
/// the charge support, n_points >= 2 depth + 1. With
/// exploit_conjugate_symmetry only the first half is contracted and the rest
/// filled via Z(2 pi - lambda) = conj Z(lambda).
FcsTable mgf_grid(const TemporalMPS& left, const TemporalMPS& right,
                  const TwoSiteGate& gate, const ChargeConvention& conv,
                  Index n_points, Index threads = 1,
                  bool exploit_conjugate_symmetry = false);

/// Discrete inverse Fourier transform of the table. Imaginary residues and
/// negative values are recorded as diagnostics, not clipped.
ChargeDistribution charge_distribution(const FcsTable& table);

/// Moments m_r = sum_q q^r P(q) for r <= 6 converted through the
/// moment-cumulant recursion (no symmetry assumed).
CumulantEntry cumulants_from_distribution(const ChargeDistribution& dist);

struct LocalCorrelator {
  double value = 0.0;
  double imag_residual = 0.0;
};

/// <O(n) O(0)> for a single-site observable at the interface. The insertion
/// at time zero precedes the first environment gate, so process tensors of
/// depth n+1 are required; the step-1 slot carries the superoperator of O on
/// the left wire, the remaining n slots the untilted gate, and O is applied
/// once more after the last gate.
LocalCorrelator local_correlator(const TemporalMPS& left,
                                 const TemporalMPS& right,
                                 const TwoSiteGate& gate,
                                 const MatrixXc& observable, Index n);

}  // namespace tfcs
