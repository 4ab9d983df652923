#include "tfcs/fcs.hpp"

#include <atomic>
#include <numbers>
#include <thread>

namespace tfcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_compatible(const TemporalMPS& left, const TemporalMPS& right,
                      const TwoSiteGate& gate) {
  if (left.side != Side::Left || right.side != Side::Right)
    throw IncompatibleTensorsError("mgf: tensors passed on the wrong sides");
  if (left.depth != right.depth)
    throw IncompatibleTensorsError("mgf: process tensors have unequal depth");
  if (!(left.gate_params == right.gate_params) ||
      !(left.gate_params == gate.params))
    throw IncompatibleTensorsError("mgf: gate parameters differ");
}

/// One rung of the two-sided ladder: absorb the in-legs of both process
/// tensors, the folded central gate, then the out-legs.
Tensor ladder_step(const Tensor& transfer, const Tensor& la, const Tensor& lb,
                   const Tensor& ra, const Tensor& rb, const Tensor& gate,
                   const MatrixXc* top_insertion) {
  // transfer (l, r) x la (l, inL, l') -> (r, inL, l')
  Tensor t1 = contract(transfer, {0}, la, {0});
  // x ra (r, inR, r') -> (inL, l', inR, r')
  Tensor t2 = contract(t1, {0}, ra, {0});
  // x gate (inL, inR, outL, outR) -> (l', r', outL, outR)
  Tensor t3 = contract(t2, {0, 2}, gate, {0, 1});
  if (top_insertion) {
    const Index dd = top_insertion->rows();
    Tensor op({dd, dd});
    Eigen::Map<RowMatrixX<cplx>>(op.data().data(), dd, dd) = *top_insertion;
    t3 = contract(t3, {2}, op, {1});  // (l', r', outR, outL')
    t3 = t3.permuted({0, 1, 3, 2});
  }
  // x lb (l', outL, l'') -> (r', outR, l'')
  Tensor t4 = contract(t3, {0, 2}, lb, {0, 1});
  // x rb (r', outR, r'') -> (l'', r'')
  return contract(t4, {0, 1}, rb, {0, 1});
}

Tensor unit_transfer() {
  Tensor t({1, 1});
  t[0] = 1.0;
  return t;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

cplx mgf(const TemporalMPS& left, const TemporalMPS& right,
         const TwoSiteGate& gate, const ChargeConvention& conv,
         double lambda) {
  check_compatible(left, right, gate);
  const FoldedGate tilted = build_tilted_gate(gate, conv, lambda);
  Tensor transfer = unit_transfer();
  for (Index t = 0; t < left.depth; ++t) {
    transfer = ladder_step(transfer, left.sites[static_cast<size_t>(2 * t)],
                           left.sites[static_cast<size_t>(2 * t + 1)],
                           right.sites[static_cast<size_t>(2 * t)],
                           right.sites[static_cast<size_t>(2 * t + 1)],
                           tilted.tensor, nullptr);
  }
  return transfer[0];
}

FcsTable mgf_grid(const TemporalMPS& left, const TemporalMPS& right,
                  const TwoSiteGate& gate, const ChargeConvention& conv,
                  Index n_points, Index threads,
                  bool exploit_conjugate_symmetry) {
  check_compatible(left, right, gate);
  if (n_points < 2 * left.depth + 1)
    throw ConfigError(
        "mgf_grid: n_points below 2*depth+1 aliases the charge support");

  FcsTable table;
  table.depth = left.depth;
  table.lambdas.resize(static_cast<size_t>(n_points));
  table.values.resize(static_cast<size_t>(n_points));
  for (Index k = 0; k < n_points; ++k)
    table.lambdas[static_cast<size_t>(k)] = kTwoPi * k / n_points;

  // With the symmetry shortcut only k <= n_points/2 is contracted.
  const Index evaluated =
      exploit_conjugate_symmetry ? n_points / 2 + 1 : n_points;

  const Index workers =
      std::max<Index>(1, std::min<Index>(threads, evaluated));
  std::vector<std::thread> pool;
  std::atomic<Index> next{0};
  auto work = [&]() {
    for (;;) {
      const Index k = next.fetch_add(1);
      if (k >= evaluated) return;
      table.values[static_cast<size_t>(k)] =
          mgf(left, right, gate, conv, table.lambdas[static_cast<size_t>(k)]);
    }
  };
  if (workers == 1) {
    work();
  } else {
    for (Index w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  if (exploit_conjugate_symmetry)
    for (Index k = evaluated; k < n_points; ++k)
      table.values[static_cast<size_t>(k)] =
          std::conj(table.values[static_cast<size_t>(n_points - k)]);
  return table;
}

ChargeDistribution charge_distribution(const FcsTable& table) {
  const Index points = static_cast<Index>(table.lambdas.size());
  if (points < 2 * table.depth + 1)
    throw ConfigError("charge_distribution: grid aliases the charge support");
  for (Index k = 0; k < points; ++k)
    if (std::abs(table.lambdas[static_cast<size_t>(k)] - kTwoPi * k / points) >
        1e-12)
      throw ConfigError("charge_distribution: grid is not the uniform "
                        "Fourier grid on [0, 2 pi)");

  ChargeDistribution dist;
  dist.depth = table.depth;
  dist.probabilities.resize(static_cast<size_t>(2 * table.depth + 1));
  dist.min_probability = std::numeric_limits<double>::infinity();
  for (Index q = -table.depth; q <= table.depth; ++q) {
    cplx p = 0.0;
    for (Index k = 0; k < points; ++k)
      p += table.values[static_cast<size_t>(k)] *
           std::exp(cplx(0.0, -table.lambdas[static_cast<size_t>(k)] * q));
    p /= static_cast<double>(points);
    dist.probabilities[static_cast<size_t>(q + table.depth)] = p.real();
    dist.max_imag_residual = std::max(dist.max_imag_residual, std::abs(p.imag()));
    dist.min_probability = std::min(dist.min_probability, p.real());
  }
  return dist;
}

CumulantEntry cumulants_from_distribution(const ChargeDistribution& dist) {
  std::array<double, 7> moments{};  // moments[r] = sum q^r P(q)
  moments[0] = dist.sum();
  for (Index q = -dist.depth; q <= dist.depth; ++q) {
    double qp = static_cast<double>(q);
    const double p = dist.probability(q);
    for (int r = 1; r <= 6; ++r) {
      moments[static_cast<size_t>(r)] += qp * p;
      qp *= static_cast<double>(q);
    }
  }

  CumulantEntry entry;
  entry.depth = dist.depth;
  std::array<double, 7> kappa{};
  for (int r = 1; r <= 6; ++r) {
    double k = moments[static_cast<size_t>(r)];
    for (int s = 1; s < r; ++s)
      k -= binomial(r - 1, s - 1) * kappa[static_cast<size_t>(s)] *
           moments[static_cast<size_t>(r - s)];
    kappa[static_cast<size_t>(r)] = k;
    entry.kappa[static_cast<size_t>(r - 1)] = k;
  }
  const double k2 = kappa[2];
  if (k2 > 1e-12) {
    entry.g4 = kappa[4] / (k2 * k2);
    entry.g6 = kappa[6] / (k2 * k2 * k2);
  }
  return entry;
}

LocalCorrelator local_correlator(const TemporalMPS& left,
                                 const TemporalMPS& right,
                                 const TwoSiteGate& gate,
                                 const MatrixXc& observable, Index n) {
  if (n < 0) throw std::invalid_argument("local_correlator: negative depth");
  const Index d = gate.dim();
  if (observable.rows() != d || observable.cols() != d)
    throw std::invalid_argument("local_correlator: observable dimension");
  if ((observable - observable.adjoint()).norm() > 1e-12)
    throw std::invalid_argument("local_correlator: observable not Hermitian");

  if (n == 0) {
    const double v = (observable * observable).real().trace() /
                     static_cast<double>(d);
    return LocalCorrelator{v, 0.0};
  }

  check_compatible(left, right, gate);
  if (left.depth != n + 1)
    throw IncompatibleTensorsError(
        "local_correlator: an n-step correlator needs depth n+1 process "
        "tensors (the time-0 insertion precedes the first environment gate)");

  const FoldedGate folded = fold_gate(gate);
  const MatrixXc op = left_multiply_superop(observable);

  // slot 1: O on the left wire, identity on the right wire
  Tensor transfer = unit_transfer();
  {
    Tensor t1 = contract(transfer, {0}, left.sites[0], {0});  // (r, a1, l')
    Tensor opt({d * d, d * d});
    Eigen::Map<RowMatrixX<cplx>>(opt.data().data(), d * d, d * d) = op;
    Tensor t2 = contract(t1, {1}, opt, {1});                  // (r, l', out)
    Tensor t3 = contract(t2, {1, 2}, left.sites[1], {0, 1});  // (r, l'')
    Tensor t4 = contract(t3, {0}, right.sites[0], {0});       // (l'', a1r, r')
    transfer = contract(t4, {1, 2}, right.sites[1], {1, 0});  // (l'', r'')
  }

  for (Index t = 1; t <= n; ++t) {
    const MatrixXc* top = (t == n) ? &op : nullptr;
    transfer = ladder_step(transfer, left.sites[static_cast<size_t>(2 * t)],
                           left.sites[static_cast<size_t>(2 * t + 1)],
                           right.sites[static_cast<size_t>(2 * t)],
                           right.sites[static_cast<size_t>(2 * t + 1)],
                           folded.tensor, top);
  }
  const cplx v = transfer[0];
  return LocalCorrelator{v.real(), std::abs(v.imag())};
}

}  // namespace tfcs
