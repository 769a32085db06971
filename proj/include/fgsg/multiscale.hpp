#pragma once

#include <vector>

#include "fgsg/abelian_data.hpp"
#include "fgsg/contour_engine.hpp"
#include "fgsg/curve_model.hpp"

namespace fgsg {

/// Cycles of Gamma(k): a_j, b_j of the base basis scaled by k^{j-1} (j <= m)
/// or k^m (j > m). Throws GeometryConflict if clearance is lost.
CycleBasis scaled_cycle_basis(const SpectralCurve& base, const CycleBasis& base_basis, double k);

/// diag(tau_1, ..., tau_m, B_2) from the component curves.
CMatrix b_infinity(const SpectralCurve& base, const QuadratureTolerance& tol = {});

struct SweepEntry {
  double k = 1.0;
  CMatrix B;
  double deviation = 0.0;    ///< max |B(k) - B_inf|
  double off_diagonal = 0.0; ///< max |B(k)_{ij}| over entries outside the diagonal blocks
  double real_part = 0.0;    ///< Re B structure residual
};

struct MultiscaleSweep {
  std::vector<SweepEntry> entries;
  CMatrix b_inf;
};

struct SweepOptions {
  QuadratureTolerance tolerance{};
  bool enforce_monotone = true;
  double noise_floor = 1e-8;  ///< deviations below this count as converged
};

/// B(k) for each k (ascending, first entry 1). Throws NonMonotoneConvergence
/// with the full table when deviations do not strictly decrease.
MultiscaleSweep convergence_sweep(const SpectralCurve& base, const std::vector<double>& ks,
                                  const SweepOptions& options = {});

void require_monotone(const MultiscaleSweep& sweep, double noise_floor = 1e-8);

}  // namespace fgsg
