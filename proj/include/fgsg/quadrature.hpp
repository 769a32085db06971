#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fgsg/types.hpp"

namespace fgsg {

/// Acceptance rule per component: err <= max(abs * min(1, L1), rel * L1),
/// where L1 is the integral of |f|. Keeps scaled contours meaningful.
struct QuadratureTolerance {
  double abs = 1e-10;
  double rel = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  std::vector<Complex> value;
  std::vector<double> error;
  std::vector<double> l1;
};

/// Fills out[0..n) with the integrand components at parameter t.
using VectorIntegrand = std::function<void(double t, std::span<Complex> out)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b], bisecting the interval
/// with the worst error. Throws ToleranceNotMet when the interval budget is
/// exhausted. Deterministic for a fixed integrand.
QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t n, double a, double b,
                                    const QuadratureTolerance& tol = {});

}  // namespace fgsg
