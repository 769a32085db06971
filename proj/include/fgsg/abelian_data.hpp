#pragma once

#include "fgsg/contour_engine.hpp"
#include "fgsg/curve_model.hpp"
#include "fgsg/types.hpp"

namespace fgsg {

struct PeriodResiduals {
  double symmetry = 0.0;     ///< max |B - B^t|
  double min_eig_im = 0.0;   ///< smallest eigenvalue of Im B
  double real_part = 0.0;    ///< max |Re B + 1/2 diag(0, I)|
  double imag_uv = 0.0;      ///< max |Im U|, |Im V|
  double half_period = -1.0; ///< lattice distance of A(0) from eps'/2 + B eps/2 (-1: not checked)
  double riemann = -1.0;     ///< lattice distance of sum A(E_odd) from K (-1: not checked)
  double condition = 0.0;    ///< equilibrated condition number of the a-periods
};

struct PeriodData {
  int g = 0;
  int m = 0;
  CMatrix B;
  CMatrix c;  ///< omega_i = sum_p c(i, p) lambda^p dlambda / mu
  RVector U;
  RVector V;
  CVector A0;
  CVector K;
  double c0 = 0.0;      ///< +sqrt(prod(-E_i))
  int omega0_sign = -1; ///< omega_0 = sign * (c0/2) dlambda/(lambda mu) + correction
  PeriodResiduals residuals;
};

struct PeriodOptions {
  QuadratureTolerance tolerance{};
  bool check_abel = true;  ///< verify A(0) and K through the Abel map
  double invariant_tolerance = 1e-6;
};

/// B and c from monomial a- and b-periods. Throws SingularPeriodMatrix or
/// InvariantViolation (symmetry 1e-8, Im B > 0, Re B structure 1e-6).
PeriodData period_matrix(const SpectralCurve& curve, const CycleBasis& basis,
                         const QuadratureTolerance& tol = {});

/// Fills U and V. Throws InvariantViolation if they are not real to 1e-8.
void second_kind_uv(const SpectralCurve& curve, const CycleBasis& basis, PeriodData& data,
                    const QuadratureTolerance& tol = {});

/// eps'/2 + B eps/2 with eps = (1_m, 0), eps' = (0, 1_{g-m}).
CVector half_period(const CMatrix& B, int m);

/// 1/2 (1_m, nu_2) + 1/2 B (nu_1, 1_{g-m}) with nu = (1, ..., g).
CVector riemann_constants(const CMatrix& B, int m);

/// Normalized Abel map from infinity (approached along the positive real axis
/// on the sheet where mu > 0). Path: ray down to R0 = 2 max|E| + 1, up or down
/// to height Y = max|Im E| + 1 on the side of the target, across, then straight
/// to the target; shifted sideways if a leg would touch a branch point.
CVector abel_map(const SpectralCurve& curve, const PeriodData& data, const SheetPoint& target,
                 const QuadratureTolerance& tol = {});

/// Complete pipeline with every invariant checked; throws InvariantViolation.
PeriodData compute_period_data(const SpectralCurve& curve, const CycleBasis& basis,
                               const PeriodOptions& options = {});

}  // namespace fgsg
