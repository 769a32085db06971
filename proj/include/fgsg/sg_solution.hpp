#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "fgsg/abelian_data.hpp"
#include "fgsg/theta_engine.hpp"

namespace fgsg {

/// Topological type s in {-1, +1}^m plus torus coordinate x0 in [0,1)^g.
struct TorusPoint {
  std::vector<int> s;
  RVector x0;
};

/// Validates s (length m, entries +-1) and x0 (length g, entries in [0,1)).
TorusPoint make_torus_point(int g, int m, std::vector<int> s, RVector x0);

/// "+-+" style sign string.
std::vector<int> parse_signs(std::string_view text);

/// All 2^m topological types in binary order, "+" before "-".
std::vector<std::vector<int>> all_types(int m);

struct SolutionOptions {
  double theta_tolerance = 1e-12;
  double divisor_threshold = 1e-8;
  double probe_x = 0.37;
  double probe_t = 0.23;
  double pde_step = 1e-3;
  int max_refinement_depth = 16;
};

class SolutionContext {
 public:
  SolutionContext(SpectralCurve curve, PeriodData periods, const SolutionOptions& options = {});

  const SpectralCurve& curve() const { return curve_; }
  const PeriodData& periods() const { return periods_; }
  const ThetaContext& theta() const { return *theta_; }
  const SolutionOptions& options() const { return options_; }
  int genus() const { return periods_.g; }
  int real_pairs() const { return periods_.m; }

  /// The positive-real-part root exp(pi i eps^t B eps / 2); the selected C1 is +- this.
  Complex c1_root() const { return c1_root_; }

  /// z = -x0 - B (s/4, 1/2) - K + x (V - U)/4 - t (U + V)/4.
  CVector z_of_xt(const TorusPoint& tp, double x, double t) const;

  /// theta(A0 + z) theta(-A0 + z) / theta(z)^2, without C1. Throws NearDivisor.
  Complex theta_quotient(const CVector& z) const;

 private:
  SpectralCurve curve_;
  PeriodData periods_;
  SolutionOptions options_;
  std::shared_ptr<const ThetaContext> theta_;
  Complex c1_root_;
};

struct C1Selection {
  int sign = 1;
  double chosen_residual = 0.0;
  double rejected_residual = 0.0;
};

/// Picks the root of C1 with the smaller PDE residual at the probe point.
/// Throws AmbiguousSign when the residuals are within a factor 10.
C1Selection select_c1(const SolutionContext& ctx, const TorusPoint& tp);

/// A solution u(x, t) on a fixed real torus, with C1 selected.
class Solution {
 public:
  Solution(const SolutionContext& ctx, TorusPoint tp);
  Solution(const SolutionContext& ctx, TorusPoint tp, int c1_sign);

  const SolutionContext& context() const { return *ctx_; }
  const TorusPoint& torus_point() const { return tp_; }
  const C1Selection& selection() const { return selection_; }
  Complex c1() const { return static_cast<double>(selection_.sign) * ctx_->c1_root(); }

  CVector z(double x, double t) const { return ctx_->z_of_xt(tp_, x, t); }
  Complex e_iu(double x, double t) const;

  /// Continuous u along the samples, u(first) in (-pi, pi]. Gaps are refined
  /// by bisection until each phase step is below pi/4; UnwrapGap if a step
  /// stays at or above pi/2 at the depth cap.
  std::vector<double> u_along_path(const std::vector<std::pair<double, double>>& samples) const;

  /// |u_tt - u_xx + sin u| by central differences on the 5-point stencil.
  double pde_residual(double x, double t, double h) const;
  double pde_residual(double x, double t) const { return pde_residual(x, t, ctx_->options().pde_step); }

  /// Step in x keeping the theta-argument increment below 0.05 per sample.
  double default_x_step() const;

 private:
  const SolutionContext* ctx_;
  TorusPoint tp_;
  C1Selection selection_;
};

double pde_residual_with(const SolutionContext& ctx, const TorusPoint& tp, Complex c1, double x, double t, double h);

struct GridSpec {
  double x0, x1, dx;
  double t0, t1, dt;
};

struct GridSample {
  double x, t;
  Complex e_iu;
  double u;
};

/// Row-major samples (t outer, x inner). u is unwrapped along t at x = x0 and
/// then along each row; rows are evaluated in parallel.
std::vector<GridSample> evaluate_grid(const Solution& sol, const GridSpec& grid);

/// Number of points in start:stop:step (inclusive of stop up to rounding).
std::size_t range_count(double start, double stop, double step);

}  // namespace fgsg
