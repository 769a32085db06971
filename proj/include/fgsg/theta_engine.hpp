#pragma once

#include <optional>

#include "fgsg/types.hpp"

namespace fgsg {

/// z = z0 + N + B*M with z0 = x0 + B*y0, x0 and y0 in [0,1)^g.
/// theta(z) = exp(exponent) * theta(z0).
struct ReducedArgument {
  CVector z0;
  RVector x0;
  RVector y0;
  IVector n;
  IVector m;
  Complex exponent;
};

/// theta = exp(log_scale) * scaled, where |scaled| is of order one.
struct ThetaValue {
  Complex scaled;
  Complex log_scale;

  Complex value() const { return std::exp(log_scale) * scaled; }
};

struct ThetaGradient {
  ThetaValue theta;
  CVector gradient;  ///< same scale: grad theta = exp(log_scale) * gradient
};

/// Riemann theta function for a fixed Riemann matrix.
///
/// Terms are summed over the ellipsoid |T'(n + y0)| <= R, T' = sqrt(pi) * chol(Im B)^t,
/// in lexicographic order (last coordinate outermost). R comes from the
/// Gaussian tail bound (g/2)(2/rho)^g Gamma(g/2, (R - rho/2)^2), rho the
/// shortest vector of T', with a 1.2 safety factor; the gradient bound adds one
/// power of the radius. The error bound is absolute on the scaled value.
class ThetaContext {
 public:
  explicit ThetaContext(const CMatrix& B, double tolerance = 1e-12,
                        std::optional<double> radius = std::nullopt);

  int genus() const { return static_cast<int>(B_.rows()); }
  const CMatrix& riemann_matrix() const { return B_; }
  double tolerance() const { return tol_; }
  double radius() const { return radius_; }
  double shortest_vector() const { return rho_; }
  double estimated_points() const;

  /// Tail bound on the scaled value for a given radius (in T' units).
  double tail_bound(double radius) const;
  double gradient_tail_bound(double radius) const;

  /// Split z = x + B*y into real coordinates.
  void real_coordinates(const CVector& z, RVector& x, RVector& y) const;

  ReducedArgument reduce(const CVector& z) const;

  /// max_term (optional) receives the largest scaled term, for divisor tests.
  ThetaValue theta_scaled(const CVector& z, double* max_term = nullptr) const;
  Complex theta(const CVector& z) const { return theta_scaled(z).value(); }
  ThetaGradient theta_gradient_scaled(const CVector& z) const;
  CVector theta_gradient(const CVector& z) const;

  /// Ratio theta(a)/theta(b) without overflow.
  Complex theta_ratio(const CVector& a, const CVector& b) const;

  /// True if |theta(z)| < threshold * (largest term).
  bool on_divisor(const CVector& z, double threshold = 1e-8) const;

 private:
  template <class Visit>
  void enumerate(const RVector& center, Visit&& visit) const;
  Complex scaled_sum(const ReducedArgument& r, CVector* gradient, double* max_term) const;

  CMatrix B_;
  RMatrix Y_;
  RMatrix Yinv_;
  RMatrix T_;  // upper triangular, T^t T = pi * Im B
  double tol_;
  double rho_ = 0.0;
  double radius_ = 0.0;
};

/// Real coordinates of z = x + B*y.
void lattice_coordinates(const CMatrix& B, const CVector& z, RVector& x, RVector& y);

/// Largest distance of the real coordinates of d from integers: 0 iff d is a lattice vector.
double lattice_distance(const CMatrix& B, const CVector& d);

/// Upper incomplete gamma for a in {1/2, 1, 3/2, ...}.
double upper_incomplete_gamma_half(int twice_a, double x);

/// Plain truncated sum over the box |n_i| <= half_width (reference oracle).
Complex theta_bruteforce(const CMatrix& B, const CVector& z, int half_width);

}  // namespace fgsg
