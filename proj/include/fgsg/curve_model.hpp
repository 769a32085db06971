#pragma once

#include <span>
#include <vector>

#include "fgsg/types.hpp"

namespace fgsg {

/// Real hyperelliptic curve mu^2 = lambda * prod_i (lambda - E_i).
///
/// Branch points are kept in canonical order: the 2m real points first,
/// strictly descending and negative (0 > E_1 > ... > E_2m), then the g-m
/// conjugate pairs with the positive-imaginary member first. Pairs are
/// sorted by real part, then imaginary part. Conjugate pairs are stored
/// exactly symmetric.
class SpectralCurve {
 public:
  int genus() const { return static_cast<int>(points_.size() / 2); }
  int real_pairs() const { return m_; }

  /// E_1..E_2g in canonical order (0-based storage).
  std::span<const Complex> branch_points() const { return points_; }

  /// 1-based access matching the usual E_i indexing.
  Complex E(int i) const { return points_.at(static_cast<std::size_t>(i - 1)); }

  /// {0, E_1, ..., E_2g}: every finite branch point.
  std::vector<Complex> finite_branch_points() const;

  Complex mu_squared(Complex lambda) const;

  /// mu^2 evaluated with real arithmetic; exact sign on the real axis.
  double mu_squared_real(double lambda) const;

  /// Smallest distance between two distinct finite branch points.
  double min_separation() const;

  bool operator==(const SpectralCurve&) const = default;

 private:
  friend SpectralCurve build_curve(std::span<const Complex> E);
  std::vector<Complex> points_;
  int m_ = 0;
};

/// A point (lambda, mu) on the curve.
struct SheetPoint {
  Complex lambda;
  Complex mu;
};

/// Point over lambda with mu = sheet * principal_sqrt(mu^2).
SheetPoint point_on_sheet(const SpectralCurve& curve, Complex lambda, int sheet);

/// Throws InvalidInput unless mu^2 matches the curve to relative 1e-10.
void check_on_curve(const SpectralCurve& curve, const SheetPoint& p);

struct ComponentCurve {
  enum class Kind { Elliptic, Hyperelliptic };
  Kind kind;
  /// Component as a curve in its own right: P_j(x) = x * prod (x - roots).
  SpectralCurve curve;
};

SpectralCurve build_curve(std::span<const Complex> E);
SpectralCurve deformed_curve(const SpectralCurve& base, double k);
std::vector<ComponentCurve> component_curves(const SpectralCurve& base);

}  // namespace fgsg
