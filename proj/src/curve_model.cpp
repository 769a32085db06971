#include "fgsg/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fgsg/errors.hpp"

namespace fgsg {
namespace {

constexpr double kPairTolerance = 1e-12;

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

}  // namespace

std::vector<Complex> SpectralCurve::finite_branch_points() const {
  std::vector<Complex> out;
  out.reserve(points_.size() + 1);
  out.push_back(Complex{0.0, 0.0});
  out.insert(out.end(), points_.begin(), points_.end());
  return out;
}

Complex SpectralCurve::mu_squared(Complex lambda) const {
  Complex v = lambda;
  for (const auto& e : points_) v *= (lambda - e);
  return v;
}

double SpectralCurve::mu_squared_real(double lambda) const {
  double v = lambda;
  const int m2 = 2 * m_;
  for (int i = 0; i < m2; ++i) v *= (lambda - points_[i].real());
  for (std::size_t i = m2; i < points_.size(); i += 2) v *= std::norm(Complex{lambda, 0.0} - points_[i]);
  return v;
}

double SpectralCurve::min_separation() const {
  const auto pts = finite_branch_points();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

SheetPoint point_on_sheet(const SpectralCurve& curve, Complex lambda, int sheet) {
  const Complex root = std::sqrt(curve.mu_squared(lambda));
  return {lambda, sheet >= 0 ? root : -root};
}

void check_on_curve(const SpectralCurve& curve, const SheetPoint& p) {
  const Complex expect = curve.mu_squared(p.lambda);
  const Complex got = p.mu * p.mu;
  const double scale = std::max({std::abs(expect), std::abs(got), 1e-300});
  if (std::abs(expect - got) > 1e-10 * scale)
    throw Error(ErrorKind::InvalidInput, "point " + describe(p.lambda) + " is not on the curve");
}

SpectralCurve build_curve(std::span<const Complex> E) {
  if (E.empty() || E.size() % 2 != 0)
    throw Error(ErrorKind::InvalidInput, "need 2g >= 2 branch points, got " + std::to_string(E.size()));

  double scale = 0.0;
  for (const auto& e : E) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw Error(ErrorKind::InvalidInput, "non-finite branch point");
    scale = std::max(scale, std::abs(e));
  }

  for (const auto& e : E)
    if (std::abs(e) <= kPairTolerance * scale || e == Complex{})
      throw Error(ErrorKind::ZeroPoint, "branch point " + describe(e) + " coincides with 0");

  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j)
      if (std::abs(E[i] - E[j]) <= kPairTolerance * scale)
        throw Error(ErrorKind::DuplicatePoint, "branch point " + describe(E[i]) + " repeated");

  std::vector<double> reals;
  std::vector<Complex> upper, lower;
  for (const auto& e : E) {
    if (std::abs(e.imag()) <= kPairTolerance * std::abs(e)) {
      if (e.real() > 0.0)
        throw Error(ErrorKind::PositiveRealPoint, "real branch point " + describe(e) + " must be negative");
      reals.push_back(e.real());
    } else if (e.imag() > 0.0) {
      upper.push_back(e);
    } else {
      lower.push_back(e);
    }
  }

  // Match each upper point with the nearest unused conjugate of a lower one.
  std::vector<Complex> pairs;
  std::vector<bool> used(lower.size(), false);
  for (const auto& w : upper) {
    std::size_t best = lower.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(w - std::conj(lower[j]));
      if (d < best_d) { best_d = d; best = j; }
    }
    if (best == lower.size() || best_d > kPairTolerance * std::max(1.0, std::abs(w)))
      throw Error(ErrorKind::UnpairedComplexPoint, "no conjugate for " + describe(w));
    used[best] = true;
    pairs.push_back(0.5 * (w + std::conj(lower[best])));
  }
  if (pairs.size() != lower.size()) {
    for (std::size_t j = 0; j < lower.size(); ++j)
      if (!used[j]) throw Error(ErrorKind::UnpairedComplexPoint, "no conjugate for " + describe(lower[j]));
  }

  std::sort(reals.begin(), reals.end(), std::greater<>());
  std::sort(pairs.begin(), pairs.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  SpectralCurve c;
  c.m_ = static_cast<int>(reals.size() / 2);
  for (double r : reals) c.points_.emplace_back(r, 0.0);
  for (const auto& w : pairs) {
    c.points_.push_back(w);
    c.points_.push_back(std::conj(w));
  }
  return c;
}

SpectralCurve deformed_curve(const SpectralCurve& base, double k) {
  if (!(k >= 1.0) || !std::isfinite(k))
    throw Error(ErrorKind::InvalidInput, "deformation parameter k must be a finite real >= 1");
  const int g = base.genus();
  const int m = base.real_pairs();
  std::vector<Complex> E;
  E.reserve(2 * g);
  for (int i = 1; i <= m; ++i) {
    const double f = std::pow(k, i - 1);
    E.push_back(f * base.E(2 * i - 1));
    E.push_back(f * base.E(2 * i));
  }
  const double fm = std::pow(k, m);
  for (int i = 2 * m + 1; i <= 2 * g; ++i) E.push_back(fm * base.E(i));
  return build_curve(E);
}

std::vector<ComponentCurve> component_curves(const SpectralCurve& base) {
  const int g = base.genus();
  const int m = base.real_pairs();
  std::vector<ComponentCurve> out;
  for (int j = 1; j <= m; ++j) {
    const Complex roots[2] = {base.E(2 * j - 1), base.E(2 * j)};
    out.push_back({ComponentCurve::Kind::Elliptic, build_curve(roots)});
  }
  if (g > m) {
    std::vector<Complex> roots(base.branch_points().begin() + 2 * m, base.branch_points().end());
    out.push_back({ComponentCurve::Kind::Hyperelliptic, build_curve(roots)});
  }
  return out;
}

}  // namespace fgsg
