#include "fgsg/theta_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fgsg/errors.hpp"

namespace fgsg {

double upper_incomplete_gamma_half(int twice_a, double x) {
  if (twice_a < 1) throw Error(ErrorKind::InvalidInput, "incomplete gamma needs a >= 1/2");
  double a;
  double value;
  if (twice_a % 2 == 1) {
    a = 0.5;
    value = std::sqrt(kPi) * std::erfc(std::sqrt(x));
  } else {
    a = 1.0;
    value = std::exp(-x);
  }
  // Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}
  while (2.0 * a < twice_a - 0.5) {
    value = a * value + std::pow(x, a) * std::exp(-x);
    a += 1.0;
  }
  return value;
}

ThetaContext::ThetaContext(const CMatrix& B, double tolerance, std::optional<double> radius)
    : B_(B), tol_(tolerance) {
  const Eigen::Index g = B.rows();
  if (g == 0 || B.cols() != g) throw Error(ErrorKind::InvalidInput, "Riemann matrix must be square");
  Y_ = 0.5 * (B.imag() + B.imag().transpose());
  Eigen::LLT<RMatrix> llt(kPi * Y_);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidInput, "Im B is not positive definite");
  T_ = llt.matrixU();
  Yinv_ = Y_.inverse();

  // Shortest nonzero lattice vector of T.
  double r0 = T_.col(0).norm();
  for (Eigen::Index k = 1; k < g; ++k) r0 = std::min(r0, T_.col(k).norm());
  rho_ = r0;
  radius_ = r0 * (1.0 + 1e-12);
  enumerate(RVector::Zero(g), [&](const IVector& n, double len2) {
    if (n.cwiseAbs().maxCoeff() != 0) rho_ = std::min(rho_, std::sqrt(len2));
  });

  if (radius) {
    radius_ = *radius;
  } else {
    double r = 0.5 * (std::sqrt(static_cast<double>(g)) + rho_);
    while (std::max(tail_bound(r), gradient_tail_bound(r)) > tol_) r += 0.05;
    radius_ = 1.2 * r;
  }
  const double pts = estimated_points();
  if (pts > 1e8) {
    std::ostringstream os;
    os << "theta truncation needs about " << pts << " lattice points (radius " << radius_
       << ", shortest vector " << rho_ << ")";
    throw Error(ErrorKind::LatticeBlowup, os.str());
  }
}

double ThetaContext::tail_bound(double r) const {
  const int g = genus();
  const double x = r - 0.5 * rho_;
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * g * std::pow(2.0 / rho_, g) * upper_incomplete_gamma_half(g, x * x);
}

double ThetaContext::gradient_tail_bound(double r) const {
  // |n_k| <= |T^{-1}| |T(n + y0)| + 1 and |T(n + y0)| <= s + rho/2 on the shell s.
  const int g = genus();
  const double x = r - 0.5 * rho_;
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<RMatrix> svd(T_);
  const double inv_norm = 1.0 / svd.singularValues().minCoeff();
  const double pre = 0.5 * g * std::pow(2.0 / rho_, g);
  const double g0 = upper_incomplete_gamma_half(g, x * x);
  const double g1 = upper_incomplete_gamma_half(g + 1, x * x);
  return 2.0 * kPi * pre * (inv_norm * (g1 + 0.5 * rho_ * g0) + g0);
}

double ThetaContext::estimated_points() const {
  const int g = genus();
  const double r = radius_ + 0.5 * std::sqrt(static_cast<double>(g)) * T_.diagonal().maxCoeff();
  const double ball = std::pow(kPi, 0.5 * g) / std::tgamma(0.5 * g + 1.0) * std::pow(r, g);
  return ball / T_.diagonal().prod() + 1.0;
}

template <class Visit>
void ThetaContext::enumerate(const RVector& center, Visit&& visit) const {
  // All n with |T (n - center)| <= radius_, last coordinate outermost, ascending.
  const int g = genus();
  const double r2 = radius_ * radius_;
  IVector n(g);
  std::vector<double> partial(static_cast<std::size_t>(g) + 1, 0.0);
  auto rec = [&](auto&& self, int i) -> void {
    double shift = 0.0;
    for (int j = i + 1; j < g; ++j) shift += T_(i, j) * (n(j) - center(j));
    const double c = center(i) - shift / T_(i, i);
    const double room = r2 - partial[i + 1];
    if (room < 0.0) return;
    const double half = std::sqrt(room) / T_(i, i);
    const int lo = static_cast<int>(std::ceil(c - half));
    const int hi = static_cast<int>(std::floor(c + half));
    for (int k = lo; k <= hi; ++k) {
      n(i) = k;
      const double d = T_(i, i) * (k - c);
      partial[i] = partial[i + 1] + d * d;
      if (partial[i] > r2) continue;
      if (i == 0)
        visit(static_cast<const IVector&>(n), partial[0]);
      else
        self(self, i - 1);
    }
  };
  rec(rec, g - 1);
}

void ThetaContext::real_coordinates(const CVector& z, RVector& x, RVector& y) const {
  y = Yinv_ * z.imag();
  x = z.real() - B_.real() * y;
}

ReducedArgument ThetaContext::reduce(const CVector& z) const {
  ReducedArgument r;
  RVector x, y;
  real_coordinates(z, x, y);
  const RVector fy = y.array().floor();
  const RVector fx = x.array().floor();
  r.m = fy.cast<int>();
  r.n = fx.cast<int>();
  r.y0 = y - fy;
  r.x0 = x - fx;
  // Rounding can land exactly on 1.
  for (Eigen::Index i = 0; i < r.y0.size(); ++i) {
    if (r.y0(i) >= 1.0) { r.y0(i) -= 1.0; r.m(i) += 1; }
    if (r.x0(i) >= 1.0) { r.x0(i) -= 1.0; r.n(i) += 1; }
  }
  r.z0 = r.x0.cast<Complex>() + B_ * r.y0.cast<Complex>();
  const CVector mc = r.m.cast<double>().cast<Complex>();
  r.exponent = -kPi * kI * (2.0 * mc.dot(r.z0) + mc.dot(B_ * mc));
  return r;
}

Complex ThetaContext::scaled_sum(const ReducedArgument& r, CVector* gradient, double* max_term) const {
  const int g = genus();
  const double base = kPi * r.y0.dot(Y_ * r.y0);
  Complex sum{};
  if (gradient) gradient->setZero(g);
  double biggest = 0.0;
  enumerate(-r.y0, [&](const IVector& n, double) {
    const CVector nc = n.cast<double>().cast<Complex>();
    const Complex e = kPi * kI * nc.dot(B_ * nc) + 2.0 * kPi * kI * nc.dot(r.z0) - base;
    const Complex term = std::exp(e);
    sum += term;
    if (gradient) *gradient += (2.0 * kPi * kI * term) * nc;
    biggest = std::max(biggest, std::abs(term));
  });
  if (max_term) *max_term = biggest;
  return sum;
}

ThetaValue ThetaContext::theta_scaled(const CVector& z, double* max_term) const {
  const ReducedArgument r = reduce(z);
  const Complex s = scaled_sum(r, nullptr, max_term);
  return {s, r.exponent + kPi * r.y0.dot(Y_ * r.y0)};
}

ThetaGradient ThetaContext::theta_gradient_scaled(const CVector& z) const {
  const ReducedArgument r = reduce(z);
  ThetaGradient out;
  CVector grad;
  out.theta.scaled = scaled_sum(r, &grad, nullptr);
  out.theta.log_scale = r.exponent + kPi * r.y0.dot(Y_ * r.y0);
  // d/dz of exp(-pi i (2 M.z0 + M.B.M)) theta(z0)
  out.gradient = grad - 2.0 * kPi * kI * r.m.cast<double>().cast<Complex>() * out.theta.scaled;
  return out;
}

CVector ThetaContext::theta_gradient(const CVector& z) const {
  const ThetaGradient t = theta_gradient_scaled(z);
  return std::exp(t.theta.log_scale) * t.gradient;
}

Complex ThetaContext::theta_ratio(const CVector& a, const CVector& b) const {
  const ThetaValue ta = theta_scaled(a);
  const ThetaValue tb = theta_scaled(b);
  return std::exp(ta.log_scale - tb.log_scale) * ta.scaled / tb.scaled;
}

bool ThetaContext::on_divisor(const CVector& z, double threshold) const {
  const ReducedArgument r = reduce(z);
  double biggest = 0.0;
  const Complex s = scaled_sum(r, nullptr, &biggest);
  return std::abs(s) < threshold * biggest;
}

void lattice_coordinates(const CMatrix& B, const CVector& z, RVector& x, RVector& y) {
  const RMatrix Y = 0.5 * (B.imag() + B.imag().transpose());
  y = Y.ldlt().solve(z.imag());
  x = z.real() - B.real() * y;
}

double lattice_distance(const CMatrix& B, const CVector& d) {
  RVector x, y;
  lattice_coordinates(B, d, x, y);
  const double dx = (x.array() - x.array().round()).abs().maxCoeff();
  const double dy = (y.array() - y.array().round()).abs().maxCoeff();
  return std::max(dx, dy);
}

Complex theta_bruteforce(const CMatrix& B, const CVector& z, int half_width) {
  const Eigen::Index g = B.rows();
  IVector n = IVector::Constant(g, -half_width);
  Complex sum{};
  while (true) {
    const CVector nc = n.cast<double>().cast<Complex>();
    sum += std::exp(kPi * kI * nc.dot(B * nc) + 2.0 * kPi * kI * nc.dot(z));
    Eigen::Index i = 0;
    while (i < g && n(i) == half_width) n(i++) = -half_width;
    if (i == g) break;
    ++n(i);
  }
  return sum;
}

}  // namespace fgsg
