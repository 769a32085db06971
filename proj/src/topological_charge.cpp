#include "fgsg/topological_charge.hpp"

#include <cmath>
#include <sstream>

#include "fgsg/errors.hpp"
#include "fgsg/parallel.hpp"

namespace fgsg {
namespace {

constexpr double kIntegerTolerance = 1e-3;

ChargeValue to_integer(double raw, const char* what, int j) {
  ChargeValue v;
  v.raw = raw;
  v.n = static_cast<int>(std::lround(raw));
  v.deviation = std::abs(raw - v.n);
  if (v.deviation > kIntegerTolerance) {
    std::ostringstream os;
    os << what << " for j = " << j << " is " << raw << ", not within " << kIntegerTolerance << " of an integer";
    throw Error(ErrorKind::NonInteger, os.str());
  }
  return v;
}

CVector cycle_point(const SolutionContext& ctx, const TorusPoint& tp, int j, double T) {
  CVector z = ctx.z_of_xt(tp, 0.0, 0.0);
  z(j - 1) -= T;
  return z;
}

void check_index(const SolutionContext& ctx, int j) {
  if (j < 1 || j > ctx.genus()) throw Error(ErrorKind::InvalidInput, "charge index out of range");
}

}  // namespace

WindingResult winding_of(const std::function<Complex(double)>& f) {
  for (int n = 512; n <= (1 << 16); n *= 2) {
    std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = f(static_cast<double>(k) / n);
    double total = 0.0;
    bool fine = true;
    for (int k = 0; k < n && fine; ++k) {
      const double d = std::arg(v[static_cast<std::size_t>(k) + 1] / v[static_cast<std::size_t>(k)]);
      fine = std::abs(d) < kPi / 4.0;
      total += d;
    }
    if (fine) return {total / (2.0 * kPi), n};
  }
  throw Error(ErrorKind::UnwrapGap, "winding sampling did not resolve the phase with 65536 samples");
}

ChargeValue basic_charge_def(const SolutionContext& ctx, const TorusPoint& tp, int j) {
  check_index(ctx, j);
  const auto w = winding_of([&](double T) { return ctx.theta_quotient(cycle_point(ctx, tp, j, T)); });
  return to_integer(w.raw, "winding of e^{iu}", j);
}

ChargeValue basic_charge_reduced(const SolutionContext& ctx, const TorusPoint& tp, int j) {
  check_index(ctx, j);
  const int g = ctx.genus();
  const int m = ctx.real_pairs();
  CVector et = CVector::Zero(g);
  for (int i = 1; i <= m; ++i) et(i - 1) = (i % 2 == 0 ? 1.0 : -1.0) * tp.s[static_cast<std::size_t>(i - 1)];
  const CVector shift = ctx.periods().B * et / 2.0;
  const auto& th = ctx.theta();
  const auto w = winding_of([&](double T) {
    const CVector z = cycle_point(ctx, tp, j, T);
    return th.theta_ratio(shift + z, z);
  });
  const ChargeValue inner = to_integer(w.raw, "reduced winding", j);
  ChargeValue v;
  v.raw = -et(j - 1).real() + 2.0 * w.raw;
  v.n = static_cast<int>(std::lround(v.raw));
  v.deviation = 2.0 * inner.deviation;
  return v;
}

std::vector<int> theorem_charges(const std::vector<int>& s, int m, int g) {
  if (static_cast<int>(s.size()) != m || m > g) throw Error(ErrorKind::InvalidInput, "need m <= g signs");
  std::vector<int> n(static_cast<std::size_t>(g), 0);
  for (int j = 1; j <= m; ++j) n[static_cast<std::size_t>(j - 1)] = (j % 2 == 1 ? 1 : -1) * s[static_cast<std::size_t>(j - 1)];
  return n;
}

ChargeValue tilde_charge_elliptic(const SolutionContext& ctx, int s1) {
  if (ctx.genus() != 1 || ctx.real_pairs() != 1)
    throw Error(ErrorKind::InvalidInput, "the elliptic variant needs g = m = 1");
  if (s1 != 1 && s1 != -1) throw Error(ErrorKind::InvalidInput, "s1 must be +1 or -1");
  const Complex tau = ctx.periods().B(0, 0);
  const auto& th = ctx.theta();
  const double s = s1;
  const auto w = winding_of([&](double T) {
    CVector den(1), num(1);
    den(0) = -T - 0.5 - s * tau / 4.0;
    num(0) = den(0) + s * tau / 2.0;
    return th.theta_ratio(num, den);
  });
  const ChargeValue inner = to_integer(w.raw, "elliptic winding", 1);
  ChargeValue v;
  v.raw = -s1 + 2.0 * w.raw;
  v.n = static_cast<int>(std::lround(v.raw));
  v.deviation = 2.0 * inner.deviation;
  return v;
}

double charge_density(const PeriodData& periods, const std::vector<int>& n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    sum += (periods.U(i) - periods.V(i)) * n[j] / 4.0;
  }
  return sum;
}

double empirical_density(const Solution& sol, double window, double t, double x) {
  if (!(window > 0.0)) throw Error(ErrorKind::InvalidInput, "window must be positive");
  const double h = sol.default_x_step();
  const auto steps = static_cast<std::size_t>(std::ceil(window / h));
  std::vector<std::pair<double, double>> samples;
  samples.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) samples.emplace_back(x + window * k / steps, t);
  const auto u = sol.u_along_path(samples);
  return (u.back() - u.front()) / (2.0 * kPi * window);
}

ChargeReport charge_report(const SolutionContext& ctx, const TorusPoint& tp, const ChargeOptions& options) {
  const int g = ctx.genus();
  ChargeReport r;
  r.s = tp.s;
  std::vector<ChargeValue> def(static_cast<std::size_t>(g)), red(static_cast<std::size_t>(g));
  parallel_for(2 * static_cast<std::size_t>(g), [&](std::size_t k) {
    const int j = static_cast<int>(k / 2) + 1;
    if (k % 2 == 0)
      def[k / 2] = basic_charge_def(ctx, tp, j);
    else
      red[k / 2] = basic_charge_reduced(ctx, tp, j);
  });
  for (int j = 0; j < g; ++j) {
    const auto& a = def[static_cast<std::size_t>(j)];
    const auto& b = red[static_cast<std::size_t>(j)];
    if (a.n != b.n) {
      std::ostringstream os;
      os << "n_" << j + 1 << ": winding of e^{iu} gives " << a.n << ", reduced formula gives " << b.n;
      throw Error(ErrorKind::MismatchWithDefinition, os.str());
    }
    r.n.push_back(a.n);
    r.deviations.push_back(a.deviation);
    r.deviations_reduced.push_back(b.deviation);
  }
  r.theorem = theorem_charges(tp.s, ctx.real_pairs(), g);
  r.density_formula = charge_density(ctx.periods(), r.n);
  r.window = options.window;
  if (options.empirical) {
    const Solution sol(ctx, tp);
    r.has_empirical = true;
    r.density_empirical = empirical_density(sol, options.window, options.t);
  }
  return r;
}

}  // namespace fgsg
