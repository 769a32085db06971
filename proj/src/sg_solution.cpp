#include "fgsg/sg_solution.hpp"

#include <cmath>
#include <sstream>

#include "fgsg/errors.hpp"
#include "fgsg/parallel.hpp"

namespace fgsg {

TorusPoint make_torus_point(int g, int m, std::vector<int> s, RVector x0) {
  if (static_cast<int>(s.size()) != m) {
    std::ostringstream os;
    os << "topological type needs " << m << " signs, got " << s.size();
    throw Error(ErrorKind::InvalidInput, os.str());
  }
  for (int v : s)
    if (v != 1 && v != -1) throw Error(ErrorKind::InvalidInput, "signs must be +1 or -1");
  if (x0.size() == 0) x0 = RVector::Zero(g);
  if (x0.size() != g) throw Error(ErrorKind::InvalidInput, "x0 must have g entries");
  for (Eigen::Index i = 0; i < g; ++i)
    if (!(x0(i) >= 0.0 && x0(i) < 1.0)) throw Error(ErrorKind::InvalidInput, "x0 entries must lie in [0, 1)");
  return {std::move(s), std::move(x0)};
}

std::vector<int> parse_signs(std::string_view text) {
  std::vector<int> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
               static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back(-1);  // U+2212 minus sign
      i += 2;
    } else {
      throw Error(ErrorKind::InvalidInput, std::string("bad sign character in '") + std::string(text) + "'");
    }
  }
  return out;
}

std::vector<std::vector<int>> all_types(int m) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> s(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) s[static_cast<std::size_t>(j)] = (mask >> (m - 1 - j)) & 1 ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

SolutionContext::SolutionContext(SpectralCurve curve, PeriodData periods, const SolutionOptions& options)
    : curve_(std::move(curve)), periods_(std::move(periods)), options_(options) {
  theta_ = std::make_shared<const ThetaContext>(periods_.B, options_.theta_tolerance);
  CVector eps = CVector::Zero(periods_.g);
  for (int j = 0; j < periods_.m; ++j) eps(j) = 1.0;
  c1_root_ = std::exp(kPi * kI * eps.dot(periods_.B * eps) / 2.0);
}

CVector SolutionContext::z_of_xt(const TorusPoint& tp, double x, double t) const {
  const int g = periods_.g;
  const int m = periods_.m;
  CVector shift(g);
  for (int j = 0; j < g; ++j) shift(j) = j < m ? 0.25 * tp.s[static_cast<std::size_t>(j)] : 0.5;
  const RVector flow = x * (periods_.V - periods_.U) / 4.0 - t * (periods_.U + periods_.V) / 4.0;
  return -tp.x0.cast<Complex>() - periods_.B * shift - periods_.K + flow.cast<Complex>();
}

Complex SolutionContext::theta_quotient(const CVector& z) const {
  const double thr = options_.divisor_threshold;
  double mp = 0.0, mm = 0.0, mz = 0.0;
  const ThetaValue p = theta_->theta_scaled(periods_.A0 + z, &mp);
  const ThetaValue q = theta_->theta_scaled(-periods_.A0 + z, &mm);
  const ThetaValue d = theta_->theta_scaled(z, &mz);
  if (std::abs(p.scaled) < thr * mp || std::abs(q.scaled) < thr * mm || std::abs(d.scaled) < thr * mz) {
    std::ostringstream os;
    os << "theta nearly vanishes: |theta(z)| = " << std::abs(d.scaled) << ", |theta(A0+z)| = "
       << std::abs(p.scaled) << ", |theta(-A0+z)| = " << std::abs(q.scaled) << " (scaled)";
    throw Error(ErrorKind::NearDivisor, os.str());
  }
  return std::exp(p.log_scale + q.log_scale - 2.0 * d.log_scale) * (p.scaled * q.scaled / (d.scaled * d.scaled));
}

double pde_residual_with(const SolutionContext& ctx, const TorusPoint& tp, Complex c1, double x, double t, double h) {
  auto e = [&](double xx, double tt) { return c1 * ctx.theta_quotient(ctx.z_of_xt(tp, xx, tt)); };
  const Complex ec = e(x, t);
  auto du = [&](Complex v) { return std::arg(v / ec); };
  const double utt = du(e(x, t + h)) + du(e(x, t - h));
  const double uxx = du(e(x + h, t)) + du(e(x - h, t));
  return std::abs((utt - uxx) / (h * h) + std::sin(std::arg(ec)));
}

C1Selection select_c1(const SolutionContext& ctx, const TorusPoint& tp) {
  const auto& o = ctx.options();
  const double plus = pde_residual_with(ctx, tp, ctx.c1_root(), o.probe_x, o.probe_t, o.pde_step);
  const double minus = pde_residual_with(ctx, tp, -ctx.c1_root(), o.probe_x, o.probe_t, o.pde_step);
  C1Selection sel;
  sel.sign = plus <= minus ? 1 : -1;
  sel.chosen_residual = std::min(plus, minus);
  sel.rejected_residual = std::max(plus, minus);
  if (!(sel.rejected_residual > 10.0 * sel.chosen_residual)) {
    std::ostringstream os;
    os << "PDE residuals for both C1 roots are close: " << plus << " vs " << minus;
    throw Error(ErrorKind::AmbiguousSign, os.str());
  }
  return sel;
}

Solution::Solution(const SolutionContext& ctx, TorusPoint tp) : ctx_(&ctx), tp_(std::move(tp)) {
  selection_ = select_c1(ctx, tp_);
}

Solution::Solution(const SolutionContext& ctx, TorusPoint tp, int c1_sign) : ctx_(&ctx), tp_(std::move(tp)) {
  selection_.sign = c1_sign >= 0 ? 1 : -1;
}

Complex Solution::e_iu(double x, double t) const { return c1() * ctx_->theta_quotient(z(x, t)); }

double Solution::pde_residual(double x, double t, double h) const {
  return pde_residual_with(*ctx_, tp_, c1(), x, t, h);
}

double Solution::default_x_step() const {
  const auto& p = ctx_->periods();
  const double speed = std::max(1e-12, ((p.V - p.U) / 4.0).cwiseAbs().maxCoeff());
  return std::min(0.25, 0.05 / speed);
}

std::vector<double> Solution::u_along_path(const std::vector<std::pair<double, double>>& samples) const {
  std::vector<double> u;
  if (samples.empty()) return u;
  u.reserve(samples.size());
  const int cap = ctx_->options().max_refinement_depth;

  auto step = [&](auto&& self, double xa, double ta, Complex ea, double xb, double tb, Complex eb,
                  int depth) -> double {
    const double d = std::arg(eb / ea);
    if (std::abs(d) <= kPi / 4.0) return d;
    if (depth >= cap) {
      if (std::abs(d) < kPi / 2.0) return d;
      std::ostringstream os;
      os << "phase step " << d << " between (" << xa << ", " << ta << ") and (" << xb << ", " << tb
         << ") after " << cap << " bisections";
      throw Error(ErrorKind::UnwrapGap, os.str());
    }
    const double xm = 0.5 * (xa + xb);
    const double tm = 0.5 * (ta + tb);
    const Complex em = e_iu(xm, tm);
    return self(self, xa, ta, ea, xm, tm, em, depth + 1) + self(self, xm, tm, em, xb, tb, eb, depth + 1);
  };

  Complex prev = e_iu(samples[0].first, samples[0].second);
  u.push_back(std::arg(prev));
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Complex cur = e_iu(samples[i].first, samples[i].second);
    u.push_back(u.back() + step(step, samples[i - 1].first, samples[i - 1].second, prev, samples[i].first,
                                samples[i].second, cur, 0));
    prev = cur;
  }
  return u;
}

std::size_t range_count(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
    throw Error(ErrorKind::InvalidInput, "range needs start <= stop and step > 0");
  return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::vector<GridSample> evaluate_grid(const Solution& sol, const GridSpec& grid) {
  const std::size_t nx = range_count(grid.x0, grid.x1, grid.dx);
  const std::size_t nt = range_count(grid.t0, grid.t1, grid.dt);
  std::vector<std::pair<double, double>> column;
  for (std::size_t j = 0; j < nt; ++j) column.emplace_back(grid.x0, grid.t0 + j * grid.dt);
  const std::vector<double> u_col = sol.u_along_path(column);

  std::vector<GridSample> out(nx * nt);
  parallel_for(nt, [&](std::size_t j) {
    const double t = grid.t0 + j * grid.dt;
    std::vector<std::pair<double, double>> row;
    for (std::size_t i = 0; i < nx; ++i) row.emplace_back(grid.x0 + i * grid.dx, t);
    std::vector<double> u = sol.u_along_path(row);
    const double shift = 2.0 * kPi * std::round((u_col[j] - u[0]) / (2.0 * kPi));
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = row[i].first;
      out[j * nx + i] = {x, t, sol.e_iu(x, t), u[i] + shift};
    }
  });
  return out;
}

}  // namespace fgsg
