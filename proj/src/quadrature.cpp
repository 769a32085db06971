#include "fgsg/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fgsg/errors.hpp"

namespace fgsg {
namespace {

// Kronrod 15-point nodes (non-negative half) and weights; Gauss 7-point weights.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b;
  std::vector<Complex> value;
  std::vector<double> error;
  std::vector<double> l1;
};

Interval evaluate(const VectorIntegrand& f, std::size_t n, double a, double b,
                  std::vector<Complex>& scratch) {
  Interval iv{a, b, std::vector<Complex>(n), std::vector<double>(n), std::vector<double>(n)};
  std::vector<Complex> gauss(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::span<Complex> out(scratch.data(), n);

  auto accumulate = [&](double t, double wk, double wg) {
    f(t, out);
    for (std::size_t i = 0; i < n; ++i) {
      iv.value[i] += wk * out[i];
      iv.l1[i] += wk * std::abs(out[i]);
      if (wg != 0.0) gauss[i] += wg * out[i];
    }
  };

  accumulate(c, kWk[7], kWg[3]);
  for (int j = 0; j < 7; ++j) {
    const double wg = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    accumulate(c - h * kXk[j], kWk[j], wg);
    accumulate(c + h * kXk[j], kWk[j], wg);
  }
  for (std::size_t i = 0; i < n; ++i) {
    iv.value[i] *= h;
    iv.l1[i] *= std::abs(h);
    iv.error[i] = std::abs(iv.value[i] - h * gauss[i]);
  }
  return iv;
}

}  // namespace

QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t n, double a, double b,
                                    const QuadratureTolerance& tol) {
  std::vector<Complex> scratch(n);
  std::vector<Interval> intervals;
  intervals.push_back(evaluate(f, n, a, b, scratch));

  std::vector<Complex> total(n);
  std::vector<double> err(n), l1(n);
  for (;;) {
    std::fill(total.begin(), total.end(), Complex{});
    std::fill(err.begin(), err.end(), 0.0);
    std::fill(l1.begin(), l1.end(), 0.0);
    for (const auto& iv : intervals)
      for (std::size_t i = 0; i < n; ++i) {
        total[i] += iv.value[i];
        err[i] += iv.error[i];
        l1[i] += iv.l1[i];
      }

    std::vector<double> allowed(n);
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(err[i]) || !std::isfinite(l1[i]))
        throw Error(ErrorKind::ToleranceNotMet, "integrand is not finite at a quadrature node");
      allowed[i] = std::max(tol.abs * std::min(1.0, l1[i]), tol.rel * l1[i]);
      if (allowed[i] <= 0.0) allowed[i] = tol.abs;
      if (err[i] > allowed[i]) done = false;
    }
    if (done) break;

    if (static_cast<int>(intervals.size()) >= tol.max_intervals) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, err[i] / allowed[i]);
      std::ostringstream os;
      os << "quadrature budget exhausted; error exceeds tolerance by factor " << worst;
      throw Error(ErrorKind::ToleranceNotMet, os.str());
    }

    // Bisect the interval with the largest normalized error; ties go to the earliest.
    std::size_t pick = 0;
    double pick_score = -1.0;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      double score = 0.0;
      for (std::size_t i = 0; i < n; ++i) score = std::max(score, intervals[k].error[i] / allowed[i]);
      if (score > pick_score) { pick_score = score; pick = k; }
    }
    const double lo = intervals[pick].a;
    const double hi = intervals[pick].b;
    const double mid = 0.5 * (lo + hi);
    intervals[pick] = evaluate(f, n, lo, mid, scratch);
    intervals.insert(intervals.begin() + static_cast<std::ptrdiff_t>(pick) + 1,
                     evaluate(f, n, mid, hi, scratch));
  }
  return {total, err, l1};
}

}  // namespace fgsg
