#include "fgsg/multiscale.hpp"

#include <cmath>
#include <sstream>

#include "fgsg/errors.hpp"
#include "fgsg/parallel.hpp"

namespace fgsg {

CycleBasis scaled_cycle_basis(const SpectralCurve& base, const CycleBasis& base_basis, double k) {
  const SpectralCurve curve = deformed_curve(base, k);
  const int g = base.genus();
  const int m = base.real_pairs();
  const double delta = required_clearance(curve);
  CycleBasis out;
  for (int j = 0; j < g; ++j) {
    const double f = std::pow(k, j < m ? j : m);
    for (auto [from, to] : {std::pair{&base_basis.a, &out.a}, std::pair{&base_basis.b, &out.b}}) {
      const Contour& c = (*from)[static_cast<std::size_t>(j)];
      const Complex start = f * c.start();
      if (std::abs(start.imag()) > 1e-12 * std::abs(start))
        throw Error(ErrorKind::GeometryConflict, "scaled cycles must start on the real axis");
      Contour scaled = c.scaled(f, real_axis_seed(curve, start.real()));
      if (contour_clearance(curve, scaled) < delta) {
        std::ostringstream os;
        os << "scaled cycle " << j + 1 << " loses clearance at k = " << k;
        throw Error(ErrorKind::GeometryConflict, os.str());
      }
      to->push_back(std::move(scaled));
    }
  }
  fill_winding_data(curve, out);
  return out;
}

CMatrix b_infinity(const SpectralCurve& base, const QuadratureTolerance& tol) {
  const int g = base.genus();
  CMatrix out = CMatrix::Zero(g, g);
  Eigen::Index at = 0;
  for (const auto& comp : component_curves(base)) {
    BasisOptions opts;
    opts.tolerance = tol;
    const auto basis = standard_cycle_basis(comp.curve, opts);
    const auto data = period_matrix(comp.curve, basis, tol);
    const Eigen::Index n = data.B.rows();
    out.block(at, at, n, n) = data.B;
    at += n;
  }
  return out;
}

void require_monotone(const MultiscaleSweep& sweep, double noise_floor) {
  bool ok = true;
  for (std::size_t i = 1; i < sweep.entries.size(); ++i) {
    const double prev = sweep.entries[i - 1].deviation;
    const double cur = sweep.entries[i].deviation;
    if (prev < noise_floor && cur < noise_floor) continue;
    if (!(cur < prev)) ok = false;
  }
  if (ok) return;
  std::ostringstream os;
  os << "deviations do not decrease:";
  for (const auto& e : sweep.entries) os << " k=" << e.k << ":" << e.deviation;
  throw Error(ErrorKind::NonMonotoneConvergence, os.str());
}

MultiscaleSweep convergence_sweep(const SpectralCurve& base, const std::vector<double>& ks,
                                  const SweepOptions& options) {
  if (ks.empty() || ks.front() != 1.0) throw Error(ErrorKind::InvalidInput, "k list must start at 1");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (!(ks[i] > ks[i - 1])) throw Error(ErrorKind::InvalidInput, "k list must be strictly ascending");

  const int g = base.genus();
  const int m = base.real_pairs();
  MultiscaleSweep sweep;
  sweep.b_inf = b_infinity(base, options.tolerance);
  BasisOptions bopts;
  bopts.tolerance = options.tolerance;
  const CycleBasis basis = standard_cycle_basis(base, bopts);

  // Block index of each row: elliptic j gets its own block, the rest share one.
  auto block = [m](int i) { return i < m ? i : m; };

  sweep.entries.resize(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    const double k = ks[i];
    const SpectralCurve curve = deformed_curve(base, k);
    const PeriodData data = period_matrix(curve, scaled_cycle_basis(base, basis, k), options.tolerance);
    SweepEntry& e = sweep.entries[i];
    e.k = k;
    e.B = data.B;
    e.deviation = (data.B - sweep.b_inf).cwiseAbs().maxCoeff();
    e.real_part = data.residuals.real_part;
    for (int r = 0; r < g; ++r)
      for (int c = 0; c < g; ++c)
        if (block(r) != block(c)) e.off_diagonal = std::max(e.off_diagonal, std::abs(data.B(r, c)));
  });
  if (options.enforce_monotone) require_monotone(sweep, options.noise_floor);
  return sweep;
}

}  // namespace fgsg
