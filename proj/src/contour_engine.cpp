#include "fgsg/contour_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fgsg/errors.hpp"

namespace fgsg {
namespace {

constexpr double kMaxArcPiece = kPi / 4.0;

// Splits a segment into pieces along which every factor phase moves by < pi.
std::vector<Segment> pieces_of(const Segment& s) {
  if (const auto* arc = std::get_if<ArcSegment>(&s)) {
    const double sweep = arc->angle_to - arc->angle_from;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / kMaxArcPiece)));
    std::vector<Segment> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
      out.push_back(ArcSegment{arc->center, arc->radius, arc->angle_from + sweep * k / n,
                               arc->angle_from + sweep * (k + 1) / n});
    }
    return out;
  }
  return {s};
}

double point_segment_distance(Complex p, const Segment& s) {
  if (const auto* line = std::get_if<LineSegment>(&s)) {
    const Complex d = line->to - line->from;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - line->from);
    const double u = std::clamp(std::real((p - line->from) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(p - (line->from + u * d));
  }
  const auto& arc = std::get<ArcSegment>(s);
  const double ends = std::min(std::abs(p - segment_point(s, 0.0)), std::abs(p - segment_point(s, 1.0)));
  const Complex rel = p - arc.center;
  if (std::abs(rel) == 0.0) return arc.radius;
  const double sweep = arc.angle_to - arc.angle_from;
  double offset = std::arg(rel) - arc.angle_from;
  if (sweep < 0) offset = -offset;
  offset = std::fmod(offset, 2.0 * kPi);
  if (offset < 0) offset += 2.0 * kPi;
  if (offset <= std::abs(sweep)) return std::abs(std::abs(rel) - arc.radius);
  return ends;
}

// Polynomial coefficients with numerator degree checks for forms at infinity.
int degree(const RationalDifferential& f) {
  int d = static_cast<int>(f.numerator.size()) - 1;
  while (d > 0 && f.numerator[d] == Complex{}) --d;
  return d;
}

}  // namespace

// ---------------------------------------------------------------- segments

Complex segment_point(const Segment& s, double u) {
  if (const auto* line = std::get_if<LineSegment>(&s)) return line->from + u * (line->to - line->from);
  const auto& arc = std::get<ArcSegment>(s);
  return arc.center + std::polar(arc.radius, arc.angle_from + u * (arc.angle_to - arc.angle_from));
}

Complex segment_velocity(const Segment& s, double u) {
  if (const auto* line = std::get_if<LineSegment>(&s)) return line->to - line->from;
  const auto& arc = std::get<ArcSegment>(s);
  const double sweep = arc.angle_to - arc.angle_from;
  return kI * sweep * std::polar(arc.radius, arc.angle_from + u * sweep);
}

Segment reversed_segment(const Segment& s) {
  if (const auto* line = std::get_if<LineSegment>(&s)) return LineSegment{line->to, line->from};
  const auto& arc = std::get<ArcSegment>(s);
  return ArcSegment{arc.center, arc.radius, arc.angle_to, arc.angle_from};
}

// ---------------------------------------------------------------- Contour

Contour::Contour(std::vector<Segment> segments, Complex seed_mu)
    : segments_(std::move(segments)), seed_mu_(seed_mu) {
  if (segments_.empty()) throw Error(ErrorKind::InvalidInput, "contour needs at least one segment");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const Complex a = segment_point(segments_[i - 1], 1.0);
    const Complex b = segment_point(segments_[i], 0.0);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
      throw Error(ErrorKind::InvalidInput, "contour segments are not continuous");
  }
}

Contour Contour::polygon(std::span<const Complex> vertices, Complex seed_mu) {
  std::vector<Segment> segs;
  for (std::size_t i = 1; i < vertices.size(); ++i) segs.push_back(LineSegment{vertices[i - 1], vertices[i]});
  return Contour(std::move(segs), seed_mu);
}

Complex Contour::start() const { return segment_point(segments_.front(), 0.0); }
Complex Contour::end() const { return segment_point(segments_.back(), 1.0); }

bool Contour::is_closed() const {
  return std::abs(start() - end()) <= 1e-12 * std::max(1.0, std::abs(start()));
}

Complex Contour::point(double t) const {
  const double clamped = std::clamp(t, 0.0, static_cast<double>(segments_.size()));
  std::size_t i = std::min(static_cast<std::size_t>(clamped), segments_.size() - 1);
  return segment_point(segments_[i], clamped - static_cast<double>(i));
}

Contour Contour::scaled(double factor, Complex seed_mu) const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (const auto& s : segments_) {
    if (const auto* line = std::get_if<LineSegment>(&s)) {
      segs.push_back(LineSegment{factor * line->from, factor * line->to});
    } else {
      const auto& arc = std::get<ArcSegment>(s);
      segs.push_back(ArcSegment{factor * arc.center, factor * arc.radius, arc.angle_from, arc.angle_to});
    }
  }
  return Contour(std::move(segs), seed_mu);
}

Contour Contour::then(const Contour& next) const {
  std::vector<Segment> segs = segments_;
  segs.insert(segs.end(), next.segments_.begin(), next.segments_.end());
  return Contour(std::move(segs), seed_mu_);
}

Contour reverse_contour(const SpectralCurve& curve, const Contour& c) {
  std::vector<Segment> segs;
  for (auto it = c.segments().rbegin(); it != c.segments().rend(); ++it) segs.push_back(reversed_segment(*it));
  return Contour(std::move(segs), end_mu(curve, c));
}

// ---------------------------------------------------------------- forms

RationalDifferential RationalDifferential::monomial(int power) {
  RationalDifferential f;
  f.numerator.assign(static_cast<std::size_t>(power) + 1, Complex{});
  f.numerator.back() = 1.0;
  return f;
}

RationalDifferential RationalDifferential::over_lambda_mu(Complex coefficient) {
  return {{coefficient}, Denominator::LambdaMu};
}

Complex RationalDifferential::numerator_at(Complex lambda) const {
  Complex v{};
  for (auto it = numerator.rbegin(); it != numerator.rend(); ++it) v = v * lambda + *it;
  return v;
}

// ---------------------------------------------------------------- tracking

SheetTracker::SheetTracker(const SpectralCurve& curve, Complex lambda0, Complex mu0)
    : points_(curve.finite_branch_points()), anchor_(lambda0) {
  double scale = 1.0;
  for (const auto& e : points_) scale = std::max(scale, std::abs(e));
  collapse_radius_ = 1e-14 * scale;
  check(lambda0);
  phases_.reserve(points_.size());
  for (const auto& e : points_) phases_.push_back(std::arg(lambda0 - e));
  const Complex principal = mu_at(lambda0);
  sign_ = std::abs(principal - mu0) <= std::abs(principal + mu0) ? 1.0 : -1.0;
}

void SheetTracker::check(Complex lambda) const {
  for (const auto& e : points_)
    if (std::abs(lambda - e) < collapse_radius_) {
      std::ostringstream os;
      os << "continuation reached branch point (" << e.real() << ", " << e.imag() << ")";
      throw Error(ErrorKind::StepCollapse, os.str());
    }
}

Complex SheetTracker::mu_at(Complex lambda) const { return mu_without(npos, lambda); }

Complex SheetTracker::mu_without(std::size_t skip, Complex lambda) const {
  double log_mag = 0.0;
  double phase = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i == skip) continue;
    const Complex d = lambda - points_[i];
    if (std::abs(d) < collapse_radius_) check(lambda);
    log_mag += std::log(std::abs(d));
    phase += phases_[i] + std::arg(d / (anchor_ - points_[i]));
  }
  return sign_ * std::polar(std::exp(0.5 * log_mag), 0.5 * phase);
}

std::size_t SheetTracker::index_of(Complex lambda) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (std::abs(lambda - points_[i]) < collapse_radius_) return i;
  return npos;
}

void SheetTracker::advance(Complex lambda) {
  check(lambda);
  for (std::size_t i = 0; i < points_.size(); ++i)
    phases_[i] += std::arg((lambda - points_[i]) / (anchor_ - points_[i]));
  anchor_ = lambda;
}

std::vector<Complex> continue_mu(const SpectralCurve& curve, const Contour& contour,
                                 std::span<const double> params) {
  SheetTracker tracker(curve, contour.start(), contour.seed_mu());
  std::vector<Complex> out;
  out.reserve(params.size());
  std::size_t next = 0;
  for (std::size_t si = 0; si < contour.size() && next < params.size(); ++si) {
    const auto pieces = pieces_of(contour.segments()[si]);
    const double n = static_cast<double>(pieces.size());
    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
      const double lo = static_cast<double>(si) + pi / n;
      const double hi = static_cast<double>(si) + (pi + 1) / n;
      const bool last = (si + 1 == contour.size()) && (pi + 1 == pieces.size());
      while (next < params.size() && (params[next] <= hi || last)) {
        if (params[next] < lo - 1e-15)
          throw Error(ErrorKind::InvalidInput, "continue_mu parameters must be ascending");
        const double u = std::clamp((params[next] - lo) / (hi - lo), 0.0, 1.0);
        out.push_back(tracker.mu_at(segment_point(pieces[pi], u)));
        ++next;
      }
      tracker.advance(segment_point(pieces[pi], 1.0));
    }
  }
  return out;
}

Complex end_mu(const SpectralCurve& curve, const Contour& contour) {
  SheetTracker tracker(curve, contour.start(), contour.seed_mu());
  for (const auto& s : contour.segments())
    for (const auto& p : pieces_of(s)) tracker.advance(segment_point(p, 1.0));
  return tracker.mu_at(tracker.anchor());
}

// ---------------------------------------------------------------- integration

std::vector<Complex> integrate_forms(const SpectralCurve& curve,
                                     std::span<const RationalDifferential> forms,
                                     const Contour& contour, const QuadratureTolerance& tol) {
  SheetTracker tracker(curve, contour.start(), contour.seed_mu());
  std::vector<Complex> total(forms.size());
  for (const auto& s : contour.segments()) {
    for (const auto& piece : pieces_of(s)) {
      auto integrand = [&](double u, std::span<Complex> out) {
        const Complex lambda = segment_point(piece, u);
        const Complex dl = segment_velocity(piece, u);
        const Complex mu = tracker.mu_at(lambda);
        for (std::size_t f = 0; f < forms.size(); ++f) {
          Complex v = forms[f].numerator_at(lambda) * dl / mu;
          if (forms[f].denominator == RationalDifferential::Denominator::LambdaMu) v /= lambda;
          out[f] = v;
        }
      };
      const auto r = integrate_adaptive(integrand, forms.size(), 0.0, 1.0, tol);
      for (std::size_t f = 0; f < forms.size(); ++f) total[f] += r.value[f];
      tracker.advance(segment_point(piece, 1.0));
    }
  }
  return total;
}

Complex integrate_form(const SpectralCurve& curve, const RationalDifferential& form,
                       const Contour& contour, const QuadratureTolerance& tol) {
  return integrate_forms(curve, std::span<const RationalDifferential>(&form, 1), contour, tol).front();
}

OpenPathResult integrate_from_infinity(const SpectralCurve& curve,
                                       std::span<const RationalDifferential> forms,
                                       double ray_end, std::span<const Complex> waypoints,
                                       const QuadratureTolerance& tol) {
  const int g = curve.genus();
  const auto pts = curve.finite_branch_points();
  double max_abs = 0.0;
  for (const auto& e : pts) max_abs = std::max(max_abs, std::abs(e));
  if (!(ray_end > max_abs))
    throw Error(ErrorKind::InvalidInput, "ray must start beyond every branch point");
  for (const auto& f : forms) {
    const int limit = f.denominator == RationalDifferential::Denominator::Mu ? g - 1 : g;
    if (degree(f) > limit) throw Error(ErrorKind::InvalidInput, "form is not integrable at infinity");
  }

  std::vector<Complex> total(forms.size());
  const double R = ray_end;

  // lambda = R / w^2, w in (0, 1]: the ray from +infinity down to R.
  auto ray = [&](double w, std::span<Complex> out) {
    Complex prod = 1.0;
    for (const auto& e : pts) prod *= std::sqrt(R - e * w * w);
    for (std::size_t fi = 0; fi < forms.size(); ++fi) {
      const auto& f = forms[fi];
      const bool over_lambda = f.denominator == RationalDifferential::Denominator::LambdaMu;
      Complex acc{};
      for (std::size_t k = 0; k < f.numerator.size(); ++k) {
        const int kk = static_cast<int>(k);
        const int wpow = over_lambda ? 2 * g - 2 * kk : 2 * g - 2 - 2 * kk;
        const double rpow = over_lambda ? kk : kk + 1;
        acc += f.numerator[k] * std::pow(R, rpow) * std::pow(w, wpow);
      }
      out[fi] = -2.0 * acc / prod;
    }
  };
  {
    const auto r = integrate_adaptive(ray, forms.size(), 0.0, 1.0, tol);
    for (std::size_t f = 0; f < forms.size(); ++f) total[f] += r.value[f];
  }

  SheetTracker tracker(curve, Complex{R, 0.0}, Complex{std::sqrt(curve.mu_squared_real(R)), 0.0});
  Complex here{R, 0.0};
  for (std::size_t wi = 0; wi < waypoints.size(); ++wi) {
    const Complex to = waypoints[wi];
    const bool last = wi + 1 == waypoints.size();
    const std::size_t target = last ? tracker.index_of(to) : SheetTracker::npos;
    const LineSegment leg{here, to};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == target) continue;
      if (point_segment_distance(pts[i], leg) < 1e-12 * std::max(1.0, max_abs))
        throw Error(ErrorKind::PathCrossesCut, "integration path runs through a branch point");
    }
    if (target == SheetTracker::npos) {
      auto integrand = [&](double u, std::span<Complex> out) {
        const Complex lambda = here + u * (to - here);
        const Complex mu = tracker.mu_at(lambda);
        for (std::size_t f = 0; f < forms.size(); ++f) {
          Complex v = forms[f].numerator_at(lambda) * (to - here) / mu;
          if (forms[f].denominator == RationalDifferential::Denominator::LambdaMu) v /= lambda;
          out[f] = v;
        }
      };
      const auto r = integrate_adaptive(integrand, forms.size(), 0.0, 1.0, tol);
      for (std::size_t f = 0; f < forms.size(); ++f) total[f] += r.value[f];
      tracker.advance(to);
      here = to;
      continue;
    }
    // Final leg into a branch point: lambda = E + (P - E) w^2 with w = 1 - s.
    const Complex P = here;
    const Complex E = pts[target];
    const Complex fixed = std::sqrt(std::abs(P - E)) * std::polar(1.0, 0.5 * tracker.phase_at_anchor(target));
    auto integrand = [&](double s, std::span<Complex> out) {
      const double w = 1.0 - s;
      const Complex lambda = E + (P - E) * (w * w);
      const Complex rest = tracker.mu_without(target, lambda);
      for (std::size_t f = 0; f < forms.size(); ++f) {
        if (forms[f].denominator == RationalDifferential::Denominator::LambdaMu && target == 0)
          throw Error(ErrorKind::InvalidInput, "dlambda/(lambda mu) is not integrable into lambda = 0");
        Complex v = forms[f].numerator_at(lambda) * (-2.0 * (P - E)) / (fixed * rest);
        if (forms[f].denominator == RationalDifferential::Denominator::LambdaMu) v /= lambda;
        out[f] = v;
      }
    };
    const auto r = integrate_adaptive(integrand, forms.size(), 0.0, 1.0, tol);
    for (std::size_t f = 0; f < forms.size(); ++f) total[f] += r.value[f];
    return {total, Complex{}};
  }
  return {total, tracker.mu_at(here)};
}

// ---------------------------------------------------------------- geometry

int winding_number(const Contour& contour, Complex center) {
  double total = 0.0;
  constexpr int kSteps = 32;
  for (const auto& s : contour.segments()) {
    Complex prev = segment_point(s, 0.0) - center;
    for (int k = 1; k <= kSteps; ++k) {
      const Complex cur = segment_point(s, static_cast<double>(k) / kSteps) - center;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double contour_clearance(const SpectralCurve& curve, const Contour& contour) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : curve.finite_branch_points())
    for (const auto& s : contour.segments()) best = std::min(best, point_segment_distance(e, s));
  return best;
}

double required_clearance(const SpectralCurve& curve) { return 1e-3 * curve.min_separation(); }

Complex real_axis_seed(const SpectralCurve& curve, double lambda) {
  const double v = curve.mu_squared_real(lambda);
  return v >= 0.0 ? Complex{std::sqrt(v), 0.0} : Complex{0.0, std::sqrt(-v)};
}

PeriodTables period_tables(const SpectralCurve& curve, const CycleBasis& basis,
                           std::span<const RationalDifferential> forms, const QuadratureTolerance& tol) {
  const auto g = static_cast<Eigen::Index>(basis.a.size());
  PeriodTables t{CMatrix(static_cast<Eigen::Index>(forms.size()), g),
                 CMatrix(static_cast<Eigen::Index>(forms.size()), g)};
  for (Eigen::Index j = 0; j < g; ++j) {
    const auto pa = integrate_forms(curve, forms, basis.a[j], tol);
    const auto pb = integrate_forms(curve, forms, basis.b[j], tol);
    for (std::size_t f = 0; f < forms.size(); ++f) {
      t.a(static_cast<Eigen::Index>(f), j) = pa[f];
      t.b(static_cast<Eigen::Index>(f), j) = pb[f];
    }
  }
  return t;
}

Normalization normalize_periods(const CMatrix& pa, const CMatrix& pb) {
  const Eigen::Index g = pa.rows();
  RVector row(g), col(g);
  for (Eigen::Index i = 0; i < g; ++i) row(i) = pa.row(i).cwiseAbs().maxCoeff();
  CMatrix scaled = row.cwiseInverse().asDiagonal() * pa;
  for (Eigen::Index j = 0; j < g; ++j) col(j) = scaled.col(j).cwiseAbs().maxCoeff();
  scaled = scaled * col.cwiseInverse().asDiagonal();
  if (!row.allFinite() || !col.allFinite() || row.minCoeff() == 0.0 || col.minCoeff() == 0.0)
    throw Error(ErrorKind::SingularPeriodMatrix, "a-period matrix has a zero row or column");

  Eigen::JacobiSVD<CMatrix> svd(scaled);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(g - 1);
  if (!(cond <= 1e12)) {
    std::ostringstream os;
    os << "a-period matrix condition number " << cond;
    throw Error(ErrorKind::SingularPeriodMatrix, os.str());
  }
  Eigen::FullPivLU<CMatrix> lu(scaled);
  CMatrix inv = lu.inverse();
  if (cond > 1e8) {
    const CMatrix residual = CMatrix::Identity(g, g) - scaled * inv;
    inv += inv * residual;
  }
  // pa = Dr * S * Dc  =>  pa^{-1} = Dc^{-1} S^{-1} Dr^{-1}
  Normalization out;
  out.c = col.cwiseInverse().asDiagonal() * inv * row.cwiseInverse().asDiagonal();
  out.riemann = out.c * pb;
  out.condition = cond;
  return out;
}

void fill_winding_data(const SpectralCurve& curve, CycleBasis& basis) {
  const int g = curve.genus();
  auto odd_winding = [&](const Contour& c) {
    int w = 0;
    for (int i = 1; i <= g; ++i) w += winding_number(c, curve.E(2 * i - 1));
    return w;
  };
  basis.alpha.clear();
  basis.beta.clear();
  basis.alpha_odd.clear();
  basis.beta_odd.clear();
  for (int j = 0; j < g; ++j) {
    basis.alpha.push_back(winding_number(basis.a[j], 0.0));
    basis.beta.push_back(winding_number(basis.b[j], 0.0));
    basis.alpha_odd.push_back(odd_winding(basis.a[j]));
    basis.beta_odd.push_back(odd_winding(basis.b[j]));
  }
}

BasisCheck check_basis(const SpectralCurve& curve, const CycleBasis& basis, const QuadratureTolerance& tol) {
  const int g = curve.genus();
  const int m = curve.real_pairs();
  std::vector<RationalDifferential> forms;
  for (int p = 0; p < g; ++p) forms.push_back(RationalDifferential::monomial(p));
  const auto tables = period_tables(curve, basis, forms, tol);
  const auto norm = normalize_periods(tables.a, tables.b);

  BasisCheck out;
  out.riemann_matrix = norm.riemann;
  const CMatrix& B = norm.riemann;
  out.symmetry = (B - B.transpose()).cwiseAbs().maxCoeff();
  const RMatrix im = 0.5 * (B.imag() + B.imag().transpose());
  out.min_eig_im = Eigen::SelfAdjointEigenSolver<RMatrix>(im).eigenvalues().minCoeff();
  RMatrix target = RMatrix::Zero(g, g);
  for (int j = m; j < g; ++j) target(j, j) = -0.5;
  out.real_part = (B.real() - target).cwiseAbs().maxCoeff();

  bool ok = static_cast<int>(basis.alpha.size()) == g;
  for (int j = 0; ok && j < g; ++j) {
    const int jj = j + 1;
    const bool elliptic = j < m;
    ok = basis.alpha[j] == (elliptic ? 1 : 0) && basis.beta[j] == (elliptic ? 0 : 1) &&
         std::abs(basis.alpha_odd[j] - (elliptic ? jj : 1)) % 2 == 0 &&
         std::abs(basis.beta_odd[j] - (elliptic ? 1 : jj)) % 2 == 0;
  }
  out.windings_ok = ok;
  return out;
}

namespace {

struct Geometry {
  std::vector<double> real;    // 0, E_1, ..., E_2m
  std::vector<Complex> pairs;  // upper members, ascending real part
  double right = 0.0;          // right crossing of the real cluster (> 0)
  double left = 0.0;           // left crossing of the real cluster
  double height = 0.0;         // half-height of real-axis rectangles
  double top = 0.0;            // half-height of the large b-loops
};

Geometry layout(const SpectralCurve& curve) {
  const int g = curve.genus();
  const int m = curve.real_pairs();
  Geometry geo;
  geo.real.push_back(0.0);
  for (int i = 1; i <= 2 * m; ++i) geo.real.push_back(curve.E(i).real());
  for (int j = m + 1; j <= g; ++j) geo.pairs.push_back(curve.E(2 * j - 1));

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < geo.real.size(); ++i) gaps.push_back(geo.real[i] - geo.real[i + 1]);
  double min_gap = std::numeric_limits<double>::infinity();
  for (double d : gaps) min_gap = std::min(min_gap, d);
  double min_im = std::numeric_limits<double>::infinity();
  double max_im = 0.0;
  double min_re = std::numeric_limits<double>::infinity();
  double min_abs = std::numeric_limits<double>::infinity();
  for (const auto& p : geo.pairs) {
    min_im = std::min(min_im, p.imag());
    max_im = std::max(max_im, p.imag());
    min_re = std::min(min_re, p.real());
    min_abs = std::min(min_abs, std::abs(p));
  }

  const double scale = std::min({min_gap, min_im, min_abs});
  geo.right = 0.25 * scale;
  if (!geo.pairs.empty()) {
    if (!(min_re > 0.0)) {
      throw Error(ErrorKind::GeometryConflict,
                  "conjugate pairs must lie to the right of lambda = 0 for the vertical-cut layout");
    }
    geo.right = std::min(geo.right, 0.5 * min_re);
  }
  geo.left = gaps.empty() ? -geo.right : geo.real.back() - 0.5 * gaps.back();
  geo.height = std::min(0.5 * min_gap, 0.4 * min_im);
  if (!std::isfinite(geo.height)) throw Error(ErrorKind::GeometryConflict, "degenerate curve layout");
  geo.top = max_im + 0.5 * (std::isfinite(min_im) ? min_im : 1.0);
  return geo;
}

std::vector<Complex> rectangle(double xl, double xr, double ylo, double yhi) {
  // Counterclockwise, starting and ending at (xr, 0).
  return {Complex{xr, 0.0}, Complex{xr, yhi}, Complex{xl, yhi}, Complex{xl, ylo}, Complex{xr, ylo},
          Complex{xr, 0.0}};
}

CycleBasis raw_basis(const SpectralCurve& curve) {
  const int g = curve.genus();
  const int m = curve.real_pairs();
  const Geometry geo = layout(curve);
  auto mid = [&](int i) { return 0.5 * (geo.real[i] + geo.real[i + 1]); };

  CycleBasis basis;
  auto add = [&](std::vector<Contour>& into, const std::vector<Complex>& verts) {
    into.push_back(Contour::polygon(verts, real_axis_seed(curve, verts.front().real())));
  };

  for (int j = 1; j <= m; ++j) {
    add(basis.a, rectangle(mid(2 * j - 1), geo.right, -geo.height, geo.height));
    const double xl = (j < m) ? mid(2 * j) : geo.left;
    add(basis.b, rectangle(xl, mid(2 * j - 2), -geo.height, geo.height));
  }
  for (std::size_t l = 0; l < geo.pairs.size(); ++l) {
    const double x = geo.pairs[l].real();
    const double y = geo.pairs[l].imag();
    double w = std::min(y, x - geo.right);
    for (std::size_t o = 0; o < geo.pairs.size(); ++o)
      if (o != l) w = std::min(w, std::abs(x - geo.pairs[o].real()));
    w *= 0.25;
    if (!(w > 2.0 * required_clearance(curve)))
      throw Error(ErrorKind::GeometryConflict, "conjugate pairs share (nearly) the same real part");
    add(basis.a, rectangle(x - w, x + w, -y - w, y + w));
    add(basis.b, {Complex{x + w, 0.0}, Complex{x + w, geo.top}, Complex{geo.left, geo.top},
                  Complex{geo.left, -geo.top}, Complex{x - w, -geo.top}, Complex{x - w, 0.0},
                  Complex{x + w, 0.0}});
  }

  const double delta = required_clearance(curve);
  for (int j = 0; j < g; ++j) {
    const double ca = contour_clearance(curve, basis.a[j]);
    const double cb = contour_clearance(curve, basis.b[j]);
    if (ca < delta || cb < delta) {
      std::ostringstream os;
      os << "cycle " << j + 1 << " passes within " << std::min(ca, cb) << " of a branch point (need "
         << delta << ")";
      throw Error(ErrorKind::GeometryConflict, os.str());
    }
  }
  return basis;
}

}  // namespace

CycleBasis standard_cycle_basis(const SpectralCurve& curve, const BasisOptions& options) {
  const int g = curve.genus();
  const int m = curve.real_pairs();
  CycleBasis basis = raw_basis(curve);

  // Orientation: Im B_jj > 0, flipping b_j for j <= m and a_j for j > m so
  // that the windings about 0 stay alpha = (1, 0), beta = (0, 1).
  std::vector<RationalDifferential> forms;
  for (int p = 0; p < g; ++p) forms.push_back(RationalDifferential::monomial(p));
  const auto tables = period_tables(curve, basis, forms, options.tolerance);
  const auto norm = normalize_periods(tables.a, tables.b);
  for (int j = 0; j < g; ++j) {
    if (norm.riemann(j, j).imag() >= 0.0) continue;
    if (j < m)
      basis.b[j] = reverse_contour(curve, basis.b[j]);
    else
      basis.a[j] = reverse_contour(curve, basis.a[j]);
  }
  if (options.inject_fault) basis.a[0] = reverse_contour(curve, basis.a[0]);
  fill_winding_data(curve, basis);

  const BasisCheck check = check_basis(curve, basis, options.tolerance);
  if (!(check.symmetry < 1e-8 && check.min_eig_im > 0.0 && check.real_part < 1e-6 && check.windings_ok)) {
    std::ostringstream os;
    os << "symmetry residual " << check.symmetry << ", min eig Im B " << check.min_eig_im
       << ", Re B residual " << check.real_part << ", windings " << (check.windings_ok ? "ok" : "wrong");
    throw Error(ErrorKind::BasisSelfCheckFailed, os.str());
  }
  return basis;
}

}  // namespace fgsg
