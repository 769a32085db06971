#pragma once

#include <span>
#include <variant>
#include <vector>

#include "fgsg/curve_model.hpp"
#include "fgsg/quadrature.hpp"
#include "fgsg/types.hpp"

namespace fgsg {

struct LineSegment {
  Complex from;
  Complex to;
};

/// Circular arc center + radius * exp(i*angle), angle running from `from` to `to`.
struct ArcSegment {
  Complex center;
  double radius;
  double angle_from;
  double angle_to;
};

using Segment = std::variant<LineSegment, ArcSegment>;

Complex segment_point(const Segment& s, double u);
Complex segment_velocity(const Segment& s, double u);
Segment reversed_segment(const Segment& s);

/// Piecewise path in the lambda-plane plus the value of mu at its start.
/// The parameter runs over [0, size()], segment i covering [i, i+1].
class Contour {
 public:
  Contour(std::vector<Segment> segments, Complex seed_mu);

  static Contour polygon(std::span<const Complex> vertices, Complex seed_mu);

  const std::vector<Segment>& segments() const { return segments_; }
  Complex seed_mu() const { return seed_mu_; }
  std::size_t size() const { return segments_.size(); }
  Complex start() const;
  Complex end() const;
  bool is_closed() const;
  Complex point(double t) const;

  /// Same lambda-path scaled about the origin, with a new seed.
  Contour scaled(double factor, Complex seed_mu) const;

  /// Appends `next`; mu is continued from this contour, next's seed is ignored.
  Contour then(const Contour& next) const;

 private:
  std::vector<Segment> segments_;
  Complex seed_mu_;
};

/// The same lifted path traversed backwards (starts where `c` ends, on the sheet reached there).
Contour reverse_contour(const SpectralCurve& curve, const Contour& c);

/// Numerator polynomial in lambda (coefficients lowest degree first) over mu or lambda*mu.
struct RationalDifferential {
  enum class Denominator { Mu, LambdaMu };
  std::vector<Complex> numerator;
  Denominator denominator = Denominator::Mu;

  static RationalDifferential monomial(int power);
  static RationalDifferential over_lambda_mu(Complex coefficient = 1.0);
  Complex numerator_at(Complex lambda) const;
};

/// Analytic continuation of mu = sheet * prod_i sqrt(lambda - e_i), where each
/// factor keeps an unwrapped phase. Moving along a straight piece (or an arc
/// piece of at most 45 degrees whose circle contains no other branch point)
/// changes each factor's phase by less than pi, so the branch is exact.
class SheetTracker {
 public:
  SheetTracker(const SpectralCurve& curve, Complex lambda0, Complex mu0);

  Complex anchor() const { return anchor_; }
  Complex mu_at(Complex lambda) const;
  /// mu with factor `skip` removed, plus that factor's phase at the anchor.
  Complex mu_without(std::size_t skip, Complex lambda) const;
  double phase_at_anchor(std::size_t index) const { return phases_[index]; }
  std::size_t index_of(Complex lambda) const;  // branch point index or npos
  void advance(Complex lambda);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Complex> points_;
  std::vector<double> phases_;
  Complex anchor_;
  double sign_ = 1.0;
  double collapse_radius_;
  void check(Complex lambda) const;
};

/// mu at the requested contour parameters (ascending, within [0, size()]).
std::vector<Complex> continue_mu(const SpectralCurve& curve, const Contour& contour,
                                 std::span<const double> params);

/// mu at the end of the contour after continuation.
Complex end_mu(const SpectralCurve& curve, const Contour& contour);

std::vector<Complex> integrate_forms(const SpectralCurve& curve,
                                     std::span<const RationalDifferential> forms,
                                     const Contour& contour, const QuadratureTolerance& tol = {});

Complex integrate_form(const SpectralCurve& curve, const RationalDifferential& form,
                       const Contour& contour, const QuadratureTolerance& tol = {});

/// Integral from the point at infinity on the sheet where mu > 0 for lambda > 0,
/// along the positive real axis down to `ray_end`, then through `waypoints`.
/// If the final waypoint is a branch point the last leg uses
/// lambda = E + (P - E)(1 - s)^2 to absorb the square-root endpoint.
struct OpenPathResult {
  std::vector<Complex> integrals;
  Complex end_mu;
};
OpenPathResult integrate_from_infinity(const SpectralCurve& curve,
                                       std::span<const RationalDifferential> forms,
                                       double ray_end, std::span<const Complex> waypoints,
                                       const QuadratureTolerance& tol = {});

/// Winding number of the lambda-projection of a closed contour about `center`.
int winding_number(const Contour& contour, Complex center);

/// Smallest distance from the contour to any finite branch point.
double contour_clearance(const SpectralCurve& curve, const Contour& contour);

/// Minimum clearance used for constructed contours: 1e-3 * min separation.
double required_clearance(const SpectralCurve& curve);

struct CycleBasis {
  std::vector<Contour> a;
  std::vector<Contour> b;
  std::vector<int> alpha;      ///< winding of lambda(a_j) about 0
  std::vector<int> beta;       ///< winding of lambda(b_j) about 0
  std::vector<int> alpha_odd;  ///< summed winding of lambda(a_j) about E_1, E_3, ...
  std::vector<int> beta_odd;
};

/// Raw a- and b-periods: entry (f, j) is the integral of forms[f] over cycle j.
struct PeriodTables {
  CMatrix a;
  CMatrix b;
};
PeriodTables period_tables(const SpectralCurve& curve, const CycleBasis& basis,
                           std::span<const RationalDifferential> forms,
                           const QuadratureTolerance& tol = {});

struct BasisOptions {
  QuadratureTolerance tolerance{};
  /// Test hook: reverse a_1 after orientation fixing so the self-check fails.
  bool inject_fault = false;
};

/// Self-check residuals of a cycle basis.
struct BasisCheck {
  double symmetry = 0.0;       ///< max |B - B^t|
  double min_eig_im = 0.0;     ///< smallest eigenvalue of Im B
  double real_part = 0.0;      ///< max |Re B + 1/2 diag(0, I)|
  bool windings_ok = false;    ///< alpha, beta exact; alpha', beta' parities match
  CMatrix riemann_matrix;
};

BasisCheck check_basis(const SpectralCurve& curve, const CycleBasis& basis,
                       const QuadratureTolerance& tol = {});

/// Winding data of a basis computed from its contours.
void fill_winding_data(const SpectralCurve& curve, CycleBasis& basis);

/// Cycle basis with the prescribed conjugation action: a_j (j <= m) encloses
/// [E_{2j-1}, 0], b_j (j <= m) the gap [E_{2j}, E_{2j-1}], a_j (j > m) the
/// vertical cut between a conjugate pair, b_j (j > m) the real cluster, every
/// pair to its left and the upper member of pair j. Orientation makes Im B_jj > 0.
/// Throws GeometryConflict or BasisSelfCheckFailed.
CycleBasis standard_cycle_basis(const SpectralCurve& curve, const BasisOptions& options = {});

/// Seed mu at a real start point: +sqrt(mu^2) if mu^2 > 0, else +i*sqrt(-mu^2).
Complex real_axis_seed(const SpectralCurve& curve, double lambda);

/// Normalized holomorphic basis from monomial periods: c * Pa = I, B = c * Pb.
/// The solve is equilibrated (row and column scaling); one step of residual
/// correction is applied when the equilibrated condition number exceeds 1e8.
struct Normalization {
  CMatrix c;
  CMatrix riemann;
  double condition = 0.0;
};

/// Throws SingularPeriodMatrix when the condition number exceeds 1e12.
Normalization normalize_periods(const CMatrix& pa, const CMatrix& pb);

}  // namespace fgsg
