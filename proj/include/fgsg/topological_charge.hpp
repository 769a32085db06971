#pragma once

#include <functional>
#include <vector>

#include "fgsg/sg_solution.hpp"

namespace fgsg {

struct WindingResult {
  double raw = 0.0;     ///< (1/2 pi) * total unwrapped phase change
  int samples = 0;      ///< samples used on [0, 1]
};

/// Winding of f(T) on T in [0, 1] by phase unwrapping: 512 samples, doubled
/// until every step is below pi/4 (at most 2^16, else UnwrapGap).
WindingResult winding_of(const std::function<Complex(double)>& f);

struct ChargeValue {
  int n = 0;
  double deviation = 0.0;
  double raw = 0.0;
};

/// Winding of e^{iu} along z_j(T) = -A(D) - T e_j - K. Throws NonInteger.
ChargeValue basic_charge_def(const SolutionContext& ctx, const TorusPoint& tp, int j);

/// -eps~_j + 2 * winding of theta(B eps~/2 + z_j(T)) / theta(z_j(T)),
/// eps~_j = (-1)^j s_j for j <= m, 0 otherwise.
ChargeValue basic_charge_reduced(const SolutionContext& ctx, const TorusPoint& tp, int j);

/// n_j = (-1)^{j-1} s_j for j <= m, 0 for j > m.
std::vector<int> theorem_charges(const std::vector<int>& s, int m, int g);

/// g = m = 1 only: -s1 + 2 * winding of
/// theta(-T - 1/2 - s1 tau/4 + s1 tau/2) / theta(-T - 1/2 - s1 tau/4).
ChargeValue tilde_charge_elliptic(const SolutionContext& ctx, int s1);

/// sum_j (U_j - V_j) n_j / 4
double charge_density(const PeriodData& periods, const std::vector<int>& n);

/// (u(x + T, t) - u(x, t)) / (2 pi T) along an unwrapped path.
double empirical_density(const Solution& sol, double window, double t = 0.0, double x = 0.0);

struct ChargeOptions {
  bool empirical = false;
  double window = 200.0;
  double t = 0.0;
};

struct ChargeReport {
  std::vector<int> s;
  std::vector<int> n;
  std::vector<double> deviations;          ///< winding of e^{iu}
  std::vector<double> deviations_reduced;  ///< reduced formula
  std::vector<int> theorem;
  double density_formula = 0.0;
  bool has_empirical = false;
  double density_empirical = 0.0;
  double window = 0.0;
};

/// Both winding formulas for every j (in parallel). Throws MismatchWithDefinition
/// if they disagree and NonInteger if a winding is off an integer by > 1e-3.
ChargeReport charge_report(const SolutionContext& ctx, const TorusPoint& tp, const ChargeOptions& options = {});

}  // namespace fgsg
