// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fgsg/cli.hpp"
#include "fgsg/errors.hpp"
#include "fgsg/multiscale.hpp"
#include "fgsg/topological_charge.hpp"
#include "../unit/support.hpp"

using namespace fgsg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

// Worst |A(tau P) + conj A(P)| mod lattice over 20 random points away from branch points.
double tau_symmetry(const fixtures::Prepared& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    const Complex lam(u(rng), u(rng));
    bool close = false;
    for (const auto& e : p.curve.finite_branch_points()) close = close || std::abs(lam - e) < 0.05;
    if (close) continue;
    const SheetPoint P = point_on_sheet(p.curve, lam, done % 2 ? 1 : -1);
    const CVector a = abel_map(p.curve, p.periods, P);
    const CVector at = abel_map(p.curve, p.periods, {std::conj(P.lambda), std::conj(P.mu)});
    worst = std::max(worst, lattice_distance(p.periods.B, at + a.conjugate()));
    ++done;
  }
  return worst;
}

void reality(Outcome& o) {
  for (const auto& name : fixtures::names()) {
    const auto& r = fixtures::prepared(name).periods.residuals;
    o.detail << " " << name << ":sym=" << r.symmetry << ",eig=" << r.min_eig_im << ",re=" << r.real_part;
    o.require(r.symmetry < 1e-8 && r.min_eig_im > 0.0 && r.real_part < 1e-6, name);
  }
}

void normalization(Outcome& o) {
  std::mt19937 rng(2024);
  for (const auto& name : fixtures::names()) {
    const auto& p = fixtures::prepared(name);
    const auto& r = p.periods.residuals;
    const double tau = tau_symmetry(p, rng);
    o.detail << " " << name << ":A0=" << r.half_period << ",K=" << r.riemann << ",tau=" << tau;
    o.require(r.half_period >= 0.0 && r.half_period < 1e-6 && r.riemann >= 0.0 && r.riemann < 1e-6 && tau < 1e-6, name);
  }
}

void theta_engine(Outcome& o) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> lat(-3, 3);
  double quasi = 0.0, grad = 0.0;
  for (const std::string name : {"G1C", "G2M1", "G3"}) {
    const CMatrix& B = fixtures::prepared(name).periods.B;
    const int g = static_cast<int>(B.rows());
    const ThetaContext ctx(B);
    for (int trial = 0; trial < 100; ++trial) {
      CVector z(g), N(g), M(g);
      for (int i = 0; i < g; ++i) {
        z(i) = Complex(u(rng), u(rng));
        N(i) = lat(rng);
        M(i) = lat(rng);
      }
      const ThetaValue lhs = ctx.theta_scaled(z + N + B * M);
      const Complex rhs = std::exp(-kPi * kI * (2.0 * M.dot(z) + M.dot(B * M))) * ctx.theta(z);
      quasi = std::max(quasi, std::abs(lhs.value() - rhs) / std::abs(std::exp(lhs.log_scale)));
      if (trial < 20) {
        const CVector gr = ctx.theta_gradient(z);
        const double h = 1e-5;
        for (int k = 0; k < g; ++k) {
          CVector e = CVector::Zero(g);
          e(k) = h;
          const Complex fd = (ctx.theta(z + e) - ctx.theta(z - e)) / (2.0 * h);
          grad = std::max(grad, std::abs(gr(k) - fd) / std::max(std::abs(fd), gr.norm()));
        }
      }
    }
  }
  // diag(B_G1C, B_G2M2) against the product of the factors
  const CMatrix& B1 = fixtures::prepared("G1C").periods.B;
  const CMatrix& B2 = fixtures::prepared("G2M2").periods.B;
  CMatrix B = CMatrix::Zero(3, 3);
  B.block(0, 0, 1, 1) = B1;
  B.block(1, 1, 2, 2) = B2;
  const ThetaContext c(B), c1(B1), c2(B2);
  double block = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    CVector z(3);
    for (int i = 0; i < 3; ++i) z(i) = Complex(u(rng), u(rng));
    const ThetaValue full = c.theta_scaled(z);
    const Complex prod = c1.theta(z.head(1)) * c2.theta(z.tail(2));
    block = std::max(block, std::abs(full.value() - prod) / std::abs(std::exp(full.log_scale)));
  }
  o.detail << " quasi=" << quasi << " block=" << block << " grad_rel=" << grad;
  o.require(quasi < 1e-10, "quasi-periodicity");
  o.require(block < 1e-10, "factorization");
  o.require(grad < 1e-6, "gradient");
}

void solution_validity(Outcome& o) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0), coord(-20.0, 20.0);
  for (const auto& name : fixtures::names()) {
    const auto& p = fixtures::prepared(name);
    const int g = p.ctx->genus(), m = p.ctx->real_pairs();
    double modulus = 0.0, residual = 0.0;
    for (const auto& s : all_types(m)) {
      for (int probe = 0; probe < 50; ++probe) {
        RVector x0(g);
        for (int i = 0; i < g; ++i) x0(i) = unit(rng);
        const Solution sol(*p.ctx, make_torus_point(g, m, s, x0));
        const double x = coord(rng), t = coord(rng);
        modulus = std::max(modulus, std::abs(std::abs(sol.e_iu(x, t)) - 1.0));
        residual = std::max(residual, sol.pde_residual(x, t, 1e-3));
      }
    }
    o.detail << " " << name << ":mod=" << modulus << ",pde=" << residual;
    o.require(modulus < 1e-6 && residual < 1e-4, name);
  }
}

void charges(Outcome& o) {
  for (const auto& name : fixtures::names()) {
    const auto& p = fixtures::prepared(name);
    const int g = p.ctx->genus(), m = p.ctx->real_pairs();
    double worst = 0.0;
    bool ok = true;
    for (const auto& s : all_types(m)) {
      try {
        const auto r = charge_report(*p.ctx, make_torus_point(g, m, s, RVector::Constant(g, 0.31)));
        for (double d : r.deviations) worst = std::max(worst, d);
        for (double d : r.deviations_reduced) worst = std::max(worst, d);
        ok = ok && r.n == theorem_charges(s, m, g);
      } catch (const Error& e) {
        ok = false;
        o.detail << " " << e.what();
      }
    }
    o.detail << " " << name << ":dev=" << worst;
    o.require(ok && worst < 1e-3, name);
  }
  const auto& e = fixtures::prepared("G1R");
  for (int s1 : {1, -1}) {
    const auto n1 = charge_report(*e.ctx, make_torus_point(1, 1, {s1}, RVector::Zero(1))).n;
    const auto tilde = tilde_charge_elliptic(*e.ctx, s1);
    o.detail << " s1=" << s1 << ":n1=" << n1[0] << ",tilde=" << tilde.n;
    o.require(n1[0] == s1 && tilde.n == -s1 && tilde.deviation < 1e-3, "elliptic s1=" + std::to_string(s1));
  }
}

void density(Outcome& o) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double window = 200.0, bound = 2.0 / window + 1e-3;
  for (const std::string name : {"G2M1", "G2M2"}) {
    const auto& p = fixtures::prepared(name);
    const int g = p.ctx->genus(), m = p.ctx->real_pairs();
    double worst = 0.0;
    for (const auto& s : all_types(m)) {
      for (int trial = 0; trial < 3; ++trial) {
        RVector x0(g);
        for (int i = 0; i < g; ++i) x0(i) = unit(rng);
        const Solution sol(*p.ctx, make_torus_point(g, m, s, x0));
        const double formula = charge_density(p.periods, theorem_charges(s, m, g));
        worst = std::max(worst, std::abs(formula - empirical_density(sol, window)));
      }
    }
    o.detail << " " << name << ":diff=" << worst;
    o.require(worst <= bound, name);
  }
  o.detail << " bound=" << bound;
}

void multiscale(Outcome& o) {
  const std::vector<double> ks{1.0, 4.0, 16.0, 64.0, 256.0};
  for (const std::string name : {"G2M1", "G3"}) {
    const auto& p = fixtures::prepared(name);
    SweepOptions so;
    so.enforce_monotone = false;
    const auto sweep = convergence_sweep(p.curve, ks, so);
    bool decreasing = true, off_decreasing = true;
    o.detail << " " << name << ":dev=";
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
      o.detail << (i ? "," : "") << sweep.entries[i].deviation;
      if (i) {
        decreasing = decreasing && sweep.entries[i].deviation < sweep.entries[i - 1].deviation;
        off_decreasing = off_decreasing && sweep.entries[i].off_diagonal < sweep.entries[i - 1].off_diagonal;
      }
    }
    const double ratio = sweep.entries[4].deviation / sweep.entries[1].deviation;
    o.detail << " ratio=" << ratio << " off256=" << sweep.entries[4].off_diagonal;
    o.require(decreasing, name + " monotone");
    o.require(ratio < 0.25, name + " ratio");
    o.require(off_decreasing, name + " off-diagonal");

    const int g = p.curve.genus(), m = p.curve.real_pairs();
    bool same = true;
    for (double k : ks) {
      const SpectralCurve curve = deformed_curve(p.curve, k);
      const CycleBasis basis = scaled_cycle_basis(p.curve, p.basis, k);
      const SolutionContext ctx(curve, compute_period_data(curve, basis));
      for (const auto& s : all_types(m)) {
        const auto r = charge_report(ctx, make_torus_point(g, m, s, RVector::Constant(g, 0.31)));
        same = same && r.n == theorem_charges(s, m, g);
      }
    }
    o.require(same, name + " charges across k");
  }
}

void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> commands = {
      {"periods", fixtures::path("g3.json")},
      {"grid", fixtures::path("g2m1.json"), "--s", "-", "--x0", "0.2,0.7", "--x", "0:5:0.25", "--t", "0:2:0.5"},
      {"charge", fixtures::path("g2m2.json"), "--s", "+-", "--empirical", "--window", "50"},
      {"multiscale", fixtures::path("g2m1.json"), "--k", "1,4,16", "--matrix"},
  };
  for (const auto& cmd : commands) {
    std::vector<std::string> args{"--reference-mode"};
    args.insert(args.end(), cmd.begin(), cmd.end());
    std::ostringstream out1, err1, out2, err2;
    const int c1 = run_cli(args, out1, err1);
    const int c2 = run_cli(args, out2, err2);
    const bool same = c1 == 0 && c2 == 0 && out1.str() == out2.str() && !out1.str().empty();
    o.detail << " " << cmd[0] << ":" << (same ? "identical" : "differs") << "(" << out1.str().size() << " bytes)";
    o.require(same, cmd[0]);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"reality structure", reality},     {"normalization identities", normalization},
      {"theta engine", theta_engine},     {"solution validity", solution_validity},
      {"charge theorem", charges},        {"density consistency", density},
      {"multiscale limit", multiscale},   {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << secs << " s):"
              << o.detail.str() << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
