#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fgsg/abelian_data.hpp"
#include "fgsg/contour_engine.hpp"
#include "fgsg/curve_model.hpp"
#include "fgsg/sg_solution.hpp"

namespace fixtures {

using fgsg::Complex;

inline std::string path(const std::string& name) { return std::string(FGSG_FIXTURE_DIR) + "/" + name; }

inline std::vector<Complex> points(const std::string& name) {
  static const std::map<std::string, std::vector<Complex>> table = {
      {"G1R", {-1.0, -2.0}},
      {"G1C", {Complex(1, 2), Complex(1, -2)}},
      {"G2M1", {-1.0, -2.0, Complex(1, 2), Complex(1, -2)}},
      {"G2M2", {-1.0, -2.0, -3.0, -4.0}},
      {"G3", {-1.0, -2.0, -3.0, -4.0, Complex(1, 2), Complex(1, -2)}},
  };
  return table.at(name);
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"G1R", "G1C", "G2M1", "G2M2", "G3"};
  return n;
}

struct Prepared {
  fgsg::SpectralCurve curve;
  fgsg::CycleBasis basis;
  fgsg::PeriodData periods;
  std::unique_ptr<fgsg::SolutionContext> ctx;
};

// Computed once per fixture and shared between test cases.
inline const Prepared& prepared(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Prepared>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[name];
  if (!slot) {
    slot = std::make_unique<Prepared>();
    slot->curve = fgsg::build_curve(points(name));
    slot->basis = fgsg::standard_cycle_basis(slot->curve);
    slot->periods = fgsg::compute_period_data(slot->curve, slot->basis);
    slot->ctx = std::make_unique<fgsg::SolutionContext>(slot->curve, slot->periods);
  }
  return *slot;
}

}  // namespace fixtures
