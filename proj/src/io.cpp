#include "fgsg/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fgsg/errors.hpp"

namespace fgsg {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpectralCurve parse_curve_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed curve JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("E") || !doc["E"].is_array())
    throw Error(ErrorKind::InvalidInput, "curve JSON needs an array field \"E\"");
  std::vector<Complex> E;
  for (const auto& item : doc["E"]) {
    if (item.is_number()) {
      E.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      E.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw Error(ErrorKind::InvalidInput, "each entry of \"E\" must be a number or [re, im], got " + item.dump());
    }
  }
  return build_curve(E);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const CMatrix& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json vector_to_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json curve_to_json(const SpectralCurve& curve) {
  json E = json::array();
  for (const auto& e : curve.branch_points()) E.push_back(complex_to_json(e));
  return {{"E", E}, {"g", curve.genus()}, {"m", curve.real_pairs()}};
}

json periods_to_json(const PeriodData& d) {
  const auto& r = d.residuals;
  json res = {{"symmetry", r.symmetry},   {"min_eig_im_B", r.min_eig_im}, {"real_part", r.real_part},
              {"imag_UV", r.imag_uv},     {"condition", r.condition}};
  res["A0"] = r.half_period >= 0.0 ? json(r.half_period) : json(nullptr);
  res["K"] = r.riemann >= 0.0 ? json(r.riemann) : json(nullptr);
  return {{"g", d.g},
          {"m", d.m},
          {"B", matrix_to_json(d.B)},
          {"U", vector_to_json(d.U)},
          {"V", vector_to_json(d.V)},
          {"A0", vector_to_json(d.A0)},
          {"K", vector_to_json(d.K)},
          {"omega0_sign", d.omega0_sign},
          {"residuals", res}};
}

json charge_to_json(const ChargeReport& r) {
  json out = {{"s", r.s},
              {"n", r.n},
              {"deviations", r.deviations},
              {"deviations_reduced", r.deviations_reduced},
              {"theorem", r.theorem},
              {"density_formula", r.density_formula}};
  out["density_empirical"] = r.has_empirical ? json(r.density_empirical) : json(nullptr);
  out["window"] = r.has_empirical ? json(r.window) : json(nullptr);
  return out;
}

json contours_to_json(const CycleBasis& basis, int points_per_segment) {
  auto polyline = [&](const Contour& c) {
    json pts = json::array();
    for (std::size_t s = 0; s < c.size(); ++s)
      for (int k = 0; k < points_per_segment; ++k)
        pts.push_back(complex_to_json(c.point(static_cast<double>(s) + static_cast<double>(k) / points_per_segment)));
    pts.push_back(complex_to_json(c.end()));
    return pts;
  };
  json a = json::array(), b = json::array();
  for (const auto& c : basis.a) a.push_back(polyline(c));
  for (const auto& c : basis.b) b.push_back(polyline(c));
  return {{"a", a}, {"b", b}, {"alpha", basis.alpha}, {"beta", basis.beta}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples) {
  os << "x,t,re_eiu,im_eiu,u\n";
  for (const auto& s : samples)
    os << format_double(s.x) << ',' << format_double(s.t) << ',' << format_double(s.e_iu.real()) << ','
       << format_double(s.e_iu.imag()) << ',' << format_double(s.u) << '\n';
}

void write_multiscale_csv(std::ostream& os, const MultiscaleSweep& sweep, bool with_matrix) {
  const Eigen::Index g = sweep.b_inf.rows();
  os << "k,deviation,off_diagonal,real_part";
  if (with_matrix)
    for (Eigen::Index r = 0; r < g; ++r)
      for (Eigen::Index c = 0; c < g; ++c) os << ",absdiff_" << r + 1 << '_' << c + 1;
  os << '\n';
  for (const auto& e : sweep.entries) {
    os << format_double(e.k) << ',' << format_double(e.deviation) << ',' << format_double(e.off_diagonal) << ','
       << format_double(e.real_part);
    if (with_matrix)
      for (Eigen::Index r = 0; r < g; ++r)
        for (Eigen::Index c = 0; c < g; ++c) os << ',' << format_double(std::abs(e.B(r, c) - sweep.b_inf(r, c)));
    os << '\n';
  }
}

}  // namespace fgsg
