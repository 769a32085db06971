#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fgsg/abelian_data.hpp"
#include "fgsg/multiscale.hpp"
#include "fgsg/sg_solution.hpp"
#include "fgsg/topological_charge.hpp"

namespace fgsg {

/// Parses { "E": [[re, im], ...] } (plain numbers allowed for real points).
/// Throws InvalidInput with parse diagnostics, or the curve_model errors.
SpectralCurve parse_curve_json(std::string_view text);
std::string read_file(const std::string& path);

/// Canonical order plus derived g and m.
nlohmann::json curve_to_json(const SpectralCurve& curve);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const CMatrix& M);  ///< row-major [[re, im], ...] rows
nlohmann::json vector_to_json(const CVector& v);
nlohmann::json vector_to_json(const RVector& v);

nlohmann::json periods_to_json(const PeriodData& data);
nlohmann::json charge_to_json(const ChargeReport& report);
nlohmann::json contours_to_json(const CycleBasis& basis, int points_per_segment = 16);

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples);
void write_multiscale_csv(std::ostream& os, const MultiscaleSweep& sweep, bool with_matrix);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace fgsg
