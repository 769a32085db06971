#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace fgsg {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using IVector = Eigen::VectorXi;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace fgsg
