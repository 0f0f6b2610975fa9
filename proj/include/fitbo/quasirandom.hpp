#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace fitbo {

// Halton low-discrepancy points on [0,1)^d, optionally Cranley-Patterson
// rotated by `shift` (per-dimension offsets, taken mod 1).
Eigen::MatrixXd halton_points(int count, int dim, int skip = 1);

Eigen::MatrixXd halton_points_rotated(int count, int dim, const Eigen::VectorXd& shift,
                                      int skip = 1);

}  // namespace fitbo
