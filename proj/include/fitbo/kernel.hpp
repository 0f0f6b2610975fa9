#pragma once

#include <Eigen/Dense>

#include "fitbo/types.hpp"

namespace fitbo {

// k(x, x') = s_f^2 exp(-1/2 sum_i (x_i - x'_i)^2 / l_i^2)
inline double kernel_se(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                        const KernelHypers& h) {
    if (x.size() != x2.size() || x.size() != h.log_lengthscales.size()) {
        throw std::invalid_argument("kernel_se: dimension mismatch");
    }
    const Eigen::ArrayXd inv_l = (-h.log_lengthscales.array()).exp();
    const double r2 = ((x - x2).array() * inv_l).square().sum();
    return std::exp(2.0 * h.log_outputscale - 0.5 * r2);
}

// Gram matrix K(X, X); symmetric by construction.
Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const KernelHypers& h);

// Cross-covariance K(X, Xstar) with X n x d and Xstar b x d; returns n x b.
Eigen::MatrixXd cross_gram(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xstar,
                           const KernelHypers& h);

// Covariance vector K(X, x) for a single test input.
Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& X, const Eigen::VectorXd& x,
                              const KernelHypers& h);

}  // namespace fitbo
