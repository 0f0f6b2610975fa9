#pragma once

#include <Eigen/Dense>

#include <memory>
#include <utility>

#include "fitbo/cholesky.hpp"
#include "fitbo/kernel.hpp"
#include "fitbo/types.hpp"

namespace fitbo {

// Fitted state of the latent zero-mean GP: Cholesky factor of the jittered
// Gram matrix and the precomputed solve against the targets. Immutable after
// construction, so predictive queries are safe to share across threads.
struct GpFit {
    std::shared_ptr<const Eigen::MatrixXd> X;  // training inputs, shared across samples
    KernelHypers hypers;
    CholFactor chol;
    Eigen::VectorXd targets;
    Eigen::VectorXd alpha;  // (K + jitter*I)^{-1} targets

    int size() const { return static_cast<int>(X->rows()); }
};

GpFit fit_gp(std::shared_ptr<const Eigen::MatrixXd> X, const Eigen::VectorXd& targets,
             const KernelHypers& hypers);

// Variant that reuses an already-computed factor of gram(X) + jitter*I.
GpFit fit_gp(std::shared_ptr<const Eigen::MatrixXd> X, const Eigen::VectorXd& targets,
             const KernelHypers& hypers, CholFactor chol);

// Posterior mean and variance of the latent process at x:
//   m(x) = k(x,X) alpha,  v(x) = k(x,x) - ||L^{-1} k(x,X)||^2
// Negative round-off variances are clamped at zero.
std::pair<double, double> posterior_g(const GpFit& fit, const Eigen::VectorXd& x);

// Batch variant over the rows of Xstar (b x d); one triangular solve with b
// right-hand sides instead of b separate solves.
void posterior_g_batch(const GpFit& fit, const Eigen::MatrixXd& Xstar,
                       Eigen::VectorXd& mean, Eigen::VectorXd& var);

}  // namespace fitbo
