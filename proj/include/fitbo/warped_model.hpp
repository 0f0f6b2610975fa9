#pragma once

#include <Eigen/Dense>

#include <memory>
#include <utility>

#include "fitbo/gp.hpp"
#include "fitbo/types.hpp"

namespace fitbo {

// Target transformation for the parabolic model y = eta + g^2/2:
//   g_i = sqrt(2 (y_i - eta)),  requires eta < min(y).
// The positive square-root branch is a canonical gauge; the latent posterior
// is symmetric under a global sign flip of g.
Eigen::VectorXd transform_targets(const Eigen::VectorXd& y, double eta);

// Per-hyperparameter-sample predictive state. The latent process g carries a
// zero-mean GP with jitter-only noise; observation noise lives entirely in
// y-space and re-enters through predict_y. Immutable once built.
class WarpedPosterior {
public:
    WarpedPosterior(std::shared_ptr<const Eigen::MatrixXd> X, const Eigen::VectorXd& y,
                    const KernelHypers& hypers, double eta);

    // Reuses a Cholesky factor of gram(X, hypers) + jitter*I computed elsewhere
    // (the likelihood evaluation already paid for it).
    WarpedPosterior(std::shared_ptr<const Eigen::MatrixXd> X, Eigen::VectorXd g,
                    const KernelHypers& hypers, double eta, CholFactor chol);

    // Linearisation of f = eta + g^2/2 around the posterior mode of g:
    //   m_f = eta + m_g^2/2,  v_f = m_g^2 v_g
    std::pair<double, double> predict_f(const Eigen::VectorXd& x) const;

    // Noisy-observation predictive: mean m_f, variance v_f + sigma_n^2.
    std::pair<double, double> predict_y(const Eigen::VectorXd& x) const;

    // Batch predict_y over the rows of Xstar.
    void predict_y_batch(const Eigen::MatrixXd& Xstar, Eigen::VectorXd& mean,
                         Eigen::VectorXd& var) const;

    // Batch marginal mean of f only (for posterior-mean minimisation).
    Eigen::VectorXd predict_f_mean_batch(const Eigen::MatrixXd& Xstar) const;

    double eta() const { return eta_; }
    const KernelHypers& hypers() const { return fit_.hypers; }
    double noise_var() const { return noise_var_; }
    const GpFit& fit() const { return fit_; }

private:
    GpFit fit_;
    double eta_;
    double noise_var_;
};

}  // namespace fitbo
