#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fitbo/priors.hpp"

namespace fitbo {

// One elliptical slice sampling transition for a diagonal Gaussian prior.
//
// Murray, Adams & MacKay, "Elliptical slice sampling", AISTATS 2010.
//
// Rejection-free: the angle bracket shrinks towards the current state, which
// is always acceptable, so the loop terminates. `loglik` of the current state
// is passed in and replaced by the new state's value to avoid re-evaluation.
template <typename Loglik>
Eigen::VectorXd ess_step(const Eigen::VectorXd& current, double& current_loglik,
                         const PriorSpec& prior, Loglik&& loglik, std::mt19937_64& rng) {
    constexpr double tau = 2.0 * std::numbers::pi;
    if (!std::isfinite(current_loglik)) {
        throw std::invalid_argument("ess_step: current log-likelihood must be finite");
    }

    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd nu(current.size());
    for (Eigen::Index i = 0; i < nu.size(); ++i) {
        nu(i) = prior.mean(i) + prior.stddev(i) * normal(rng);
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_threshold = current_loglik + std::log(unif(rng));

    double theta = unif(rng) * tau;
    double theta_min = theta - tau;
    double theta_max = theta;

    const Eigen::VectorXd centered = current - prior.mean;
    const Eigen::VectorXd centered_nu = nu - prior.mean;
    while (true) {
        Eigen::VectorXd proposal =
            prior.mean + std::cos(theta) * centered + std::sin(theta) * centered_nu;
        const double proposal_loglik = loglik(proposal);
        if (proposal_loglik > log_threshold) {
            current_loglik = proposal_loglik;
            return proposal;
        }
        if (theta < 0.0) {
            theta_min = theta;
        } else {
            theta_max = theta;
        }
        if (theta_max - theta_min < 1e-12) {
            throw std::runtime_error("ess_step: slice bracket collapsed below 1e-12 radians");
        }
        theta = theta_min + unif(rng) * (theta_max - theta_min);
    }
}

}  // namespace fitbo
