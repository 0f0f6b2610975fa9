#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fitbo/entropy.hpp"
#include "fitbo/hyper_posterior.hpp"

namespace fitbo {

enum class AcquisitionKind { FITBO, FITBO_MM, EI, PI, UCB };

const char* to_string(AcquisitionKind kind);
std::optional<AcquisitionKind> acquisition_kind_from_string(std::string_view name);

struct AcquisitionParams {
    double xi = 0.0;                      // incumbent margin for EI / PI
    double ucb_delta = 0.1;               // beta_n = 2 log(d n^2 pi^2 / (6 delta))
    std::optional<double> ucb_beta;       // explicit beta override
    double fitbo_rel_tol = 1e-6;          // quadrature tolerance for FITBO
};

struct AcquisitionValue {
    double value = 0.0;
    // Mixture entropy E1 and expected Gaussian entropy E2; NaN for baselines.
    double entropy_mixture = std::numeric_limits<double>::quiet_NaN();
    double entropy_expected = std::numeric_limits<double>::quiet_NaN();
};

// Information gain about the minimum: E1 - E2, where E1 is the entropy of the
// M-component predictive mixture at x and E2 the average per-sample Gaussian
// entropy. kind selects the E1 estimator (quadrature or moment matching).
AcquisitionValue fitbo_alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                             AcquisitionKind kind, const AcquisitionParams& params = {});

// EI / PI / UCB under the same M-sample marginalisation, as minimisation
// utilities (larger is better).
AcquisitionValue baseline_alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                                AcquisitionKind kind, const AcquisitionParams& params = {});

AcquisitionValue alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                       AcquisitionKind kind, const AcquisitionParams& params = {});

// Elementwise equal to single-point evaluation; amortises the per-sample
// posterior solves across the batch. Xstar is b x d.
std::vector<AcquisitionValue> evaluate_batch(const Eigen::MatrixXd& Xstar,
                                             const HyperSampleSet& hs, AcquisitionKind kind,
                                             const AcquisitionParams& params = {});

// Per-sample predictive components (means, variances) at each batch point;
// the building block shared by all acquisition kinds. Returns b x M matrices.
void predictive_components(const Eigen::MatrixXd& Xstar, const HyperSampleSet& hs,
                           Eigen::MatrixXd& means, Eigen::MatrixXd& vars);

}  // namespace fitbo
