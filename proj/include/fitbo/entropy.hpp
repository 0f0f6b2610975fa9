#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace fitbo {

// Equally weighted univariate Gaussian mixture, the marginal predictive
// p(y | D, x) after Monte-Carlo hyperparameter marginalisation.
struct GaussianMixture1D {
    Eigen::VectorXd means;
    Eigen::VectorXd variances;

    int components() const { return static_cast<int>(means.size()); }

    void validate() const {
        if (means.size() != variances.size() || means.size() < 1) {
            throw std::invalid_argument("GaussianMixture1D: need matching means/variances");
        }
        if ((variances.array() < 0.0).any()) {
            throw std::invalid_argument("GaussianMixture1D: variances must be >= 0");
        }
    }
};

// 1/2 log(2 pi e v); throws std::domain_error for v <= 0.
double gaussian_entropy(double variance);

// Mixture mean and variance. The variance is evaluated in centred form,
// avg(K_j) + avg((m_j - mean)^2), which is exact for a single component.
std::pair<double, double> gmm_moments(const GaussianMixture1D& gm);

// Moment-matched entropy: the entropy of a Gaussian with the mixture's first
// two moments. An upper bound on the true mixture entropy.
double gmm_entropy_mm(const GaussianMixture1D& gm);

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double a, double b, const std::string& what)
        : std::runtime_error(what), a_(a), b_(b) {}
    double interval_lo() const { return a_; }
    double interval_hi() const { return b_; }

private:
    double a_, b_;
};

// -Integral of p log p by adaptive Simpson quadrature with Richardson error
// control, over the union window [min_j(m_j - 8 s_j), max_j(m_j + 8 s_j)].
// Subdivision stops once the per-interval error estimate drops below its
// share of rel_tol * |integral| (absolute floor 1e-10). A component with
// zero variance is a point mass: the differential entropy is -inf.
double gmm_entropy_quadrature(const GaussianMixture1D& gm, double rel_tol = 1e-6);

}  // namespace fitbo
