#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "fitbo/priors.hpp"
#include "fitbo/types.hpp"
#include "fitbo/warped_model.hpp"

namespace fitbo {

// Log density of the observations under one whitened parameter vector:
// GP marginal likelihood of the transformed targets g = sqrt(2(y - eta))
// plus the change-of-variables Jacobian sum(log(1/g_i)). Conditioning
// failures surface as -inf so the sampler can step around them.
double log_likelihood(const Eigen::VectorXd& z, const Dataset& ds);

// Number of conditioning failures swallowed as -inf since process start;
// exposed for sampler diagnostics.
long conditioning_failure_count();

// One joint draw of (theta, eta) with its ready-to-query predictive state.
struct HyperSample {
    KernelHypers hypers;
    double eta;
    WarpedPosterior posterior;
};

// M joint posterior draws over a fixed dataset. Immutable after construction.
class HyperSampleSet {
public:
    HyperSampleSet(std::vector<HyperSample> samples, double y_min, int n, int dim)
        : samples_(std::move(samples)), y_min_(y_min), n_(n), dim_(dim) {
        if (samples_.empty()) {
            throw std::invalid_argument("HyperSampleSet: need at least one sample");
        }
    }

    const std::vector<HyperSample>& samples() const { return samples_; }
    int count() const { return static_cast<int>(samples_.size()); }
    double y_min() const { return y_min_; }
    int data_size() const { return n_; }
    int dim() const { return dim_; }

private:
    std::vector<HyperSample> samples_;
    double y_min_;
    int n_;
    int dim_;
};

struct SamplerOptions {
    int burn_in = 100;
    int thin = 2;
    // When set, the returned samples carry this observation noise instead of a
    // sampled one. The marginal likelihood of g does not involve sigma_n, so
    // pinning is exact.
    std::optional<double> fixed_noise_std;
};

// Default sample count for acquisition evaluation.
inline constexpr int kDefaultSampleCount = 400;

// Elliptical-slice chain over the whitened coordinates: burn_in discarded
// transitions, then M samples collected every `thin` transitions. Every
// returned eta lies strictly below min(y) by construction.
HyperSampleSet sample_posterior(const Dataset& ds, const PriorSpec& prior, int m,
                                const SamplerOptions& options, std::mt19937_64& rng);

inline HyperSampleSet sample_posterior(const Dataset& ds, const PriorSpec& prior, int m,
                                       std::mt19937_64& rng) {
    return sample_posterior(ds, prior, m, SamplerOptions{}, rng);
}

}  // namespace fitbo
