#include "fitbo/hyper_posterior.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fitbo/cholesky.hpp"
#include "fitbo/ess.hpp"
#include "fitbo/gp.hpp"
#include "fitbo/kernel.hpp"

namespace fitbo {

namespace {

std::atomic<long> g_conditioning_failures{0};

struct LikelihoodEval {
    double loglik = -std::numeric_limits<double>::infinity();
    bool ok = false;
    Eigen::VectorXd g;
    CholFactor chol;
};

LikelihoodEval evaluate_likelihood(const Eigen::VectorXd& z, const Dataset& ds) {
    LikelihoodEval out;
    const int d = ds.dim();
    const KernelHypers h = hypers_from_whitened(z, d);
    const double eta = eta_from_whitened(z, d, ds.y_min());
    // exp(zeta) may overflow (eta = -inf) or underflow to 0 (eta == y_min);
    // both are zero-probability corners, rejected via -inf.
    if (!std::isfinite(eta) || !(eta < ds.y_min())) {
        return out;
    }
    out.g = transform_targets(ds.y(), eta);
    try {
        out.chol = cholesky_jitter(gram(ds.X(), h));
    } catch (const ConditioningError&) {
        g_conditioning_failures.fetch_add(1, std::memory_order_relaxed);
        return out;
    }
    const Eigen::Index n = ds.size();
    const Eigen::VectorXd v = out.chol.L.triangularView<Eigen::Lower>().solve(out.g);
    const double log_det_half = out.chol.L.diagonal().array().log().sum();
    const double quad = v.squaredNorm();
    const double jacobian = -out.g.array().log().sum();
    out.loglik = -0.5 * quad - log_det_half -
                 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + jacobian;
    out.ok = std::isfinite(out.loglik);
    if (!out.ok) {
        out.loglik = -std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace

double log_likelihood(const Eigen::VectorXd& z, const Dataset& ds) {
    return evaluate_likelihood(z, ds).loglik;
}

long conditioning_failure_count() { return g_conditioning_failures.load(); }

HyperSampleSet sample_posterior(const Dataset& ds, const PriorSpec& prior, int m,
                                const SamplerOptions& options, std::mt19937_64& rng) {
    if (m < 1) {
        throw std::invalid_argument("sample_posterior: need m >= 1");
    }
    prior.validate();
    if (prior.mean.size() != WhitenedLayout::size(ds.dim())) {
        throw std::invalid_argument("sample_posterior: prior must cover dim + 3 coordinates");
    }

    const int d = ds.dim();
    auto loglik = [&ds](const Eigen::VectorXd& z) { return log_likelihood(z, ds); };

    // Start at the prior mean; fall back to prior draws if it is degenerate.
    Eigen::VectorXd z = prior.mean;
    double z_loglik = loglik(z);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 64 && !std::isfinite(z_loglik); ++attempt) {
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            z(i) = prior.mean(i) + prior.stddev(i) * normal(rng);
        }
        z_loglik = loglik(z);
    }
    if (!std::isfinite(z_loglik)) {
        std::ostringstream msg;
        msg << "sample_posterior: no valid starting state after 64 prior draws (n=" << ds.size()
            << ", d=" << d << ", conditioning failures so far " << conditioning_failure_count()
            << ")";
        throw std::runtime_error(msg.str());
    }

    for (int i = 0; i < options.burn_in; ++i) {
        z = ess_step(z, z_loglik, prior, loglik, rng);
    }

    auto X = std::make_shared<const Eigen::MatrixXd>(ds.X());
    const int thin = options.thin < 1 ? 1 : options.thin;
    std::vector<HyperSample> samples;
    samples.reserve(m);
    for (int j = 0; j < m; ++j) {
        for (int t = 0; t < thin; ++t) {
            z = ess_step(z, z_loglik, prior, loglik, rng);
        }
        KernelHypers h = hypers_from_whitened(z, d);
        if (options.fixed_noise_std) {
            h.log_noise = std::log(*options.fixed_noise_std);
        }
        const double eta = eta_from_whitened(z, d, ds.y_min());
        // The chain only visits states whose factorisation succeeded, so this
        // reuses the same Gram factor the likelihood saw.
        LikelihoodEval eval = evaluate_likelihood(z, ds);
        samples.push_back(HyperSample{
            h, eta, WarpedPosterior(X, std::move(eval.g), h, eta, std::move(eval.chol))});
    }
    return HyperSampleSet(std::move(samples), ds.y_min(), ds.size(), d);
}

}  // namespace fitbo
