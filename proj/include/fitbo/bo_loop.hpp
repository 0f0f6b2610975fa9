#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fitbo/acquisition.hpp"
#include "fitbo/benchmarks.hpp"
#include "fitbo/hyper_posterior.hpp"

namespace fitbo {

struct Truth {
    std::vector<Eigen::VectorXd> minimizers;  // unit-cube coordinates
    double f_min;
};

// A minimisation problem on the unit hypercube. `objective` is noise-free;
// the loop adds Gaussian observation noise itself.
struct Problem {
    std::function<double(const Eigen::VectorXd&)> objective;
    int dim = 0;
    double noise_std = std::sqrt(1e-3);
    std::optional<Truth> truth;

    // Sanity probe: the claimed minimum must not beat the objective by more
    // than the noise margin anywhere we look.
    void validate_truth(int probes = 128) const;
};

Problem make_problem(const BenchmarkSpec& spec, double noise_std = std::sqrt(1e-3));

struct IterationRecord {
    Eigen::VectorXd query;
    double observation = 0.0;
    Eigen::VectorXd recommendation;
    double ir = std::numeric_limits<double>::quiet_NaN();  // NaN = truth unavailable
    double l2 = std::numeric_limits<double>::quiet_NaN();
    double sampling_seconds = 0.0;
    double acq_opt_seconds = 0.0;
    std::int64_t objective_evals = 1;
};

struct BOTrace {
    std::string benchmark;  // empty for ad-hoc problems
    std::string kind;
    std::uint64_t seed = 0;
    int dim = 0;
    int init_count = 0;
    int m_samples = 0;
    std::vector<IterationRecord> records;
    bool aborted = false;
    std::string error;
};

struct RunOptions {
    int m_samples = 200;
    int burn_in = 100;
    int thin = 2;
    int acq_budget = 2000;
    bool pin_noise = false;  // pin sigma_n to Problem::noise_std instead of sampling it
    AcquisitionParams acq_params;
    std::optional<PriorSpec> prior;  // defaults to PriorSpec::defaults(dim)
    std::string benchmark_label;
};

// Batch objective on the unit cube: rows of the argument are points.
using BatchObjective = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

// Multi-start maximisation: a rotated low-discrepancy candidate sweep using
// half the budget, then coordinate pattern search from the best candidates
// with the remainder. Always returns the best point seen, inside the cube.
Eigen::VectorXd maximize_acquisition(const BatchObjective& objective, int dim, int budget,
                                     std::mt19937_64& rng);

// Minimiser of the marginal posterior mean (1/M) sum_j m_f^(j).
Eigen::VectorXd recommend(const HyperSampleSet& hs, int budget, std::mt19937_64& rng);

// |f(x*) - f(xhat)| with the noise-free objective; NaN when truth is absent.
double immediate_regret(const Eigen::VectorXd& recommendation, const Problem& problem);

// min over known global minimisers of ||x* - xhat||; NaN when truth is absent.
double l2_distance(const Eigen::VectorXd& recommendation, const std::optional<Truth>& truth);

// The outer loop: init_count uniform initial queries, then per iteration a
// fresh joint hyperparameter sample, acquisition maximisation, a noisy
// observation, and the posterior-mean recommendation plus metrics.
// Fully reproducible from the seed. An objective failure aborts with the
// partial trace preserved and `aborted` set.
BOTrace run_bo(const Problem& problem, AcquisitionKind kind, int iters, int init_count,
               std::uint64_t seed, const RunOptions& options = {});

}  // namespace fitbo
