#include "fitbo/bo_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fitbo/quasirandom.hpp"

namespace fitbo {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Incumbent {
    Eigen::VectorXd x;
    double value = -std::numeric_limits<double>::infinity();

    void offer(const Eigen::VectorXd& candidate, double v) {
        if (v > value) {
            value = v;
            x = candidate;
        }
    }
};

}  // namespace

void Problem::validate_truth(int probes) const {
    if (!truth) {
        return;
    }
    const Eigen::MatrixXd points = halton_points(probes, dim);
    const double margin = 5.0 * noise_std;
    for (int i = 0; i < probes; ++i) {
        if (truth->f_min > objective(points.row(i).transpose()) + margin) {
            throw std::logic_error("Problem: claimed minimum beats the objective at a probe");
        }
    }
}

Problem make_problem(const BenchmarkSpec& spec, double noise_std) {
    Problem p;
    p.objective = [&spec](const Eigen::VectorXd& x) { return evaluate(spec, x); };
    p.dim = spec.dim;
    p.noise_std = noise_std;
    p.truth = Truth{spec.minimizers_unit, spec.f_min};
    return p;
}

Eigen::VectorXd maximize_acquisition(const BatchObjective& objective, int dim, int budget,
                                     std::mt19937_64& rng) {
    if (budget < 1) {
        throw std::invalid_argument("maximize_acquisition: budget must be >= 1");
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd shift(dim);
    for (int i = 0; i < dim; ++i) {
        shift(i) = unif(rng);
    }

    const int sweep = std::max(1, budget / 2);
    const Eigen::MatrixXd candidates = halton_points_rotated(sweep, dim, shift);
    const Eigen::VectorXd values = objective(candidates);

    constexpr int kStarts = 5;
    std::vector<int> order(sweep);
    for (int i = 0; i < sweep; ++i) {
        order[i] = i;
    }
    const int n_starts = std::min<int>(kStarts, sweep);
    std::partial_sort(order.begin(), order.begin() + n_starts, order.end(),
                      [&values](int a, int b) { return values(a) > values(b); });

    Incumbent best;
    for (int i = 0; i < sweep; ++i) {
        best.offer(candidates.row(i).transpose(), values(i));
    }

    // Coordinate pattern search from the top candidates, one batched
    // neighbourhood evaluation per step, shrinking once stuck.
    int remaining = budget - sweep;
    const int per_start = std::max(1, remaining / n_starts);
    for (int s = 0; s < n_starts && remaining > 0; ++s) {
        Eigen::VectorXd x = candidates.row(order[s]).transpose();
        double fx = values(order[s]);
        double step = 0.1;
        int local_budget = std::min(per_start, remaining);
        while (local_budget > 0 && step > 1e-9) {
            Eigen::MatrixXd trials(2 * dim, dim);
            for (int i = 0; i < dim; ++i) {
                trials.row(2 * i) = x.transpose();
                trials.row(2 * i + 1) = x.transpose();
                trials(2 * i, i) = std::clamp(x(i) + step, 0.0, 1.0);
                trials(2 * i + 1, i) = std::clamp(x(i) - step, 0.0, 1.0);
            }
            const Eigen::VectorXd fv = objective(trials);
            local_budget -= 2 * dim;
            remaining -= 2 * dim;
            Eigen::Index arg;
            const double best_trial = fv.maxCoeff(&arg);
            if (best_trial > fx) {
                x = trials.row(arg).transpose();
                fx = best_trial;
            } else {
                step *= 0.5;
            }
        }
        best.offer(x, fx);
    }
    return best.x;
}

Eigen::VectorXd recommend(const HyperSampleSet& hs, int budget, std::mt19937_64& rng) {
    BatchObjective negative_mean = [&hs](const Eigen::MatrixXd& points) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(points.rows());
        for (const HyperSample& sample : hs.samples()) {
            acc += sample.posterior.predict_f_mean_batch(points);
        }
        return Eigen::VectorXd(-acc / static_cast<double>(hs.count()));
    };
    return maximize_acquisition(negative_mean, hs.dim(), budget, rng);
}

double immediate_regret(const Eigen::VectorXd& recommendation, const Problem& problem) {
    if (!problem.truth) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::abs(problem.truth->f_min - problem.objective(recommendation));
}

double l2_distance(const Eigen::VectorXd& recommendation,
                   const std::optional<Truth>& truth) {
    if (!truth || truth->minimizers.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& xstar : truth->minimizers) {
        best = std::min(best, (xstar - recommendation).norm());
    }
    return best;
}

BOTrace run_bo(const Problem& problem, AcquisitionKind kind, int iters, int init_count,
               std::uint64_t seed, const RunOptions& options) {
    if (iters < 1 || init_count < 1) {
        throw std::invalid_argument("run_bo: need iters >= 1 and init_count >= 1");
    }
    const int d = problem.dim;
    const PriorSpec prior = options.prior ? *options.prior : PriorSpec::defaults(d);

    BOTrace trace;
    trace.benchmark = options.benchmark_label;
    trace.kind = to_string(kind);
    trace.seed = seed;
    trace.dim = d;
    trace.init_count = init_count;
    trace.m_samples = options.m_samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::MatrixXd X(init_count, d);
    Eigen::VectorXd y(init_count);
    for (int i = 0; i < init_count; ++i) {
        for (int j = 0; j < d; ++j) {
            X(i, j) = unif(rng);
        }
        try {
            y(i) = problem.objective(X.row(i).transpose()) + problem.noise_std * normal(rng);
        } catch (const std::exception& e) {
            trace.aborted = true;
            trace.error = std::string("objective failed during initialisation: ") + e.what();
            return trace;
        }
    }
    Dataset ds(X, y);

    SamplerOptions sampler_options;
    sampler_options.burn_in = options.burn_in;
    sampler_options.thin = options.thin;
    if (options.pin_noise) {
        sampler_options.fixed_noise_std = problem.noise_std;
    }

    for (int iter = 0; iter < iters; ++iter) {
        const auto t_sampling = std::chrono::steady_clock::now();
        HyperSampleSet hs =
            sample_posterior(ds, prior, options.m_samples, sampler_options, rng);
        IterationRecord record;
        record.sampling_seconds = seconds_since(t_sampling);

        const auto t_acq = std::chrono::steady_clock::now();
        BatchObjective acquisition = [&hs, kind, &options](const Eigen::MatrixXd& points) {
            const auto values = evaluate_batch(points, hs, kind, options.acq_params);
            Eigen::VectorXd v(points.rows());
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                v(i) = values[i].value;
            }
            return v;
        };
        record.query = maximize_acquisition(acquisition, d, options.acq_budget, rng);
        record.acq_opt_seconds = seconds_since(t_acq);

        try {
            record.observation =
                problem.objective(record.query) + problem.noise_std * normal(rng);
            ds.append(record.query, record.observation);
            record.recommendation = recommend(hs, options.acq_budget, rng);
            record.ir = immediate_regret(record.recommendation, problem);
            record.l2 = l2_distance(record.recommendation, problem.truth);
        } catch (const std::exception& e) {
            trace.aborted = true;
            trace.error = std::string("objective failed at iteration ") +
                          std::to_string(iter + 1) + ": " + e.what();
            return trace;
        }
        trace.records.push_back(std::move(record));
    }
    return trace;
}

}  // namespace fitbo
