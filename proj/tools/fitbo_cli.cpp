// fitbo command-line harness: optimisation runs and acquisition runtime
// benchmarks, emitting machine-readable CSV / JSONL artifacts.
//
// Talks to the library exclusively through the C API in fitbo/fitbo.h.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fitbo/fitbo.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

constexpr const char* kAggregateSchema = "fitbo-aggregate-v1";
constexpr const char* kRuntimeSchema = "fitbo-runtime-v1";

struct RepResult {
    bool ok = false;
    std::string error;
    std::vector<double> ir;
    std::vector<double> l2;
    std::string jsonl;
};

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        return std::nan("");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * (values.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

// Runs jobs 0..count-1 on a small worker pool; results land in slots indexed
// by job, so output order never depends on scheduling.
template <typename Fn>
void run_pool(int count, int workers, Fn&& fn) {
    workers = std::max(1, std::min(workers, count));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&next, count, &fn] {
            for (int job = next.fetch_add(1); job < count; job = next.fetch_add(1)) {
                fn(job);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

int fail_runtime(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitRuntime;
}

std::string default_out_dir() {
    const char* env = std::getenv("FITBO_OUT_DIR");
    return env != nullptr ? env : ".";
}

// ---------------------------------------------------------------------------
// run: repeated optimisation runs plus per-iteration median aggregation
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string benchmark = "branin";
    std::vector<std::string> acq = {"FITBO"};
    int iters = 80;
    int reps = 20;
    int samples = 200;
    int init = -1;  // -1: 3 for d<=2 problems, 9 for hartmann6
    std::uint64_t seed = 1;
    int budget = 2000;
    int burn_in = 100;
    int thin = 2;
    double noise_std = std::sqrt(1e-3);
    bool pin_noise = false;
    bool paper_scale = false;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string out = default_out_dir();
};

int cmd_run(const RunConfig& config) {
    fitbo_problem* problem = nullptr;
    if (fitbo_problem_create_benchmark(config.benchmark.c_str(), config.noise_std,
                                       &problem) != FITBO_OK) {
        std::cerr << "error: " << fitbo_last_error() << "\n";
        return kExitUsage;
    }
    int dim = 0;
    fitbo_problem_dim(problem, &dim);
    const int init_count = config.init > 0 ? config.init : (dim >= 6 ? 9 : 3);
    const int reps = config.paper_scale ? std::max(config.reps, 40) : config.reps;

    std::error_code ec;
    fs::create_directories(config.out, ec);

    int exit_code = 0;
    for (const std::string& acq_name : config.acq) {
        fitbo_acq_kind kind;
        if (fitbo_acq_kind_parse(acq_name.c_str(), &kind) != FITBO_OK) {
            std::cerr << "error: " << fitbo_last_error() << "\n";
            fitbo_problem_destroy(problem);
            return kExitUsage;
        }

        std::vector<RepResult> results(reps);
        run_pool(reps, config.workers, [&](int rep) {
            RepResult& r = results[static_cast<size_t>(rep)];
            fitbo_trace* trace = nullptr;
            const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(rep);
            if (fitbo_run_bo(problem, kind, config.iters, init_count, config.samples,
                             config.burn_in, config.thin, config.budget, seed,
                             config.pin_noise ? 1 : 0, &trace) != FITBO_OK) {
                r.error = fitbo_last_error();
                return;
            }
            int aborted = 0;
            fitbo_trace_aborted(trace, &aborted);
            int length = 0;
            fitbo_trace_length(trace, &length);
            r.ir.resize(length);
            r.l2.resize(length);
            for (int i = 0; i < length; ++i) {
                fitbo_trace_record(trace, i, nullptr, nullptr, nullptr, &r.ir[i], &r.l2[i],
                                   nullptr, nullptr);
            }
            char* text = nullptr;
            if (fitbo_trace_to_jsonl(trace, &text) == FITBO_OK) {
                r.jsonl = text;
                fitbo_string_free(text);
            }
            r.ok = aborted == 0 && length == config.iters;
            if (aborted != 0) {
                r.error = "run aborted";
            }
            fitbo_trace_destroy(trace);
        });

        // Single writer, deterministic order.
        int failures = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const RepResult& r = results[static_cast<size_t>(rep)];
            if (!r.ok) {
                ++failures;
                std::cerr << "warning: " << config.benchmark << "/" << acq_name << " rep "
                          << rep << " failed: " << r.error << "\n";
                continue;
            }
            const fs::path trace_path =
                fs::path(config.out) / ("trace_" + config.benchmark + "_" + acq_name +
                                        "_rep" + std::to_string(rep) + ".jsonl");
            std::ofstream out(trace_path, std::ios::trunc);
            out << r.jsonl;
        }
        if (failures == reps) {
            fitbo_problem_destroy(problem);
            return fail_runtime("all repetitions failed for " + acq_name);
        }
        if (failures > 0) {
            exit_code = std::max(exit_code, 0);  // partial failures are recorded, not fatal
        }

        const fs::path agg_path =
            fs::path(config.out) / ("aggregate_" + config.benchmark + "_" + acq_name +
                                    ".csv");
        std::ofstream agg(agg_path, std::ios::trunc);
        agg << "# " << kAggregateSchema << " benchmark=" << config.benchmark
            << " acq=" << acq_name << " reps=" << reps << " init=" << init_count
            << " samples=" << config.samples << " seed=" << config.seed << "\n";
        agg << "iteration,median_IR,iqr_IR,median_L2,iqr_L2\n";
        for (int i = 0; i < config.iters; ++i) {
            std::vector<double> ir, l2;
            for (const RepResult& r : results) {
                if (r.ok) {
                    ir.push_back(r.ir[static_cast<size_t>(i)]);
                    l2.push_back(r.l2[static_cast<size_t>(i)]);
                }
            }
            agg << (i + 1) << "," << format_double(quantile(ir, 0.5)) << ","
                << format_double(quantile(ir, 0.75) - quantile(ir, 0.25)) << ","
                << format_double(quantile(l2, 0.5)) << ","
                << format_double(quantile(l2, 0.75) - quantile(l2, 0.25)) << "\n";
        }
        std::cout << config.benchmark << "/" << acq_name << ": " << (reps - failures) << "/"
                  << reps << " runs ok, aggregate " << agg_path.string() << "\n";
    }
    fitbo_problem_destroy(problem);
    return exit_code;
}

// ---------------------------------------------------------------------------
// bench-runtime: acquisition batch-evaluation timing protocol
// ---------------------------------------------------------------------------

struct BenchConfig {
    std::vector<std::string> acq = {"FITBO", "FITBO_MM", "EI", "PI", "UCB"};
    std::vector<int> m_list = {100, 300, 500, 700, 900};
    std::vector<int> d_list = {2};
    int reps = 20;
    int n_obs = 10;
    int n_test = 100;
    std::uint64_t seed = 1;
    bool paper_scale = false;
    std::string out = (fs::path(default_out_dir()) / "runtime.csv").string();
};

// Smooth synthetic objective for arbitrary dimension, used only to produce
// observation data for the timing fits.
double synthetic_objective(const double* x, int d) {
    double value = 0.0;
    for (int j = 0; j < d; ++j) {
        value += std::sin(3.0 * x[j]) + 0.5 * (x[j] - 0.4) * (x[j] - 0.4);
    }
    return value;
}

int cmd_bench_runtime(const BenchConfig& config) {
    const int reps = config.paper_scale ? std::max(config.reps, 100) : config.reps;

    std::vector<fitbo_acq_kind> kinds;
    for (const std::string& name : config.acq) {
        fitbo_acq_kind kind;
        if (fitbo_acq_kind_parse(name.c_str(), &kind) != FITBO_OK) {
            std::cerr << "error: " << fitbo_last_error() << "\n";
            return kExitUsage;
        }
        kinds.push_back(kind);
    }

    if (!fs::path(config.out).parent_path().empty()) {
        std::error_code ec;
        fs::create_directories(fs::path(config.out).parent_path(), ec);
    }
    std::ofstream out(config.out, std::ios::trunc);
    if (!out) {
        return fail_runtime("cannot write " + config.out);
    }
    out << "# " << kRuntimeSchema << " n_obs=" << config.n_obs << " n_test=" << config.n_test
        << " reps=" << reps << " seed=" << config.seed << "\n";
    out << "kind,M,d,reps,mean_seconds,std_seconds\n";

    // Timing runs stay on one worker by design: no timer contention.
    for (int d : config.d_list) {
        for (int m : config.m_list) {
            std::vector<std::vector<double>> times(kinds.size());
            for (int rep = 0; rep < reps; ++rep) {
                std::mt19937_64 rng(config.seed + 7919 * static_cast<std::uint64_t>(rep) +
                                    104729 * static_cast<std::uint64_t>(d));
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                std::vector<double> X(static_cast<size_t>(config.n_obs) * d);
                std::vector<double> y(config.n_obs);
                for (int i = 0; i < config.n_obs; ++i) {
                    for (int j = 0; j < d; ++j) {
                        X[static_cast<size_t>(i) * d + j] = unif(rng);
                    }
                    y[static_cast<size_t>(i)] =
                        synthetic_objective(&X[static_cast<size_t>(i) * d], d) +
                        std::sqrt(1e-3) * (2.0 * unif(rng) - 1.0);
                }
                fitbo_model* model = nullptr;
                if (fitbo_model_fit(X.data(), y.data(), config.n_obs, d, m, 100, 2,
                                    config.seed + static_cast<std::uint64_t>(rep),
                                    0.0, &model) != FITBO_OK) {
                    return fail_runtime(std::string("fit failed: ") + fitbo_last_error());
                }

                std::vector<double> points(static_cast<size_t>(config.n_test) * d);
                for (double& v : points) {
                    v = unif(rng);
                }
                std::vector<double> values(config.n_test);

                for (size_t k = 0; k < kinds.size(); ++k) {
                    // One untimed pass warms caches before the measurement.
                    if (rep == 0) {
                        fitbo_acq_eval_batch(model, kinds[k], points.data(), config.n_test,
                                             values.data());
                    }
                    const auto t0 = std::chrono::steady_clock::now();
                    const int status = fitbo_acq_eval_batch(model, kinds[k], points.data(),
                                                            config.n_test, values.data());
                    const auto t1 = std::chrono::steady_clock::now();
                    if (status != FITBO_OK) {
                        return fail_runtime(std::string("batch eval failed: ") +
                                            fitbo_last_error());
                    }
                    times[k].push_back(std::chrono::duration<double>(t1 - t0).count());
                }
                fitbo_model_destroy(model);
            }

            for (size_t k = 0; k < kinds.size(); ++k) {
                const auto& t = times[k];
                const double mean =
                    std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
                double sq = 0.0;
                for (double v : t) {
                    sq += (v - mean) * (v - mean);
                }
                const double sd =
                    t.size() > 1 ? std::sqrt(sq / static_cast<double>(t.size() - 1)) : 0.0;
                out << config.acq[k] << "," << m << "," << d << "," << reps << ","
                    << format_double(mean) << "," << format_double(sd) << "\n";
                std::cout << config.acq[k] << " M=" << m << " d=" << d << ": "
                          << format_double(mean) << " s (+/- " << format_double(sd) << ")\n";
            }
        }
    }
    std::cout << "runtime report written to " << config.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FITBO Bayesian optimisation harness"};
    app.require_subcommand(1);

    RunConfig run_config;
    CLI::App* run = app.add_subcommand("run", "Run repeated optimisation experiments");
    run->add_option("--benchmark", run_config.benchmark,
                    "branin | eggholder | hartmann6")->capture_default_str();
    run->add_option("--acq", run_config.acq,
                    "acquisition kinds (FITBO, FITBO_MM, EI, PI, UCB)")
        ->delimiter(',')
        ->capture_default_str();
    run->add_option("--iters", run_config.iters, "iterations per run")
        ->capture_default_str();
    run->add_option("--reps", run_config.reps, "independent repetitions")
        ->capture_default_str();
    run->add_option("--samples", run_config.samples, "hyperparameter samples M")
        ->capture_default_str();
    run->add_option("--init", run_config.init,
                    "initial observations (default 3, or 9 for hartmann6)");
    run->add_option("--seed", run_config.seed, "base seed; rep r uses seed + r")
        ->capture_default_str();
    run->add_option("--budget", run_config.budget, "acquisition optimiser budget")
        ->capture_default_str();
    run->add_option("--burn-in", run_config.burn_in, "sampler burn-in")
        ->capture_default_str();
    run->add_option("--thin", run_config.thin, "sampler thinning")->capture_default_str();
    run->add_option("--noise-std", run_config.noise_std, "observation noise std dev")
        ->capture_default_str();
    run->add_flag("--pin-noise", run_config.pin_noise,
                  "pin sigma_n to --noise-std instead of sampling it");
    run->add_flag("--paper-scale", run_config.paper_scale, "at least 40 repetitions");
    run->add_option("--workers", run_config.workers, "worker pool size");
    run->add_option("--out", run_config.out, "output directory (default $FITBO_OUT_DIR)");

    BenchConfig bench_config;
    CLI::App* bench =
        app.add_subcommand("bench-runtime", "Time acquisition batch evaluation");
    bench->add_option("--acq-list", bench_config.acq, "acquisition kinds")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--m-list", bench_config.m_list, "hyperparameter sample counts")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--d-list", bench_config.d_list, "input dimensions")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--reps", bench_config.reps, "initialisations per configuration")
        ->capture_default_str();
    bench->add_option("--seed", bench_config.seed, "base seed")->capture_default_str();
    bench->add_flag("--paper-scale", bench_config.paper_scale, "at least 100 repetitions");
    bench->add_option("--out", bench_config.out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_config);
        }
        return cmd_bench_runtime(bench_config);
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
}
