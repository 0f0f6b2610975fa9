#include "fitbo/fitbo.h"

#include <cstring>
#include <new>
#include <string>

#include "fitbo/acquisition.hpp"
#include "fitbo/benchmarks.hpp"
#include "fitbo/bo_loop.hpp"
#include "fitbo/entropy.hpp"
#include "fitbo/hyper_posterior.hpp"
#include "fitbo/trace_io.hpp"

struct fitbo_problem {
    fitbo::Problem problem;
    std::string benchmark;
};

struct fitbo_model {
    fitbo::HyperSampleSet samples;
};

struct fitbo_trace {
    fitbo::BOTrace trace;
};

namespace {

thread_local std::string t_last_error = "no error";

int fail(fitbo_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const fitbo::ConditioningError& e) {
        return fail(FITBO_ERR_CONDITIONING, e.what());
    } catch (const std::domain_error& e) {
        return fail(FITBO_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(FITBO_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FITBO_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(FITBO_ERR_RUNTIME, e.what());
    }
}

fitbo::AcquisitionKind to_kind(fitbo_acq_kind kind) {
    switch (kind) {
        case FITBO_ACQ_FITBO: return fitbo::AcquisitionKind::FITBO;
        case FITBO_ACQ_FITBO_MM: return fitbo::AcquisitionKind::FITBO_MM;
        case FITBO_ACQ_EI: return fitbo::AcquisitionKind::EI;
        case FITBO_ACQ_PI: return fitbo::AcquisitionKind::PI;
        case FITBO_ACQ_UCB: return fitbo::AcquisitionKind::UCB;
    }
    throw std::invalid_argument("unknown acquisition kind");
}

fitbo::GaussianMixture1D to_mixture(const double* means, const double* variances, int m) {
    if (means == nullptr || variances == nullptr || m < 1) {
        throw std::invalid_argument("mixture: need m >= 1 components");
    }
    fitbo::GaussianMixture1D gm;
    gm.means = Eigen::Map<const Eigen::VectorXd>(means, m);
    gm.variances = Eigen::Map<const Eigen::VectorXd>(variances, m);
    return gm;
}

}  // namespace

extern "C" {

const char* fitbo_version(void) { return "0.1.0"; }

const char* fitbo_last_error(void) { return t_last_error.c_str(); }

int fitbo_acq_kind_parse(const char* name, fitbo_acq_kind* out_kind) {
    return guarded([&] {
        if (name == nullptr || out_kind == nullptr) {
            throw std::invalid_argument("fitbo_acq_kind_parse: null argument");
        }
        const auto kind = fitbo::acquisition_kind_from_string(name);
        if (!kind) {
            throw std::invalid_argument(std::string("unknown acquisition kind: ") + name);
        }
        switch (*kind) {
            case fitbo::AcquisitionKind::FITBO: *out_kind = FITBO_ACQ_FITBO; break;
            case fitbo::AcquisitionKind::FITBO_MM: *out_kind = FITBO_ACQ_FITBO_MM; break;
            case fitbo::AcquisitionKind::EI: *out_kind = FITBO_ACQ_EI; break;
            case fitbo::AcquisitionKind::PI: *out_kind = FITBO_ACQ_PI; break;
            case fitbo::AcquisitionKind::UCB: *out_kind = FITBO_ACQ_UCB; break;
        }
        return FITBO_OK;
    });
}

int fitbo_problem_create_benchmark(const char* name, double noise_std,
                                   fitbo_problem** out_problem) {
    return guarded([&] {
        if (name == nullptr || out_problem == nullptr) {
            throw std::invalid_argument("fitbo_problem_create_benchmark: null argument");
        }
        if (noise_std < 0.0) {
            throw std::invalid_argument("fitbo_problem_create_benchmark: noise_std < 0");
        }
        const fitbo::BenchmarkSpec* spec = fitbo::benchmark_by_name(name);
        if (spec == nullptr) {
            throw std::invalid_argument(std::string("unknown benchmark: ") + name);
        }
        auto* handle = new fitbo_problem{fitbo::make_problem(*spec, noise_std), name};
        *out_problem = handle;
        return FITBO_OK;
    });
}

void fitbo_problem_destroy(fitbo_problem* problem) { delete problem; }

int fitbo_problem_dim(const fitbo_problem* problem, int* out_dim) {
    return guarded([&] {
        if (problem == nullptr || out_dim == nullptr) {
            throw std::invalid_argument("fitbo_problem_dim: null argument");
        }
        *out_dim = problem->problem.dim;
        return FITBO_OK;
    });
}

int fitbo_problem_eval(const fitbo_problem* problem, const double* x, double* out_value) {
    return guarded([&] {
        if (problem == nullptr || x == nullptr || out_value == nullptr) {
            throw std::invalid_argument("fitbo_problem_eval: null argument");
        }
        const Eigen::Map<const Eigen::VectorXd> xv(x, problem->problem.dim);
        *out_value = problem->problem.objective(xv);
        return FITBO_OK;
    });
}

int fitbo_model_fit(const double* X, const double* y, int n, int d, int m_samples,
                    int burn_in, int thin, uint64_t seed, double fixed_noise_std,
                    fitbo_model** out_model) {
    return guarded([&] {
        if (X == nullptr || y == nullptr || out_model == nullptr) {
            throw std::invalid_argument("fitbo_model_fit: null argument");
        }
        if (n < 1 || d < 1 || m_samples < 1) {
            throw std::invalid_argument("fitbo_model_fit: need n, d, m_samples >= 1");
        }
        using RowMajor =
            Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const fitbo::Dataset ds(Eigen::Map<const RowMajor>(X, n, d),
                                Eigen::Map<const Eigen::VectorXd>(y, n));
        fitbo::SamplerOptions options;
        options.burn_in = burn_in;
        options.thin = thin;
        if (fixed_noise_std > 0.0) {
            options.fixed_noise_std = fixed_noise_std;
        }
        std::mt19937_64 rng(seed);
        auto samples = fitbo::sample_posterior(ds, fitbo::PriorSpec::defaults(d), m_samples,
                                               options, rng);
        *out_model = new fitbo_model{std::move(samples)};
        return FITBO_OK;
    });
}

void fitbo_model_destroy(fitbo_model* model) { delete model; }

int fitbo_model_sample_count(const fitbo_model* model, int* out_count) {
    return guarded([&] {
        if (model == nullptr || out_count == nullptr) {
            throw std::invalid_argument("fitbo_model_sample_count: null argument");
        }
        *out_count = model->samples.count();
        return FITBO_OK;
    });
}

int fitbo_acq_eval_batch(const fitbo_model* model, fitbo_acq_kind kind,
                         const double* points, int n_points, double* out_values) {
    return guarded([&] {
        if (model == nullptr || points == nullptr || out_values == nullptr) {
            throw std::invalid_argument("fitbo_acq_eval_batch: null argument");
        }
        if (n_points < 1) {
            throw std::invalid_argument("fitbo_acq_eval_batch: need n_points >= 1");
        }
        using RowMajor =
            Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const Eigen::MatrixXd Xstar =
            Eigen::Map<const RowMajor>(points, n_points, model->samples.dim());
        const auto values = fitbo::evaluate_batch(Xstar, model->samples, to_kind(kind));
        for (int i = 0; i < n_points; ++i) {
            out_values[i] = values[static_cast<size_t>(i)].value;
        }
        return FITBO_OK;
    });
}

int fitbo_run_bo(const fitbo_problem* problem, fitbo_acq_kind kind, int iters,
                 int init_count, int m_samples, int burn_in, int thin, int acq_budget,
                 uint64_t seed, int pin_noise, fitbo_trace** out_trace) {
    return guarded([&] {
        if (problem == nullptr || out_trace == nullptr) {
            throw std::invalid_argument("fitbo_run_bo: null argument");
        }
        fitbo::RunOptions options;
        options.m_samples = m_samples;
        options.burn_in = burn_in;
        options.thin = thin;
        options.acq_budget = acq_budget;
        options.pin_noise = pin_noise != 0;
        options.benchmark_label = problem->benchmark;
        auto trace =
            fitbo::run_bo(problem->problem, to_kind(kind), iters, init_count, seed, options);
        *out_trace = new fitbo_trace{std::move(trace)};
        return FITBO_OK;
    });
}

void fitbo_trace_destroy(fitbo_trace* trace) { delete trace; }

int fitbo_trace_length(const fitbo_trace* trace, int* out_length) {
    return guarded([&] {
        if (trace == nullptr || out_length == nullptr) {
            throw std::invalid_argument("fitbo_trace_length: null argument");
        }
        *out_length = static_cast<int>(trace->trace.records.size());
        return FITBO_OK;
    });
}

int fitbo_trace_dim(const fitbo_trace* trace, int* out_dim) {
    return guarded([&] {
        if (trace == nullptr || out_dim == nullptr) {
            throw std::invalid_argument("fitbo_trace_dim: null argument");
        }
        *out_dim = trace->trace.dim;
        return FITBO_OK;
    });
}

int fitbo_trace_aborted(const fitbo_trace* trace, int* out_aborted) {
    return guarded([&] {
        if (trace == nullptr || out_aborted == nullptr) {
            throw std::invalid_argument("fitbo_trace_aborted: null argument");
        }
        *out_aborted = trace->trace.aborted ? 1 : 0;
        return FITBO_OK;
    });
}

int fitbo_trace_record(const fitbo_trace* trace, int index, double* x, double* y,
                       double* xhat, double* ir, double* l2, double* t_sampling,
                       double* t_acq_opt) {
    return guarded([&] {
        if (trace == nullptr) {
            throw std::invalid_argument("fitbo_trace_record: null trace");
        }
        const auto& records = trace->trace.records;
        if (index < 0 || index >= static_cast<int>(records.size())) {
            throw std::invalid_argument("fitbo_trace_record: index out of range");
        }
        const fitbo::IterationRecord& r = records[static_cast<size_t>(index)];
        const int d = trace->trace.dim;
        if (x != nullptr) std::memcpy(x, r.query.data(), sizeof(double) * d);
        if (y != nullptr) *y = r.observation;
        if (xhat != nullptr) std::memcpy(xhat, r.recommendation.data(), sizeof(double) * d);
        if (ir != nullptr) *ir = r.ir;
        if (l2 != nullptr) *l2 = r.l2;
        if (t_sampling != nullptr) *t_sampling = r.sampling_seconds;
        if (t_acq_opt != nullptr) *t_acq_opt = r.acq_opt_seconds;
        return FITBO_OK;
    });
}

int fitbo_trace_to_jsonl(const fitbo_trace* trace, char** out_text) {
    return guarded([&] {
        if (trace == nullptr || out_text == nullptr) {
            throw std::invalid_argument("fitbo_trace_to_jsonl: null argument");
        }
        const std::string text = fitbo::trace_to_jsonl(trace->trace);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out_text = buffer;
        return FITBO_OK;
    });
}

int fitbo_trace_parse_jsonl(const char* text, fitbo_trace** out_trace) {
    return guarded([&] {
        if (text == nullptr || out_trace == nullptr) {
            throw std::invalid_argument("fitbo_trace_parse_jsonl: null argument");
        }
        *out_trace = new fitbo_trace{fitbo::trace_from_jsonl(text)};
        return FITBO_OK;
    });
}

void fitbo_string_free(char* text) { delete[] text; }

int fitbo_gaussian_entropy(double variance, double* out_entropy) {
    return guarded([&] {
        if (out_entropy == nullptr) {
            throw std::invalid_argument("fitbo_gaussian_entropy: null output");
        }
        *out_entropy = fitbo::gaussian_entropy(variance);
        return FITBO_OK;
    });
}

int fitbo_gmm_moments(const double* means, const double* variances, int m,
                      double* out_mean, double* out_variance) {
    return guarded([&] {
        if (out_mean == nullptr || out_variance == nullptr) {
            throw std::invalid_argument("fitbo_gmm_moments: null output");
        }
        const auto [mean, variance] = fitbo::gmm_moments(to_mixture(means, variances, m));
        *out_mean = mean;
        *out_variance = variance;
        return FITBO_OK;
    });
}

int fitbo_gmm_entropy_mm(const double* means, const double* variances, int m,
                         double* out_entropy) {
    return guarded([&] {
        if (out_entropy == nullptr) {
            throw std::invalid_argument("fitbo_gmm_entropy_mm: null output");
        }
        *out_entropy = fitbo::gmm_entropy_mm(to_mixture(means, variances, m));
        return FITBO_OK;
    });
}

int fitbo_gmm_entropy_quadrature(const double* means, const double* variances, int m,
                                 double rel_tol, double* out_entropy) {
    return guarded([&] {
        if (out_entropy == nullptr) {
            throw std::invalid_argument("fitbo_gmm_entropy_quadrature: null output");
        }
        *out_entropy =
            fitbo::gmm_entropy_quadrature(to_mixture(means, variances, m), rel_tol);
        return FITBO_OK;
    });
}

}  // extern "C"
