#include "fitbo/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fitbo/quasirandom.hpp"

namespace fitbo {

namespace {

using std::numbers::pi;

double branin_native(const Eigen::VectorXd& x) {
    const double a = 1.0;
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    const double r = 6.0;
    const double s = 10.0;
    const double t = 1.0 / (8.0 * pi);
    const double u = x(1) - b * x(0) * x(0) + c * x(0) - r;
    return a * u * u + s * (1.0 - t) * std::cos(x(0)) + s;
}

double eggholder_native(const Eigen::VectorXd& x) {
    const double x1 = x(0), x2 = x(1);
    return -(x2 + 47.0) * std::sin(std::sqrt(std::abs(x1 / 2.0 + x2 + 47.0))) -
           x1 * std::sin(std::sqrt(std::abs(x1 - (x2 + 47.0))));
}

double hartmann6_native(const Eigen::VectorXd& x) {
    static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
    static const double A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                   {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                   {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                   {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
    static const double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                   {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                   {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                   {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 6; ++j) {
            const double d = x(j) - P[i][j];
            inner += A[i][j] * d * d;
        }
        sum += alpha[i] * std::exp(-inner);
    }
    return -sum;
}

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

BenchmarkSpec make_branin() {
    BenchmarkSpec spec;
    spec.name = BenchmarkName::Branin;
    spec.dim = 2;
    spec.lower = vec2(-5.0, 0.0);
    spec.upper = vec2(10.0, 15.0);
    // Quadratic term vanishes at x2 = b x1^2 - c x1 + r with cos(x1) = -1.
    spec.minimizers_unit = {vec2((5.0 - pi) / 15.0, 12.275 / 15.0),
                            vec2((5.0 + pi) / 15.0, 2.275 / 15.0),
                            vec2((5.0 + 3.0 * pi) / 15.0, 2.475 / 15.0)};
    spec.f_min = 5.0 / (4.0 * pi);  // 0.397887...
    return spec;
}

BenchmarkSpec make_eggholder() {
    BenchmarkSpec spec;
    spec.name = BenchmarkName::Eggholder;
    spec.dim = 2;
    spec.lower = vec2(-512.0, -512.0);
    spec.upper = vec2(512.0, 512.0);
    // Global minimiser sits on the x1 = 512 boundary.
    spec.minimizers_unit = {vec2(1.0, (404.23180510010054 + 512.0) / 1024.0)};
    spec.f_min = -959.6406627208505;
    return spec;
}

BenchmarkSpec make_hartmann6() {
    BenchmarkSpec spec;
    spec.name = BenchmarkName::Hartmann6;
    spec.dim = 6;
    spec.lower = Eigen::VectorXd::Zero(6);
    spec.upper = Eigen::VectorXd::Ones(6);
    Eigen::VectorXd xstar(6);
    xstar << 0.20168952, 0.15001069, 0.47687398, 0.27533243, 0.31165162, 0.65730054;
    spec.minimizers_unit = {xstar};
    spec.f_min = -3.322368011391339;
    return spec;
}

// Greedy coordinate pattern search on the unit cube with shrinking steps.
template <typename F>
std::pair<Eigen::VectorXd, double> pattern_refine(F&& f, Eigen::VectorXd x, double step,
                                                  double min_step = 1e-13) {
    double fx = f(x);
    const int d = static_cast<int>(x.size());
    while (step > min_step) {
        bool improved = false;
        for (int i = 0; i < d; ++i) {
            for (double sign : {1.0, -1.0}) {
                Eigen::VectorXd trial = x;
                trial(i) = std::clamp(trial(i) + sign * step, 0.0, 1.0);
                const double ft = f(trial);
                if (ft < fx) {
                    x = trial;
                    fx = ft;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    return {x, fx};
}

}  // namespace

const BenchmarkSpec& benchmark(BenchmarkName name) {
    static const BenchmarkSpec branin = make_branin();
    static const BenchmarkSpec eggholder = make_eggholder();
    static const BenchmarkSpec hartmann6 = make_hartmann6();
    switch (name) {
        case BenchmarkName::Branin: return branin;
        case BenchmarkName::Eggholder: return eggholder;
        case BenchmarkName::Hartmann6: return hartmann6;
    }
    throw std::invalid_argument("benchmark: unknown name");
}

const BenchmarkSpec* benchmark_by_name(std::string_view name) {
    if (name == "branin") return &benchmark(BenchmarkName::Branin);
    if (name == "eggholder") return &benchmark(BenchmarkName::Eggholder);
    if (name == "hartmann6") return &benchmark(BenchmarkName::Hartmann6);
    return nullptr;
}

const char* to_string(BenchmarkName name) {
    switch (name) {
        case BenchmarkName::Branin: return "branin";
        case BenchmarkName::Eggholder: return "eggholder";
        case BenchmarkName::Hartmann6: return "hartmann6";
    }
    return "?";
}

Eigen::VectorXd to_native(const BenchmarkSpec& spec, const Eigen::VectorXd& x_unit) {
    return spec.lower.array() + x_unit.array() * (spec.upper - spec.lower).array();
}

Eigen::VectorXd to_unit(const BenchmarkSpec& spec, const Eigen::VectorXd& x_native) {
    return ((x_native - spec.lower).array() / (spec.upper - spec.lower).array()).matrix();
}

double evaluate_native(const BenchmarkSpec& spec, const Eigen::VectorXd& x_native) {
    if (x_native.size() != spec.dim) {
        throw std::invalid_argument("evaluate_native: dimension mismatch");
    }
    switch (spec.name) {
        case BenchmarkName::Branin: return branin_native(x_native);
        case BenchmarkName::Eggholder: return eggholder_native(x_native);
        case BenchmarkName::Hartmann6: return hartmann6_native(x_native);
    }
    throw std::invalid_argument("evaluate_native: unknown benchmark");
}

double evaluate(const BenchmarkSpec& spec, const Eigen::VectorXd& x_unit) {
    if (x_unit.size() != spec.dim) {
        throw std::invalid_argument("evaluate: dimension mismatch");
    }
    if ((x_unit.array() < 0.0).any() || (x_unit.array() > 1.0).any()) {
        throw std::invalid_argument("evaluate: input outside the unit hypercube");
    }
    return evaluate_native(spec, to_native(spec, x_unit));
}

OracleResult truth_oracle(const BenchmarkSpec& spec, int grid_resolution) {
    auto f = [&spec](const Eigen::VectorXd& u) { return evaluate(spec, u); };

    std::vector<std::pair<Eigen::VectorXd, double>> seeds;
    double seed_step = 0.02;
    if (spec.dim == 2) {
        if (grid_resolution < 100) {
            throw std::invalid_argument("truth_oracle: need >= 100 grid points per axis");
        }
        const int res = grid_resolution;
        Eigen::MatrixXd values(res, res);
        const auto coord = [res](int i) {
            return static_cast<double>(i) / static_cast<double>(res - 1);
        };
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                values(i, j) = f(vec2(coord(i), coord(j)));
            }
        }
        // Grid-local minima (boundary cells included) seed the refinement.
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di) {
                    for (int dj = -1; dj <= 1; ++dj) {
                        const int ni = i + di, nj = j + dj;
                        if ((di == 0 && dj == 0) || ni < 0 || nj < 0 || ni >= res || nj >= res) {
                            continue;
                        }
                        if (values(ni, nj) < values(i, j)) {
                            is_min = false;
                            break;
                        }
                    }
                }
                if (is_min) {
                    seeds.emplace_back(vec2(coord(i), coord(j)), values(i, j));
                }
            }
        }
        seed_step = 2.0 / res;
    } else {
        const int probes = 1'000'000;
        const Eigen::MatrixXd points = halton_points(probes, spec.dim);
        seeds.reserve(8);
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(probes);
        for (int i = 0; i < probes; ++i) {
            ranked.emplace_back(f(points.row(i).transpose()), i);
        }
        std::partial_sort(ranked.begin(), ranked.begin() + 8, ranked.end());
        for (int k = 0; k < 8; ++k) {
            seeds.emplace_back(points.row(ranked[k].second).transpose(), ranked[k].first);
        }
        seed_step = 0.05;
    }

    std::sort(seeds.begin(), seeds.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    const size_t refine_count = std::min<size_t>(seeds.size(), 16);

    std::vector<std::pair<Eigen::VectorXd, double>> refined;
    for (size_t k = 0; k < refine_count; ++k) {
        auto [x, fx] = pattern_refine(f, seeds[k].first, seed_step);
        const bool duplicate =
            std::any_of(refined.begin(), refined.end(), [&x](const auto& r) {
                return (r.first - x).norm() < 1e-4;
            });
        if (!duplicate) {
            refined.emplace_back(std::move(x), fx);
        }
    }

    OracleResult result;
    result.f_min = std::min_element(refined.begin(), refined.end(), [](const auto& a,
                                                                       const auto& b) {
                       return a.second < b.second;
                   })->second;
    for (auto& [x, fx] : refined) {
        if (fx <= result.f_min + 1e-6) {
            result.minimizers_unit.push_back(x);
        }
    }
    return result;
}

}  // namespace fitbo
