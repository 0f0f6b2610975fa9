#include "fitbo/acquisition.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fitbo {

namespace {

const double kLog2PiE = std::log(2.0 * std::numbers::pi) + 1.0;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// EI for minimisation with incumbent threshold t = y_min - xi.
double expected_improvement(double mean, double var, double threshold) {
    if (var <= 0.0) {
        return std::max(threshold - mean, 0.0);
    }
    const double s = std::sqrt(var);
    const double u = (threshold - mean) / s;
    return s * (u * normal_cdf(u) + normal_pdf(u));
}

double ucb_beta(const HyperSampleSet& hs, const AcquisitionParams& params) {
    if (params.ucb_beta) {
        return *params.ucb_beta;
    }
    const double n = static_cast<double>(hs.data_size());
    const double d = static_cast<double>(hs.dim());
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 2.0 * std::log(d * n * n * pi2 / (6.0 * params.ucb_delta));
}

AcquisitionValue fitbo_from_components(const Eigen::VectorXd& means,
                                       const Eigen::VectorXd& vars, AcquisitionKind kind,
                                       const AcquisitionParams& params) {
    if ((vars.array() <= 0.0).any()) {
        throw std::logic_error("fitbo_alpha: predictive component with non-positive variance");
    }
    AcquisitionValue out;
    out.entropy_expected = 0.5 * (kLog2PiE + vars.array().log()).mean();
    const GaussianMixture1D mixture{means, vars};
    out.entropy_mixture = kind == AcquisitionKind::FITBO_MM
                              ? gmm_entropy_mm(mixture)
                              : gmm_entropy_quadrature(mixture, params.fitbo_rel_tol);
    out.value = out.entropy_mixture - out.entropy_expected;
    return out;
}

AcquisitionValue baseline_from_components(const Eigen::VectorXd& means,
                                          const Eigen::VectorXd& vars, double y_min,
                                          double beta, AcquisitionKind kind,
                                          const AcquisitionParams& params) {
    const int m = static_cast<int>(means.size());
    double acc = 0.0;
    switch (kind) {
        case AcquisitionKind::EI:
            for (int j = 0; j < m; ++j) {
                acc += expected_improvement(means(j), vars(j), y_min - params.xi);
            }
            break;
        case AcquisitionKind::PI:
            for (int j = 0; j < m; ++j) {
                const double s = std::sqrt(vars(j));
                acc += s > 0.0 ? normal_cdf((y_min - params.xi - means(j)) / s)
                               : (means(j) <= y_min - params.xi ? 1.0 : 0.0);
            }
            break;
        case AcquisitionKind::UCB: {
            const double root_beta = std::sqrt(beta);
            for (int j = 0; j < m; ++j) {
                acc += -(means(j) - root_beta * std::sqrt(vars(j)));
            }
            break;
        }
        default:
            throw std::invalid_argument("baseline_alpha: not a baseline kind");
    }
    AcquisitionValue out;
    out.value = acc / static_cast<double>(m);
    return out;
}

}  // namespace

const char* to_string(AcquisitionKind kind) {
    switch (kind) {
        case AcquisitionKind::FITBO: return "FITBO";
        case AcquisitionKind::FITBO_MM: return "FITBO_MM";
        case AcquisitionKind::EI: return "EI";
        case AcquisitionKind::PI: return "PI";
        case AcquisitionKind::UCB: return "UCB";
    }
    return "?";
}

std::optional<AcquisitionKind> acquisition_kind_from_string(std::string_view name) {
    if (name == "FITBO") return AcquisitionKind::FITBO;
    if (name == "FITBO_MM" || name == "FITBO-MM") return AcquisitionKind::FITBO_MM;
    if (name == "EI") return AcquisitionKind::EI;
    if (name == "PI") return AcquisitionKind::PI;
    if (name == "UCB" || name == "GP-UCB") return AcquisitionKind::UCB;
    return std::nullopt;
}

void predictive_components(const Eigen::MatrixXd& Xstar, const HyperSampleSet& hs,
                           Eigen::MatrixXd& means, Eigen::MatrixXd& vars) {
    const Eigen::Index b = Xstar.rows();
    const int m = hs.count();
    means.resize(b, m);
    vars.resize(b, m);
    Eigen::VectorXd mj, vj;
    for (int j = 0; j < m; ++j) {
        hs.samples()[j].posterior.predict_y_batch(Xstar, mj, vj);
        means.col(j) = mj;
        vars.col(j) = vj;
    }
}

AcquisitionValue fitbo_alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                             AcquisitionKind kind, const AcquisitionParams& params) {
    if (kind != AcquisitionKind::FITBO && kind != AcquisitionKind::FITBO_MM) {
        throw std::invalid_argument("fitbo_alpha: kind must be FITBO or FITBO_MM");
    }
    const int m = hs.count();
    Eigen::VectorXd means(m), vars(m);
    for (int j = 0; j < m; ++j) {
        const auto [mean, var] = hs.samples()[j].posterior.predict_y(x);
        means(j) = mean;
        vars(j) = var;
    }
    return fitbo_from_components(means, vars, kind, params);
}

AcquisitionValue baseline_alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                                AcquisitionKind kind, const AcquisitionParams& params) {
    const int m = hs.count();
    Eigen::VectorXd means(m), vars(m);
    for (int j = 0; j < m; ++j) {
        const auto [mean, var] = hs.samples()[j].posterior.predict_y(x);
        means(j) = mean;
        vars(j) = var;
    }
    return baseline_from_components(means, vars, hs.y_min(), ucb_beta(hs, params), kind,
                                    params);
}

AcquisitionValue alpha(const Eigen::VectorXd& x, const HyperSampleSet& hs,
                       AcquisitionKind kind, const AcquisitionParams& params) {
    return (kind == AcquisitionKind::FITBO || kind == AcquisitionKind::FITBO_MM)
               ? fitbo_alpha(x, hs, kind, params)
               : baseline_alpha(x, hs, kind, params);
}

std::vector<AcquisitionValue> evaluate_batch(const Eigen::MatrixXd& Xstar,
                                             const HyperSampleSet& hs, AcquisitionKind kind,
                                             const AcquisitionParams& params) {
    if (Xstar.rows() < 1) {
        throw std::invalid_argument("evaluate_batch: need at least one point");
    }
    Eigen::MatrixXd means, vars;
    predictive_components(Xstar, hs, means, vars);

    const bool info_kind =
        kind == AcquisitionKind::FITBO || kind == AcquisitionKind::FITBO_MM;
    const double beta = info_kind ? 0.0 : ucb_beta(hs, params);

    std::vector<AcquisitionValue> out;
    out.reserve(Xstar.rows());
    for (Eigen::Index i = 0; i < Xstar.rows(); ++i) {
        try {
            const Eigen::VectorXd mi = means.row(i);
            const Eigen::VectorXd vi = vars.row(i);
            out.push_back(info_kind
                              ? fitbo_from_components(mi, vi, kind, params)
                              : baseline_from_components(mi, vi, hs.y_min(), beta, kind,
                                                         params));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "evaluate_batch: point " << i << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
    }
    return out;
}

}  // namespace fitbo
