#include "fitbo/warped_model.hpp"

namespace fitbo {

Eigen::VectorXd transform_targets(const Eigen::VectorXd& y, double eta) {
    if (!(eta < y.minCoeff())) {
        throw std::domain_error("transform_targets: eta must lie strictly below min(y)");
    }
    return (2.0 * (y.array() - eta)).sqrt();
}

WarpedPosterior::WarpedPosterior(std::shared_ptr<const Eigen::MatrixXd> X,
                                 const Eigen::VectorXd& y, const KernelHypers& hypers,
                                 double eta)
    : fit_(fit_gp(X, transform_targets(y, eta), hypers)),
      eta_(eta),
      noise_var_(std::exp(2.0 * hypers.log_noise)) {}

WarpedPosterior::WarpedPosterior(std::shared_ptr<const Eigen::MatrixXd> X, Eigen::VectorXd g,
                                 const KernelHypers& hypers, double eta, CholFactor chol)
    : fit_(fit_gp(std::move(X), std::move(g), hypers, std::move(chol))),
      eta_(eta),
      noise_var_(std::exp(2.0 * hypers.log_noise)) {}

std::pair<double, double> WarpedPosterior::predict_f(const Eigen::VectorXd& x) const {
    const auto [m_g, v_g] = posterior_g(fit_, x);
    return {eta_ + 0.5 * m_g * m_g, m_g * m_g * v_g};
}

std::pair<double, double> WarpedPosterior::predict_y(const Eigen::VectorXd& x) const {
    auto [m_f, v_f] = predict_f(x);
    return {m_f, v_f + noise_var_};
}

void WarpedPosterior::predict_y_batch(const Eigen::MatrixXd& Xstar, Eigen::VectorXd& mean,
                                      Eigen::VectorXd& var) const {
    Eigen::VectorXd m_g, v_g;
    posterior_g_batch(fit_, Xstar, m_g, v_g);
    mean = (eta_ + 0.5 * m_g.array().square()).matrix();
    var = (m_g.array().square() * v_g.array() + noise_var_).matrix();
}

Eigen::VectorXd WarpedPosterior::predict_f_mean_batch(const Eigen::MatrixXd& Xstar) const {
    const Eigen::MatrixXd Ks = cross_gram(*fit_.X, Xstar, fit_.hypers);
    const Eigen::VectorXd m_g = Ks.transpose() * fit_.alpha;
    return (eta_ + 0.5 * m_g.array().square()).matrix();
}

}  // namespace fitbo
