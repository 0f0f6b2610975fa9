#include "fitbo/gp.hpp"

namespace fitbo {

GpFit fit_gp(std::shared_ptr<const Eigen::MatrixXd> X, const Eigen::VectorXd& targets,
             const KernelHypers& hypers) {
    CholFactor chol = cholesky_jitter(gram(*X, hypers));
    return fit_gp(std::move(X), targets, hypers, std::move(chol));
}

GpFit fit_gp(std::shared_ptr<const Eigen::MatrixXd> X, const Eigen::VectorXd& targets,
             const KernelHypers& hypers, CholFactor chol) {
    if (X->rows() != targets.size()) {
        throw std::invalid_argument("fit_gp: target length must match rows of X");
    }
    GpFit fit;
    fit.X = std::move(X);
    fit.hypers = hypers;
    fit.chol = std::move(chol);
    fit.targets = targets;
    fit.alpha = fit.chol.L.transpose().triangularView<Eigen::Upper>().solve(
        fit.chol.L.triangularView<Eigen::Lower>().solve(targets));
    return fit;
}

std::pair<double, double> posterior_g(const GpFit& fit, const Eigen::VectorXd& x) {
    const Eigen::VectorXd k = kernel_vector(*fit.X, x, fit.hypers);
    const double mean = k.dot(fit.alpha);
    const Eigen::VectorXd v = fit.chol.L.triangularView<Eigen::Lower>().solve(k);
    const double kxx = std::exp(2.0 * fit.hypers.log_outputscale);
    const double var = kxx - v.squaredNorm();
    return {mean, var > 0.0 ? var : 0.0};
}

void posterior_g_batch(const GpFit& fit, const Eigen::MatrixXd& Xstar,
                       Eigen::VectorXd& mean, Eigen::VectorXd& var) {
    const Eigen::MatrixXd Ks = cross_gram(*fit.X, Xstar, fit.hypers);  // n x b
    mean = Ks.transpose() * fit.alpha;
    const Eigen::MatrixXd V = fit.chol.L.triangularView<Eigen::Lower>().solve(Ks);
    const double kxx = std::exp(2.0 * fit.hypers.log_outputscale);
    var = (kxx - V.colwise().squaredNorm().transpose().array()).max(0.0).matrix();
}

}  // namespace fitbo
