#include "fitbo/kernel.hpp"

namespace fitbo {

Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const KernelHypers& h) {
    if (X.cols() != h.log_lengthscales.size()) {
        throw std::invalid_argument("gram: dimension mismatch");
    }
    const Eigen::Index n = X.rows();
    const double s2 = std::exp(2.0 * h.log_outputscale);
    const Eigen::ArrayXd inv_l = (-h.log_lengthscales.array()).exp();
    const Eigen::MatrixXd Xs = X.array().rowwise() * inv_l.transpose();

    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = s2;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r2 = (Xs.row(i) - Xs.row(j)).squaredNorm();
            const double k = s2 * std::exp(-0.5 * r2);
            K(i, j) = k;
            K(j, i) = k;
        }
    }
    return K;
}

Eigen::MatrixXd cross_gram(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xstar,
                           const KernelHypers& h) {
    if (X.cols() != h.log_lengthscales.size() || Xstar.cols() != X.cols()) {
        throw std::invalid_argument("cross_gram: dimension mismatch");
    }
    const double s2 = std::exp(2.0 * h.log_outputscale);
    const Eigen::ArrayXd inv_l = (-h.log_lengthscales.array()).exp();
    const Eigen::MatrixXd Xs = X.array().rowwise() * inv_l.transpose();
    const Eigen::MatrixXd Zs = Xstar.array().rowwise() * inv_l.transpose();

    // Squared distances via the norm expansion; tiny negatives from round-off
    // are harmless inside exp.
    Eigen::MatrixXd D2 = -2.0 * (Xs * Zs.transpose());
    D2.colwise() += Xs.rowwise().squaredNorm();
    D2.rowwise() += Zs.rowwise().squaredNorm().transpose();
    return s2 * (-0.5 * D2.array()).exp();
}

Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& X, const Eigen::VectorXd& x,
                              const KernelHypers& h) {
    if (X.cols() != h.log_lengthscales.size() || x.size() != X.cols()) {
        throw std::invalid_argument("kernel_vector: dimension mismatch");
    }
    const double s2 = std::exp(2.0 * h.log_outputscale);
    const Eigen::ArrayXd inv_l = (-h.log_lengthscales.array()).exp();
    const Eigen::ArrayXd xs = x.array() * inv_l;
    Eigen::VectorXd k(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double r2 = (X.row(i).transpose().array() * inv_l - xs).square().sum();
        k(i) = s2 * std::exp(-0.5 * r2);
    }
    return k;
}

}  // namespace fitbo
