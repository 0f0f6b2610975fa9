#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "fitbo/cholesky.hpp"
#include "fitbo/gp.hpp"
#include "fitbo/kernel.hpp"

using namespace fitbo;

namespace {

KernelHypers unit_hypers(int d) {
    KernelHypers h;
    h.log_lengthscales = Eigen::VectorXd::Zero(d);
    h.log_outputscale = 0.0;
    h.log_noise = std::log(1e-3);
    return h;
}

Eigen::MatrixXd random_inputs(int n, int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::MatrixXd X(n, d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            X(i, j) = unif(rng);
        }
    }
    return X;
}

}  // namespace

TEST_CASE("kernel_se basics") {
    std::mt19937_64 rng(11);
    KernelHypers h = unit_hypers(3);
    h.log_outputscale = std::log(1.7);
    const Eigen::VectorXd x = random_inputs(1, 3, rng).row(0).transpose();
    const Eigen::VectorXd x2 = random_inputs(1, 3, rng).row(0).transpose();

    CHECK(kernel_se(x, x, h) == doctest::Approx(1.7 * 1.7).epsilon(1e-14));
    CHECK(kernel_se(x, x2, h) == doctest::Approx(kernel_se(x2, x, h)).epsilon(1e-15));

    // d=1, unit lengthscale and scale, |x - x2| = 1 -> exp(-1/2)
    KernelHypers h1 = unit_hypers(1);
    Eigen::VectorXd a(1), b(1);
    a << 0.2;
    b << 1.2;
    CHECK(kernel_se(a, b, h1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    Eigen::VectorXd short_vec(2);
    short_vec << 0.0, 0.0;
    CHECK_THROWS_AS(kernel_se(x, short_vec, h), std::invalid_argument);
}

TEST_CASE("gram matrices are positive semi-definite") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 12;
        const int d = 1 + trial % 4;
        KernelHypers h = unit_hypers(d);
        for (int j = 0; j < d; ++j) {
            h.log_lengthscales(j) = 0.5 * normal(rng);
        }
        h.log_outputscale = 0.5 * normal(rng);
        const Eigen::MatrixXd K = gram(random_inputs(n, d, rng), h);
        CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * K.diagonal().maxCoeff());
    }
}

TEST_CASE("cross_gram matches kernel_se") {
    std::mt19937_64 rng(23);
    KernelHypers h = unit_hypers(2);
    h.log_lengthscales << std::log(0.3), std::log(0.8);
    const Eigen::MatrixXd X = random_inputs(6, 2, rng);
    const Eigen::MatrixXd Z = random_inputs(4, 2, rng);
    const Eigen::MatrixXd K = cross_gram(X, Z, h);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(K(i, j) == doctest::Approx(kernel_se(X.row(i).transpose(),
                                                       Z.row(j).transpose(), h))
                                 .epsilon(1e-12));
        }
    }
}

TEST_CASE("cholesky_jitter identity and diagonal") {
    const CholFactor id = cholesky_jitter(Eigen::MatrixXd::Identity(3, 3));
    CHECK((id.L - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 4.0;
    D(1, 1) = 9.0;
    const CholFactor f = cholesky_jitter(D);
    CHECK(f.L(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(f.L(1, 1) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(f.L(1, 0) == 0.0);
}

TEST_CASE("cholesky_jitter reconstructs a random SPD matrix") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd A(5, 5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            A(i, j) = normal(rng);
        }
    }
    const Eigen::MatrixXd K = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(5, 5);
    const CholFactor f = cholesky_jitter(K);
    const Eigen::MatrixXd R = f.L * f.L.transpose();
    Eigen::MatrixXd target = K;
    target.diagonal().array() += f.jitter;
    CHECK((R - target).cwiseAbs().maxCoeff() <= 1e-8 * K.cwiseAbs().maxCoeff());
    CHECK(f.L.diagonal().minCoeff() > 0.0);
}

TEST_CASE("cholesky_jitter escalation fails loudly on an indefinite matrix") {
    Eigen::MatrixXd K(2, 2);
    K << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
    try {
        cholesky_jitter(K);
        FAIL("expected ConditioningError");
    } catch (const ConditioningError& e) {
        CHECK(e.final_jitter() == doctest::Approx(1e-4).epsilon(1e-12));
        CHECK(std::string(e.what()).find("jitter") != std::string::npos);
    }
}

TEST_CASE("posterior_g interpolates the data") {
    std::mt19937_64 rng(29);
    const int n = 8;
    // Well-separated inputs keep the Gram well-conditioned, the regime where
    // jitter-only interpolation is tight.
    auto X = std::make_shared<const Eigen::MatrixXd>(
        Eigen::VectorXd::LinSpaced(n, 0.0, 1.0));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        g(i) = normal(rng);
    }
    KernelHypers h = unit_hypers(1);
    h.log_lengthscales(0) = std::log(0.15);
    const GpFit fit = fit_gp(X, g, h);

    for (int i = 0; i < n; ++i) {
        const auto [m, v] = posterior_g(fit, X->row(i).transpose());
        CHECK(m == doctest::Approx(g(i)).epsilon(1e-4));
        CHECK(v <= 1e-4);
    }
}

TEST_CASE("posterior_g reverts to the prior far from data") {
    std::mt19937_64 rng(31);
    auto X = std::make_shared<const Eigen::MatrixXd>(0.02 * random_inputs(5, 1, rng));
    Eigen::VectorXd g(5);
    g << 1.0, -0.5, 0.3, 0.8, -0.2;
    KernelHypers h = unit_hypers(1);
    h.log_lengthscales(0) = std::log(0.05);  // data confined near 0, test at 1
    const GpFit fit = fit_gp(X, g, h);

    Eigen::VectorXd far(1);
    far << 1.0;  // >= 10 lengthscales away
    const auto [m, v] = posterior_g(fit, far);
    CHECK(std::abs(m) < 1e-3 * g.cwiseAbs().maxCoeff());
    CHECK(v == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("posterior_g n=1 matches the scalar closed form") {
    auto X = std::make_shared<const Eigen::MatrixXd>(Eigen::MatrixXd::Constant(1, 1, 0.3));
    Eigen::VectorXd g(1);
    g << 2.5;
    KernelHypers h = unit_hypers(1);
    h.log_lengthscales(0) = std::log(0.25);
    const GpFit fit = fit_gp(X, g, h);

    Eigen::VectorXd x(1);
    x << 0.45;
    const double k00 = kernel_se(X->row(0).transpose(), X->row(0).transpose(), h);
    const double kx = kernel_se(x, X->row(0).transpose(), h);
    const auto [m, v] = posterior_g(fit, x);
    CHECK(m == doctest::Approx(kx * g(0) / (k00 + fit.chol.jitter)).epsilon(1e-12));
    CHECK(v == doctest::Approx(k00 - kx * kx / (k00 + fit.chol.jitter)).epsilon(1e-9));
}

TEST_CASE("posterior_g is linear in the targets") {
    std::mt19937_64 rng(37);
    auto X = std::make_shared<const Eigen::MatrixXd>(random_inputs(6, 2, rng));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd g1(6), g2(6);
    for (int i = 0; i < 6; ++i) {
        g1(i) = normal(rng);
        g2(i) = normal(rng);
    }
    const KernelHypers h = unit_hypers(2);
    const GpFit fit1 = fit_gp(X, g1, h);
    const GpFit fit2 = fit_gp(X, g2, h);
    const GpFit fit_sum = fit_gp(X, 2.0 * g1 + 3.0 * g2, h);

    const Eigen::VectorXd x = random_inputs(1, 2, rng).row(0).transpose();
    const auto [m1, v1] = posterior_g(fit1, x);
    const auto [m2, v2] = posterior_g(fit2, x);
    const auto [ms, vs] = posterior_g(fit_sum, x);
    CHECK(ms == doctest::Approx(2.0 * m1 + 3.0 * m2).epsilon(1e-10));
    CHECK(vs == doctest::Approx(v1).epsilon(1e-10));  // variance ignores targets
    (void)v2;
}

TEST_CASE("predictive variance is non-increasing under dataset augmentation") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial;
        const Eigen::MatrixXd X = random_inputs(n + 1, 1, rng);
        Eigen::VectorXd g(n + 1);
        for (int i = 0; i <= n; ++i) {
            g(i) = normal(rng);
        }
        KernelHypers h = unit_hypers(1);
        h.log_lengthscales(0) = std::log(0.3);

        auto Xn = std::make_shared<const Eigen::MatrixXd>(X.topRows(n));
        auto Xn1 = std::make_shared<const Eigen::MatrixXd>(X);
        const GpFit fit_n = fit_gp(Xn, g.head(n), h);
        const GpFit fit_n1 = fit_gp(Xn1, g, h);

        const Eigen::VectorXd x = random_inputs(1, 1, rng).row(0).transpose();
        const auto [mn, vn] = posterior_g(fit_n, x);
        const auto [mn1, vn1] = posterior_g(fit_n1, x);
        (void)mn;
        (void)mn1;
        CHECK(vn1 <= vn + 1e-8);
    }
}

TEST_CASE("posterior_g_batch agrees with single-point queries") {
    std::mt19937_64 rng(43);
    auto X = std::make_shared<const Eigen::MatrixXd>(random_inputs(7, 2, rng));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd g(7);
    for (int i = 0; i < 7; ++i) {
        g(i) = normal(rng);
    }
    const GpFit fit = fit_gp(X, g, unit_hypers(2));

    const Eigen::MatrixXd Xstar = random_inputs(9, 2, rng);
    Eigen::VectorXd mean, var;
    posterior_g_batch(fit, Xstar, mean, var);
    for (int i = 0; i < 9; ++i) {
        const auto [m, v] = posterior_g(fit, Xstar.row(i).transpose());
        CHECK(mean(i) == doctest::Approx(m).epsilon(1e-10));
        CHECK(var(i) == doctest::Approx(v).epsilon(1e-8));
    }
}
