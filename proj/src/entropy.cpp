#include "fitbo/entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace fitbo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kInitialPanels = 24;
constexpr int kMaxDepth = 60;

// Vectorised evaluator of h(z) = -p(z) log p(z) for the mixture density.
struct MixtureIntegrand {
    Eigen::ArrayXd means;
    Eigen::ArrayXd inv_two_var;   // 1 / (2 K_j)
    Eigen::ArrayXd log_norm;      // log(1 / (M sqrt(2 pi K_j)))

    explicit MixtureIntegrand(const GaussianMixture1D& gm)
        : means(gm.means.array()),
          inv_two_var(0.5 / gm.variances.array()),
          log_norm(-(kTwoPi * gm.variances.array()).log() * 0.5 -
                   std::log(static_cast<double>(gm.components()))) {}

    Eigen::ArrayXd operator()(const Eigen::ArrayXd& z) const {
        Eigen::ArrayXd p = Eigen::ArrayXd::Zero(z.size());
        for (int j = 0; j < means.size(); ++j) {
            p += (log_norm(j) - (z - means(j)).square() * inv_two_var(j)).exp();
        }
        // p log p -> 0 as p -> 0; cut below 1e-300 to dodge log(0).
        return (p < 1e-300).select(Eigen::ArrayXd::Zero(z.size()), -p * p.log().max(-745.0));
    }
};

struct Interval {
    double a, b;
    double fa, fm, fb;  // integrand at a, midpoint, b
    double simpson;
    double tol;
    int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

double gaussian_entropy(double variance) {
    if (!(variance > 0.0)) {
        throw std::domain_error("gaussian_entropy: variance must be strictly positive");
    }
    return 0.5 * std::log(kTwoPi * std::numbers::e * variance);
}

std::pair<double, double> gmm_moments(const GaussianMixture1D& gm) {
    gm.validate();
    const double mean = gm.means.mean();
    const double var =
        gm.variances.mean() + (gm.means.array() - mean).square().mean();
    return {mean, var};
}

double gmm_entropy_mm(const GaussianMixture1D& gm) {
    const auto [mean, var] = gmm_moments(gm);
    (void)mean;
    return gaussian_entropy(var);
}

double gmm_entropy_quadrature(const GaussianMixture1D& gm, double rel_tol) {
    gm.validate();
    if ((gm.variances.array() <= 0.0).all()) {
        throw std::domain_error("gmm_entropy_quadrature: need at least one positive variance");
    }
    if ((gm.variances.array() <= 0.0).any()) {
        // A point-mass component makes the mixture non-absolutely-continuous.
        return -std::numeric_limits<double>::infinity();
    }

    const Eigen::ArrayXd sd = gm.variances.array().sqrt();
    const double lo = (gm.means.array() - 8.0 * sd).minCoeff();
    const double hi = (gm.means.array() + 8.0 * sd).maxCoeff();
    MixtureIntegrand integrand(gm);

    // Coarse composite pass: fixes the tolerance scale and seeds the worklist.
    const int n_nodes = 2 * kInitialPanels + 1;
    const Eigen::ArrayXd nodes = Eigen::ArrayXd::LinSpaced(n_nodes, lo, hi);
    const Eigen::ArrayXd f = integrand(nodes);

    std::vector<Interval> work;
    work.reserve(256);
    double coarse = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        Interval iv;
        iv.a = nodes(2 * i);
        iv.b = nodes(2 * i + 2);
        iv.fa = f(2 * i);
        iv.fm = f(2 * i + 1);
        iv.fb = f(2 * i + 2);
        iv.simpson = simpson(iv.a, iv.b, iv.fa, iv.fm, iv.fb);
        iv.depth = 0;
        coarse += iv.simpson;
        work.push_back(iv);
    }
    const double tol_total = std::max(rel_tol * std::abs(coarse), 1e-10);
    for (auto& iv : work) {
        iv.tol = tol_total / kInitialPanels;
    }

    // Level-synchronous refinement: evaluate all pending midpoints in one
    // vectorised sweep, then accept or split each interval.
    double total = 0.0;
    std::vector<Interval> next;
    while (!work.empty()) {
        Eigen::ArrayXd mids(2 * work.size());
        for (size_t i = 0; i < work.size(); ++i) {
            const double m = 0.5 * (work[i].a + work[i].b);
            mids(2 * i) = 0.5 * (work[i].a + m);
            mids(2 * i + 1) = 0.5 * (m + work[i].b);
        }
        const Eigen::ArrayXd fm = integrand(mids);

        next.clear();
        for (size_t i = 0; i < work.size(); ++i) {
            const Interval& iv = work[i];
            const double m = 0.5 * (iv.a + iv.b);
            const double fl = fm(2 * i), fr = fm(2 * i + 1);
            const double s_left = simpson(iv.a, m, iv.fa, fl, iv.fm);
            const double s_right = simpson(m, iv.b, iv.fm, fr, iv.fb);
            const double err = (s_left + s_right - iv.simpson) / 15.0;
            if (std::abs(err) <= iv.tol) {
                total += s_left + s_right + err;
                continue;
            }
            if (iv.depth + 1 > kMaxDepth) {
                std::ostringstream msg;
                msg << "gmm_entropy_quadrature: no convergence after depth " << kMaxDepth
                    << " on [" << iv.a << ", " << iv.b << "] (error estimate " << err << ")";
                throw QuadratureError(iv.a, iv.b, msg.str());
            }
            next.push_back(
                Interval{iv.a, m, iv.fa, fl, iv.fm, s_left, 0.5 * iv.tol, iv.depth + 1});
            next.push_back(
                Interval{m, iv.b, iv.fm, fr, iv.fb, s_right, 0.5 * iv.tol, iv.depth + 1});
        }
        work.swap(next);
    }
    return total;
}

}  // namespace fitbo
