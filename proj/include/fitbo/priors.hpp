#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "fitbo/types.hpp"

namespace fitbo {

// Whitened coordinate layout, all with Gaussian priors:
//   z[0..d)   log-lengthscales
//   z[d]      log-outputscale
//   z[d+1]    log-noise
//   z[d+2]    zeta = log(y_min - eta), so eta = y_min - exp(zeta) < y_min always
struct WhitenedLayout {
    static int size(int dim) { return dim + 3; }
    static int zeta_index(int dim) { return dim + 2; }
    static int noise_index(int dim) { return dim + 1; }
};

// Independent Gaussian priors over the whitened coordinates.
struct PriorSpec {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;

    void validate() const {
        if (mean.size() != stddev.size() || mean.size() < 1) {
            throw std::invalid_argument("PriorSpec: mean/stddev sizes must match");
        }
        if (!(stddev.array() > 0.0).all()) {
            throw std::invalid_argument("PriorSpec: stddevs must be strictly positive");
        }
    }

    // Weakly informative defaults for objectives on the unit hypercube.
    static PriorSpec defaults(int dim) {
        PriorSpec p;
        p.mean.resize(WhitenedLayout::size(dim));
        p.stddev.resize(WhitenedLayout::size(dim));
        p.mean.head(dim).setConstant(std::log(0.3));
        p.stddev.head(dim).setConstant(0.7);
        p.mean(dim) = 0.0;  // log-outputscale
        p.stddev(dim) = 1.0;
        p.mean(dim + 1) = std::log(0.03);  // log-noise
        p.stddev(dim + 1) = 1.0;
        p.mean(dim + 2) = 0.0;  // zeta
        p.stddev(dim + 2) = 1.0;
        return p;
    }
};

inline KernelHypers hypers_from_whitened(const Eigen::VectorXd& z, int dim) {
    if (z.size() != WhitenedLayout::size(dim)) {
        throw std::invalid_argument("hypers_from_whitened: bad coordinate length");
    }
    KernelHypers h;
    h.log_lengthscales = z.head(dim);
    h.log_outputscale = z(dim);
    h.log_noise = z(dim + 1);
    return h;
}

inline double eta_from_whitened(const Eigen::VectorXd& z, int dim, double y_min) {
    return y_min - std::exp(z(WhitenedLayout::zeta_index(dim)));
}

inline Eigen::VectorXd whiten(const KernelHypers& h, double eta, double y_min) {
    if (!(eta < y_min)) {
        throw std::domain_error("whiten: eta must lie strictly below y_min");
    }
    const int dim = h.dim();
    Eigen::VectorXd z(WhitenedLayout::size(dim));
    z.head(dim) = h.log_lengthscales;
    z(dim) = h.log_outputscale;
    z(dim + 1) = h.log_noise;
    z(dim + 2) = std::log(y_min - eta);
    return z;
}

}  // namespace fitbo
