#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fitbo {

// Squared-exponential kernel hyperparameters plus the observation noise,
// all stored on the log scale so samplers can work unconstrained.
struct KernelHypers {
    Eigen::VectorXd log_lengthscales;  // per-dimension ARD lengthscales
    double log_outputscale = 0.0;      // signal std dev of the latent process
    double log_noise = std::log(0.03); // observation noise std dev

    int dim() const { return static_cast<int>(log_lengthscales.size()); }

    Eigen::ArrayXd lengthscales() const { return log_lengthscales.array().exp(); }
    double outputscale() const { return std::exp(log_outputscale); }
    double noise_std() const { return std::exp(log_noise); }

    void validate() const {
        if (!log_lengthscales.allFinite() || !std::isfinite(log_outputscale) ||
            !std::isfinite(log_noise)) {
            throw std::invalid_argument("KernelHypers: all log-parameters must be finite");
        }
    }
};

// Observed inputs on the unit hypercube and the corresponding noisy outputs.
// Near-duplicate rows are legal but flagged, since they push the Gram matrix
// towards singularity and lean on the jitter policy.
class Dataset {
public:
    Dataset(Eigen::MatrixXd X, Eigen::VectorXd y) : X_(std::move(X)), y_(std::move(y)) {
        if (X_.rows() < 1 || X_.rows() != y_.size()) {
            throw std::invalid_argument("Dataset: need n >= 1 rows and matching outputs");
        }
        if (!y_.allFinite() || !X_.allFinite()) {
            throw std::invalid_argument("Dataset: inputs and outputs must be finite");
        }
        rescan_duplicates();
    }

    void append(const Eigen::VectorXd& x, double y) {
        if (x.size() != X_.cols()) {
            throw std::invalid_argument("Dataset::append: dimension mismatch");
        }
        if (!x.allFinite() || !std::isfinite(y)) {
            throw std::invalid_argument("Dataset::append: values must be finite");
        }
        for (Eigen::Index i = 0; i < X_.rows() && !has_near_duplicates_; ++i) {
            has_near_duplicates_ = (X_.row(i).transpose() - x).squaredNorm() < kDuplicateTol2;
        }
        X_.conservativeResize(X_.rows() + 1, Eigen::NoChange);
        X_.row(X_.rows() - 1) = x.transpose();
        y_.conservativeResize(y_.size() + 1);
        y_(y_.size() - 1) = y;
    }

    const Eigen::MatrixXd& X() const { return X_; }
    const Eigen::VectorXd& y() const { return y_; }
    int size() const { return static_cast<int>(X_.rows()); }
    int dim() const { return static_cast<int>(X_.cols()); }
    double y_min() const { return y_.minCoeff(); }
    bool has_near_duplicates() const { return has_near_duplicates_; }

private:
    static constexpr double kDuplicateTol2 = 1e-16;  // squared distance

    void rescan_duplicates() {
        has_near_duplicates_ = false;
        for (Eigen::Index i = 0; i < X_.rows() && !has_near_duplicates_; ++i) {
            for (Eigen::Index j = i + 1; j < X_.rows(); ++j) {
                if ((X_.row(i) - X_.row(j)).squaredNorm() < kDuplicateTol2) {
                    has_near_duplicates_ = true;
                    break;
                }
            }
        }
    }

    Eigen::MatrixXd X_;
    Eigen::VectorXd y_;
    bool has_near_duplicates_ = false;
};

}  // namespace fitbo
