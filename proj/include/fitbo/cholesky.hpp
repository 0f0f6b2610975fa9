#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace fitbo {

// Lower-triangular factor of K + jitter*I together with the jitter that
// made the factorisation succeed.
struct CholFactor {
    Eigen::MatrixXd L;
    double jitter = 0.0;
};

// Raised when no jitter within the escalation bounds produces a positive
// definite matrix.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(double final_jitter, const std::string& what)
        : std::runtime_error(what), final_jitter_(final_jitter) {}
    double final_jitter() const { return final_jitter_; }

private:
    double final_jitter_;
};

// Factor K + jitter*I. The jitter starts at 1e-10 * trace(K)/n and escalates
// by x10 up to 1e-4 * trace(K)/n before giving up loudly.
CholFactor cholesky_jitter(const Eigen::MatrixXd& K);

}  // namespace fitbo
