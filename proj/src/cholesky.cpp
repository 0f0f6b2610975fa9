#include "fitbo/cholesky.hpp"

#include <Eigen/Cholesky>

#include <sstream>

namespace fitbo {

CholFactor cholesky_jitter(const Eigen::MatrixXd& K) {
    if (K.rows() != K.cols()) {
        throw std::invalid_argument("cholesky_jitter: matrix must be square");
    }
    const Eigen::Index n = K.rows();
    double scale = K.trace() / static_cast<double>(n);
    if (!(scale > 0.0)) {
        scale = 1.0;  // degenerate trace; fall back to unit scale so escalation still moves
    }

    const double max_jitter = 1e-4 * scale;
    double jitter = 1e-10 * scale;
    Eigen::LLT<Eigen::MatrixXd> llt;
    while (true) {
        Eigen::MatrixXd Kj = K;
        Kj.diagonal().array() += jitter;
        llt.compute(Kj);
        if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) {
            return CholFactor{llt.matrixL(), jitter};
        }
        if (jitter >= max_jitter) {
            std::ostringstream msg;
            msg << "cholesky_jitter: factorisation failed for n=" << n
                << " matrix; final jitter tried " << jitter;
            throw ConditioningError(jitter, msg.str());
        }
        jitter = std::min(jitter * 10.0, max_jitter);
    }
}

}  // namespace fitbo
