#include "fitbo/quasirandom.hpp"

#include <array>
#include <cmath>

namespace fitbo {

namespace {

constexpr std::array<int, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(long index, int base) {
    double inv_base = 1.0 / base;
    double scale = inv_base;
    double value = 0.0;
    while (index > 0) {
        value += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv_base;
    }
    return value;
}

}  // namespace

Eigen::MatrixXd halton_points(int count, int dim, int skip) {
    if (dim < 1 || dim > static_cast<int>(kPrimes.size())) {
        throw std::invalid_argument("halton_points: dimension out of range");
    }
    Eigen::MatrixXd points(count, dim);
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < dim; ++j) {
            points(i, j) = radical_inverse(static_cast<long>(i) + skip, kPrimes[j]);
        }
    }
    return points;
}

Eigen::MatrixXd halton_points_rotated(int count, int dim, const Eigen::VectorXd& shift,
                                      int skip) {
    Eigen::MatrixXd points = halton_points(count, dim, skip);
    for (int j = 0; j < dim && j < shift.size(); ++j) {
        for (int i = 0; i < count; ++i) {
            double v = points(i, j) + shift(j);
            points(i, j) = v - std::floor(v);
        }
    }
    return points;
}

}  // namespace fitbo
