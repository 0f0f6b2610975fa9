#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace fitbo {

enum class BenchmarkName { Branin, Eggholder, Hartmann6 };

// A benchmark objective rescaled to the unit hypercube, with the certified
// ground truth needed by the regret metrics. Truth constants stored here are
// re-certified against truth_oracle in the test suite.
struct BenchmarkSpec {
    BenchmarkName name;
    int dim;
    Eigen::VectorXd lower;  // native box
    Eigen::VectorXd upper;
    std::vector<Eigen::VectorXd> minimizers_unit;
    double f_min;
};

const BenchmarkSpec& benchmark(BenchmarkName name);
const BenchmarkSpec* benchmark_by_name(std::string_view name);  // nullptr if unknown
const char* to_string(BenchmarkName name);

Eigen::VectorXd to_native(const BenchmarkSpec& spec, const Eigen::VectorXd& x_unit);
Eigen::VectorXd to_unit(const BenchmarkSpec& spec, const Eigen::VectorXd& x_native);

// Evaluate at a unit-cube point; throws std::invalid_argument outside [0,1]^d.
double evaluate(const BenchmarkSpec& spec, const Eigen::VectorXd& x_unit);

// Native-domain formulas, exposed for the rescaling identity checks.
double evaluate_native(const BenchmarkSpec& spec, const Eigen::VectorXd& x_native);

struct OracleResult {
    std::vector<Eigen::VectorXd> minimizers_unit;
    double f_min;
};

// Independent certification of the stored truth: brute-force grid (d = 2) or
// quasirandom probing (d > 2) followed by local pattern-search refinement.
OracleResult truth_oracle(const BenchmarkSpec& spec, int grid_resolution);

}  // namespace fitbo
