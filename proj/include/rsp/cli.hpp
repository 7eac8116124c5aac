#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rsp/bloch_core.hpp"
#include "rsp/config.hpp"

namespace rsp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kValidationFailure = 2,
    kNonConvergence = 3,
};

struct BellRow {
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    bool in_region = false;
    bool computed = false;
    bool converged = true;
    double fidelity = 0.0, payoff = 0.0;
    double D = 0.0, d = 0.0, Q = 0.0;
    std::string error;
};

struct WernerRow {
    double lambda = 0.0;
    double fidelity = 0.0, payoff = 0.0;
    bool converged = true;
};

/// Grid of lambda1, lambda2 in [-1, 1] with the given step, for each lambda3.
/// Rows outside the tetrahedron are dropped when physical_only is set and are
/// left without numeric values unless compute_outside is set.
std::vector<BellRow> sweep_bell(double step, const std::vector<double>& lambda3, bool physical_only,
                                bool compute_outside, const OptimizerConfig& cfg);
/// steps uniform lambda values over [0, 1]; throws for steps < 2.
std::vector<WernerRow> sweep_werner(std::size_t steps, const OptimizerConfig& cfg);

void write_bell_csv(std::ostream& out, const std::vector<BellRow>& rows);
void write_werner_csv(std::ostream& out, const std::vector<WernerRow>& rows);

/// Entry point of the rsp executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsp::cli
