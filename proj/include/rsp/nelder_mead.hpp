#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rsp {

struct NelderMeadOptions {
    std::size_t max_iter = 400;
    /// Converged when the spread of function values over the simplex is at most ftol.
    double ftol = 1e-9;
    /// Edge length of the initial simplex, per coordinate.
    double initial_step = 0.5;
    /// After convergence, rebuild a fresh simplex at the best vertex this many
    /// times; stops early when a restart gains less than ftol.
    int restarts = 2;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes f by the Nelder-Mead simplex method with the classic coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). The iteration
/// budget is shared across restarts.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt = {});

}  // namespace rsp
