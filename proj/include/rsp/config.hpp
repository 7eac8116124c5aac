#pragma once

#include <cstddef>
#include <cstdint>

#include "rsp/greatcircle.hpp"

namespace rsp {

/// Tunables shared by the optimizer, sweeps and CLI. JSON field names match
/// the member names (see io.hpp).
struct OptimizerConfig {
    std::size_t starts = 16;
    std::size_t max_iter = 400;
    double simplex_tol = 1e-9;
    std::size_t quad_points = 256;
    bool quad_refine = false;
    double quad_tol = 1e-12;
    std::size_t beta_samples = 200;
    std::uint64_t seed = 42;
    double tol_closed_form = 5e-3;
    unsigned threads = 1;
    /// Local search around the extreme beta samples after the lattice scan.
    bool refine_beta = true;
    std::size_t beta_refine_evals = 20;
    /// Beta directions evaluated per row of the sweep-bell / werner tables.
    std::size_t sweep_beta_samples = 1;

    QuadratureSpec quadrature() const { return {quad_points, quad_refine, quad_tol}; }
};

/// Throws std::invalid_argument for out-of-range settings.
void validate_config(const OptimizerConfig& cfg);

}  // namespace rsp
