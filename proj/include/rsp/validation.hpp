#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsp/linalg.hpp"

namespace rsp {

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Worst observed error (or failure count for counting checks).
    double worst = 0.0;
    double tolerance = 0.0;
    std::size_t instances = 0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    std::size_t failures() const;
};

/// Builds the Bloch-space rotation for an axis-angle pair. Replaceable so a
/// deliberately broken rotation can be fed through the checks.
using RotationBuilder = std::function<Mat3(const Vec3&, double)>;

struct ValidationOptions {
    std::uint64_t seed = 42;
    std::size_t instances = 100;
    std::size_t region_samples = 10000;
    std::size_t quad_points = 256;
    RotationBuilder rotation;  ///< empty means rotation_matrix
};

/// Oracle equivalence, quadrature vs analytic averages, constrained decoding,
/// encoding optimality against a direction grid, tetrahedron vs eigenvalue
/// positivity, density-matrix round trips and the ideal singlet protocol.
ValidationReport run_validation(const ValidationOptions& opt = {});

}  // namespace rsp
