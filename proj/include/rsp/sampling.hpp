#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

#include "rsp/bloch_core.hpp"
#include "rsp/linalg.hpp"

namespace rsp {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is a pure function of
/// (key, i), and the key is a hash of (seed, stream ids...). Streams keyed by
/// work-item indices therefore give the same numbers whatever order or thread
/// the work items run on. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix64(key_ ^ mix64(counter_++)); }

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Uniform direction on the unit sphere.
Vec3 random_unit_vector(CounterRng& rng);

/// Haar-random rotation, built from a random axis and the appropriate angle density.
Mat3 random_rotation(CounterRng& rng);

/// Uniform point of the Bell-diagonal tetrahedron (rejection from the cube).
std::array<double, 3> random_tetrahedron_point(CounterRng& rng);

/// rho = G G^dagger / Tr(G G^dagger) with G a complex Ginibre 4x4 matrix;
/// generic full-rank physical state with a, b and E all nonzero.
TwoQubitState random_physical_state(CounterRng& rng);

/// Random physical state with b = 0: O1 diag(l) O2 correlations from the
/// tetrahedron plus a local a vector scaled to keep the state positive.
TwoQubitState random_state_b_zero(CounterRng& rng);

/// Fibonacci lattice of M near-uniform directions on the sphere.
std::vector<Vec3> fibonacci_sphere(std::size_t m);

/// Points of the d-dimensional additive recurrence (Kronecker) sequence with a
/// random Cranley-Patterson shift: x_k = frac(shift + k alpha) in [0, 1)^d.
class KroneckerSequence {
public:
    KroneckerSequence(std::size_t dim, CounterRng& shift_rng);
    std::vector<double> point(std::size_t k) const;

private:
    std::vector<double> alpha_;
    std::vector<double> shift_;
};

}  // namespace rsp
