#include "rsp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rsp {

CounterRng::CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) : key_(mix64(seed))
{
    for (std::uint64_t id : stream) key_ = mix64(key_ ^ mix64(id + 0x632be59bd9b4e019ULL));
}

double CounterRng::uniform()
{
    // 53 high bits
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double CounterRng::normal()
{
    std::normal_distribution<double> dist;
    return dist(*this);
}

Vec3 random_unit_vector(CounterRng& rng)
{
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Mat3 random_rotation(CounterRng& rng)
{
    double w = 0, x = 0, y = 0, z = 0, n2 = 0;
    do {
        w = rng.normal();
        x = rng.normal();
        y = rng.normal();
        z = rng.normal();
        n2 = w * w + x * x + y * y + z * z;
    } while (n2 < 1e-12);
    const double s = 1.0 / std::sqrt(n2);
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return Mat3::from_rows({1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)});
}

std::array<double, 3> random_tetrahedron_point(CounterRng& rng)
{
    while (true) {
        const double l1 = rng.uniform(-1.0, 1.0);
        const double l2 = rng.uniform(-1.0, 1.0);
        const double l3 = rng.uniform(-1.0, 1.0);
        if (bell_region_check(l1, l2, l3)) return {l1, l2, l3};
    }
}

TwoQubitState random_physical_state(CounterRng& rng)
{
    std::array<complex, 16> g{};
    for (auto& z : g) z = {rng.normal(), rng.normal()};
    DensityMatrix4 rho;
    double tr = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            complex acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += g[4 * i + k] * std::conj(g[4 * j + k]);
            rho(i, j) = acc;
        }
    for (std::size_t i = 0; i < 4; ++i) tr += rho(i, i).real();
    for (auto& z : rho.m) z /= tr;
    return from_density_matrix(rho);
}

TwoQubitState random_state_b_zero(CounterRng& rng)
{
    const auto l = random_tetrahedron_point(rng);
    const Mat3 O1 = random_rotation(rng);
    const Mat3 O2 = random_rotation(rng);
    // p * (locally rotated Bell-diagonal) + (1 - p) * (rho_A x I/2): both terms have b = 0
    const double p = rng.uniform(0.5, 1.0);
    const Vec3 a = (1.0 - p) * rng.uniform() * random_unit_vector(rng);
    return new_state(a, {}, p * (O1 * Mat3::diag(l[0], l[1], l[2]) * O2));
}

std::vector<Vec3> fibonacci_sphere(std::size_t m)
{
    std::vector<Vec3> pts;
    pts.reserve(m);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < m; ++k) {
        const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(m);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(k);
        pts.push_back(normalize({r * std::cos(phi), r * std::sin(phi), z}));
    }
    return pts;
}

KroneckerSequence::KroneckerSequence(std::size_t dim, CounterRng& shift_rng) : alpha_(dim), shift_(dim)
{
    // g is the unique positive root of x^(d+1) = x + 1
    double g = 2.0;
    for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(dim + 1));
    for (std::size_t i = 0; i < dim; ++i) {
        const double a = std::pow(1.0 / g, static_cast<double>(i + 1));
        alpha_[i] = a - std::floor(a);
        shift_[i] = shift_rng.uniform();
    }
}

std::vector<double> KroneckerSequence::point(std::size_t k) const
{
    std::vector<double> x(alpha_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = shift_[i] + static_cast<double>(k) * alpha_[i];
        x[i] = v - std::floor(v);
    }
    return x;
}

}  // namespace rsp
