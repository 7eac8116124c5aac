#include "rsp/greatcircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsp {

Vec3 spherical_unit(double theta, double phi)
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

GreatCircle frame_from_beta(const Vec3& beta)
{
    if (!is_finite(beta) || std::abs(norm(beta) - 1.0) > 1e-9)
        throw std::invalid_argument("frame_from_beta: beta is not a unit vector");
    const Vec3 b = normalize(beta);

    GreatCircle gc;
    gc.beta = b;
    gc.theta_beta = std::acos(std::clamp(b.z, -1.0, 1.0));
    // atan2(0, 0) == 0 pins the pole frame
    gc.phi_beta = std::atan2(b.y, b.x);

    const double cp = std::cos(gc.phi_beta);
    const double sp = std::sin(gc.phi_beta);
    gc.e1 = {-sp, cp, 0.0};
    // equals (-cos tb cos pb, -cos tb sin pb, sin tb)
    gc.e2 = cross(b, gc.e1);
    return gc;
}

Vec3 signal_vector(const GreatCircle& gc, double phi)
{
    const double ct = std::cos(gc.theta_beta);
    const double st = std::sin(gc.theta_beta);
    const double cp = std::cos(gc.phi_beta);
    const double sp = std::sin(gc.phi_beta);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {-ct * cp * s - c * sp, c * cp - ct * s * sp, st * s};
}

std::vector<Vec3> circle_points(const GreatCircle& gc, std::size_t n_points)
{
    std::vector<Vec3> pts;
    pts.reserve(n_points);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double phi = step * static_cast<double>(k);
        pts.push_back(std::cos(phi) * gc.e1 + std::sin(phi) * gc.e2);
    }
    return pts;
}

double compensated_mean(const std::vector<double>& values)
{
    if (values.empty()) return 0.0;
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(values.size());
}

void validate_quadrature(const QuadratureSpec& q)
{
    if (q.n_points < 8) throw std::invalid_argument("quadrature: n_points must be at least 8");
    if (q.refine && (q.n_points & (q.n_points - 1)) != 0)
        throw std::invalid_argument("quadrature: n_points must be a power of two when refining");
}

QuadratureResult avg_max_fidelity(const TwoQubitState& s, const DecodingStrategy& dec, const GreatCircle& gc,
                                  const QuadratureSpec& q)
{
    const EncodedOverlapKernel k(s, dec);
    return circle_average(gc, q, [&](const Vec3& sh) { return 0.5 * (1.0 + k(sh)); });
}

QuadratureResult avg_max_payoff(const TwoQubitState& s, const DecodingStrategy& dec, const GreatCircle& gc,
                                const QuadratureSpec& q)
{
    const EncodedOverlapKernel k(s, dec);
    return circle_average(gc, q, [&](const Vec3& sh) {
        const double o = k(sh);
        return o * o;
    });
}

double standard_avg_payoff(const TwoQubitState& s, const Vec3& beta)
{
    const Mat3& E = s.E();
    return 0.5 * (trace(transpose(E) * E) - norm_squared(E * beta));
}

double constrained_avg_payoff(const TwoQubitState& s, const Vec3& beta, double gamma1, double gamma2)
{
    const double local = norm_squared(s.b()) - dot(s.b(), beta) * dot(s.b(), beta);
    const double half = 0.5 * (gamma1 - gamma2);
    const double c = std::cos(half);
    const double sn = std::sin(half);
    return 0.5 * local * c * c + standard_avg_payoff(s, beta) * sn * sn;
}

}  // namespace rsp
