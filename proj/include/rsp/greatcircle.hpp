#pragma once

#include <cstddef>
#include <vector>

#include "rsp/bloch_core.hpp"
#include "rsp/protocol.hpp"

namespace rsp {

/// Great circle of signal states orthogonal to the unit normal beta, with the
/// in-plane frame (e1, e2): e1 lies in the xy-plane, e2 = beta x e1, so
/// e1 x e2 = beta. At the poles the azimuth of beta is taken as 0, which gives
/// e1 = y and e2 = beta x y.
struct GreatCircle {
    Vec3 beta = Vec3::unit_z();
    double theta_beta = 0.0;
    double phi_beta = 0.0;
    Vec3 e1 = Vec3::unit_y();
    Vec3 e2 = -Vec3::unit_x();
};

/// Throws std::invalid_argument when |beta| differs from 1 by more than 1e-9.
GreatCircle frame_from_beta(const Vec3& beta);

/// Unit normal with polar angle theta and azimuth phi.
Vec3 spherical_unit(double theta, double phi);

/// s(phi) = cos(phi) e1 + sin(phi) e2, evaluated from the spherical angles of beta:
///   s_x = -cos(tb) cos(pb) sin(phi) - cos(phi) sin(pb)
///   s_y =  cos(phi) cos(pb) - cos(tb) sin(phi) sin(pb)
///   s_z =  sin(tb) sin(phi)
Vec3 signal_vector(const GreatCircle& gc, double phi);

struct QuadratureSpec {
    std::size_t n_points = 256;
    /// Double n_points until successive averages differ by less than tol.
    bool refine = false;
    double tol = 1e-12;
};

inline constexpr std::size_t kMaxQuadraturePoints = std::size_t{1} << 16;

struct QuadratureResult {
    double value = 0.0;
    std::size_t n_points = 0;
    bool converged = true;
};

/// Uniform phi grid of signal directions on the circle.
std::vector<Vec3> circle_points(const GreatCircle& gc, std::size_t n_points);

/// Neumaier-compensated mean.
double compensated_mean(const std::vector<double>& values);

/// Trapezoidal (uniform-grid) average of f over the circle. With refine set the
/// grid is doubled until the change drops below tol or kMaxQuadraturePoints is
/// exceeded, in which case converged is false. Throws std::invalid_argument
/// for n_points < 8, or when refine is set and n_points is not a power of two.
template <typename F>
QuadratureResult circle_average(const GreatCircle& gc, const QuadratureSpec& q, F&& f);

/// < 1/2 (1 + max_alpha r . s) > over the circle.
QuadratureResult avg_max_fidelity(const TwoQubitState& s, const DecodingStrategy& dec, const GreatCircle& gc,
                                  const QuadratureSpec& q = {});

/// < (max_alpha r . s)^2 > over the circle.
QuadratureResult avg_max_payoff(const TwoQubitState& s, const DecodingStrategy& dec, const GreatCircle& gc,
                                const QuadratureSpec& q = {});

/// Circle average of |E s|^2: 1/2 (Tr[E^T E] - |E beta|^2).
double standard_avg_payoff(const TwoQubitState& s, const Vec3& beta);

/// Circle-averaged maximized payoff with both rotation axes pinned to beta:
///   1/2 (|b|^2 - (b.beta)^2) cos^2((g1 - g2)/2) + 1/2 (Tr[E^T E] - |E beta|^2) sin^2((g1 - g2)/2)
double constrained_avg_payoff(const TwoQubitState& s, const Vec3& beta, double gamma1, double gamma2);

// ---------------------------------------------------------------------------

void validate_quadrature(const QuadratureSpec& q);

template <typename F>
QuadratureResult circle_average(const GreatCircle& gc, const QuadratureSpec& q, F&& f)
{
    validate_quadrature(q);
    auto evaluate = [&](std::size_t n) {
        const auto pts = circle_points(gc, n);
        std::vector<double> vals;
        vals.reserve(n);
        for (const Vec3& p : pts) vals.push_back(f(p));
        return compensated_mean(vals);
    };

    QuadratureResult r;
    r.n_points = q.n_points;
    r.value = evaluate(q.n_points);
    if (!q.refine) return r;

    while (true) {
        const std::size_t next = 2 * r.n_points;
        if (next > kMaxQuadraturePoints) {
            r.converged = false;
            return r;
        }
        const double v = evaluate(next);
        const double change = std::abs(v - r.value);
        r.value = v;
        r.n_points = next;
        if (change < q.tol) return r;
    }
}

}  // namespace rsp
