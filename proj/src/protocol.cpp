#include "rsp/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsp {
namespace {

void require_unit_axis(const Vec3& n, const char* what)
{
    if (!is_finite(n) || std::abs(norm(n) - 1.0) > 1e-9) throw std::invalid_argument(what);
}

}  // namespace

double wrap_angle(double gamma)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double g = std::fmod(gamma, two_pi);
    if (g <= -std::numbers::pi) g += two_pi;
    if (g > std::numbers::pi) g -= two_pi;
    return g;
}

DecodingStrategy make_decoding(const Vec3& n1, double gamma1, const Vec3& n2, double gamma2)
{
    require_unit_axis(n1, "make_decoding: n1 is not a unit vector");
    require_unit_axis(n2, "make_decoding: n2 is not a unit vector");
    if (!std::isfinite(gamma1) || !std::isfinite(gamma2)) throw std::invalid_argument("make_decoding: non-finite angle");
    return {n1, wrap_angle(gamma1), n2, wrap_angle(gamma2)};
}

DecodingStrategy standard_decoding(const Vec3& beta) { return make_decoding(beta, 0.0, beta, std::numbers::pi); }

Mat3 rotation_matrix(const Vec3& n, double gamma)
{
    require_unit_axis(n, "rotation_matrix: axis is not a unit vector");
    const double c = std::cos(gamma);
    const double s = std::sin(gamma);
    return c * Mat3::identity() + s * skew(n) + (1.0 - c) * outer(n, n);
}

BranchResult measure_branch(const TwoQubitState& s, const Vec3& alpha, Outcome m, double eps)
{
    const Vec3 alpha_m = m == Outcome::Plus ? alpha : -alpha;
    BranchResult r;
    r.probability = 0.5 * (1.0 + dot(s.a(), alpha_m));
    r.weighted = 0.5 * (s.b() + transpose(s.E()) * alpha_m);
    if (r.probability > eps) r.bloch = r.weighted / r.probability;
    return r;
}

Vec3 average_bloch(const TwoQubitState& s, const Vec3& alpha, const Mat3& R1, const Mat3& R2)
{
    return 0.5 * ((R1 + R2) * s.b() + (R1 - R2) * (transpose(s.E()) * alpha));
}

Vec3 average_bloch(const TwoQubitState& s, const Vec3& alpha, const DecodingStrategy& dec)
{
    return average_bloch(s, alpha, rotation_matrix(dec.n1, dec.gamma1), rotation_matrix(dec.n2, dec.gamma2));
}

Vec3 optimal_encoding_axis(const TwoQubitState& s, const DecodingStrategy& dec, const Vec3& s_hat)
{
    const Mat3 R1 = rotation_matrix(dec.n1, dec.gamma1);
    const Mat3 R2 = rotation_matrix(dec.n2, dec.gamma2);
    const Vec3 g = s.E() * ((transpose(R1) - transpose(R2)) * s_hat);
    const double n = norm(g);
    if (n < 1e-12) return Vec3::unit_z();
    return g / n;
}

EncodedOverlapKernel::EncodedOverlapKernel(const TwoQubitState& s, const Mat3& R1, const Mat3& R2)
    : u((R1 + R2) * s.b()), M(s.E() * (transpose(R1) - transpose(R2)))
{
}

EncodedOverlapKernel::EncodedOverlapKernel(const TwoQubitState& s, const DecodingStrategy& dec)
    : EncodedOverlapKernel(s, rotation_matrix(dec.n1, dec.gamma1), rotation_matrix(dec.n2, dec.gamma2))
{
}

double max_encoded_overlap(const TwoQubitState& s, const DecodingStrategy& dec, const Vec3& s_hat)
{
    return EncodedOverlapKernel(s, dec)(s_hat);
}

}  // namespace rsp
