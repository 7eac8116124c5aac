#pragma once

#include <optional>

#include "rsp/bloch_core.hpp"
#include "rsp/linalg.hpp"

namespace rsp {

/// Bob's decoding: rotation (n1, gamma1) after outcome 1 and (n2, gamma2)
/// after outcome 2. Construct through `make_decoding`, which normalizes nothing
/// but validates the axes and wraps the angles to (-pi, pi].
///
/// The pair (n, gamma) and (-n, -gamma) describe the same rotation; no
/// canonical sign is imposed.
struct DecodingStrategy {
    Vec3 n1 = Vec3::unit_z();
    double gamma1 = 0.0;
    Vec3 n2 = Vec3::unit_z();
    double gamma2 = 0.0;
};

/// Throws std::invalid_argument when an axis is off the unit sphere by more than 1e-9.
DecodingStrategy make_decoding(const Vec3& n1, double gamma1, const Vec3& n2, double gamma2);

/// ((beta, 0), (beta, pi)): the decoding of the ideal singlet protocol.
DecodingStrategy standard_decoding(const Vec3& beta);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double gamma);

struct BranchResult {
    double probability = 0.0;
    /// Bob's conditional Bloch vector; empty when the outcome probability is
    /// below the degeneracy threshold.
    std::optional<Vec3> bloch;
    /// probability * bloch = (b + E^T alpha_m) / 2, always finite.
    Vec3 weighted;
};

enum class Outcome { Plus = 1, Minus = 2 };

/// R = cos g I + sin g [n]x + (1 - cos g) n n^T, i.e.
/// R v = cos g v + sin g (n x v) + (1 - cos g) n (n . v).
/// Throws std::invalid_argument when |n| differs from 1 by more than 1e-9.
Mat3 rotation_matrix(const Vec3& n, double gamma);

/// Alice projects along alpha_m = +/- alpha.
BranchResult measure_branch(const TwoQubitState& s, const Vec3& alpha, Outcome m, double eps = 1e-14);

/// r = 1/2 [(R1 + R2) b + (R1 - R2) E^T alpha]
Vec3 average_bloch(const TwoQubitState& s, const Vec3& alpha, const Mat3& R1, const Mat3& R2);
Vec3 average_bloch(const TwoQubitState& s, const Vec3& alpha, const DecodingStrategy& dec);

inline double linear_fidelity(const Vec3& r, const Vec3& s_hat) { return 0.5 * (1.0 + dot(r, s_hat)); }

/// (r . s)^2; the sign of the overlap is lost.
inline double payoff(const Vec3& r, const Vec3& s_hat)
{
    const double o = dot(r, s_hat);
    return o * o;
}

/// The measurement axis maximizing r . s: E (R1^T - R2^T) s, normalized.
/// When that vector vanishes (norm < 1e-12) the overlap does not depend on
/// alpha and z is returned.
Vec3 optimal_encoding_axis(const TwoQubitState& s, const DecodingStrategy& dec, const Vec3& s_hat);

/// max over alpha of r . s = 1/2 [(R1 + R2) b . s + |E (R1^T - R2^T) s|].
double max_encoded_overlap(const TwoQubitState& s, const DecodingStrategy& dec, const Vec3& s_hat);

/// Precomputed form of the encoding-maximized overlap for a fixed state and
/// decoding, used inside quadrature loops:
///   overlap(s) = 1/2 (u . s + |M s|),  u = (R1 + R2) b,  M = E (R1^T - R2^T).
struct EncodedOverlapKernel {
    Vec3 u;
    Mat3 M;

    EncodedOverlapKernel(const TwoQubitState& s, const Mat3& R1, const Mat3& R2);
    EncodedOverlapKernel(const TwoQubitState& s, const DecodingStrategy& dec);

    double operator()(const Vec3& s_hat) const { return 0.5 * (dot(u, s_hat) + norm(M * s_hat)); }
};

}  // namespace rsp
