#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rsp/bloch_core.hpp"
#include "rsp/protocol.hpp"

/// Operator-level simulation of the protocol on 2x2 / 4x4 complex matrices.
/// Nothing here calls into the Bloch-space formulas (rotation_matrix,
/// average_bloch, to_density_matrix), so the two routes check each other.
namespace rsp::oracle {

using complex = std::complex<double>;

struct Matrix2 {
    std::array<complex, 4> m{};  // row-major

    complex operator()(std::size_t i, std::size_t j) const { return m[2 * i + j]; }
    complex& operator()(std::size_t i, std::size_t j) { return m[2 * i + j]; }
};

using DensityMatrix2 = Matrix2;

struct Matrix4 {
    std::array<complex, 16> m{};

    complex operator()(std::size_t i, std::size_t j) const { return m[4 * i + j]; }
    complex& operator()(std::size_t i, std::size_t j) { return m[4 * i + j]; }
};

/// U = cos(g/2) I - i sin(g/2) n.sigma
struct Unitary2 {
    Matrix2 u;

    static Unitary2 from_axis_angle(const Vec3& n, double gamma);
};

struct PureQubit {
    std::array<complex, 2> amp{};
};

Matrix2 identity2();
Matrix2 pauli(int k);  // 1, 2, 3 -> x, y, z
Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator+(const Matrix2& a, const Matrix2& b);
Matrix2 operator*(complex s, const Matrix2& a);
Matrix2 adjoint(const Matrix2& a);
complex trace(const Matrix2& a);

Matrix4 kron(const Matrix2& a, const Matrix2& b);
Matrix4 operator*(const Matrix4& a, const Matrix4& b);
complex trace(const Matrix4& a);
/// Tr_A of a 4x4 operator (Alice first).
Matrix2 partial_trace_a(const Matrix4& a);

/// rho_AB assembled from its Pauli expansion.
Matrix4 density_from_pauli(const TwoQubitState& s);

/// (Tr[sigma_x rho], Tr[sigma_y rho], Tr[sigma_z rho])
Vec3 bloch_vector(const Matrix2& rho);

/// Conditions rho_AB on Alice's projector (I +/- alpha.sigma)/2, applies the
/// branch unitary to Bob's qubit and mixes the branches with their
/// probabilities. Branches with probability below 1e-14 contribute nothing.
DensityMatrix2 simulate_protocol(const TwoQubitState& s, const Vec3& alpha, const DecodingStrategy& dec);

/// Probabilities of the two measurement outcomes.
std::array<double, 2> branch_probabilities(const TwoQubitState& s, const Vec3& alpha);

/// +1 eigenvector of s.sigma; the first nonzero amplitude is real and positive.
PureQubit pure_state_from_bloch(const Vec3& s_hat);

/// <psi| rho |psi>
double fidelity(const PureQubit& psi, const Matrix2& rho);

struct DemoRun {
    double phi = 0.0;
    std::array<double, 2> probabilities{};
    double fidelity = 0.0;
};

/// Ideal protocol on the singlet for equatorial signals: Alice measures in
/// {|psi_s>, |psi_s>_perp}, Bob applies sigma_z after the |psi_s> outcome.
/// Works on state vectors only.
std::vector<DemoRun> standard_rsp_demo(std::size_t n_phases = 64);

}  // namespace rsp::oracle
