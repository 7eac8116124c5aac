#include "rsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsp::oracle {
namespace {

constexpr complex kI{0.0, 1.0};

Matrix2 axis_operator(const Vec3& v)  // v.sigma
{
    return complex(v.x) * pauli(1) + complex(v.y) * pauli(2) + complex(v.z) * pauli(3);
}

Matrix4 scale(complex s, Matrix4 a)
{
    for (auto& z : a.m) z *= s;
    return a;
}

Matrix4 add(Matrix4 a, const Matrix4& b)
{
    for (std::size_t k = 0; k < 16; ++k) a.m[k] += b.m[k];
    return a;
}

}  // namespace

Matrix2 identity2() { return Matrix2{{1.0, 0.0, 0.0, 1.0}}; }

Matrix2 pauli(int k)
{
    switch (k) {
    case 1: return Matrix2{{0.0, 1.0, 1.0, 0.0}};
    case 2: return Matrix2{{0.0, -kI, kI, 0.0}};
    case 3: return Matrix2{{1.0, 0.0, 0.0, -1.0}};
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b)
{
    Matrix2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b)
{
    Matrix2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m[k] = a.m[k] + b.m[k];
    return r;
}

Matrix2 operator*(complex s, const Matrix2& a)
{
    Matrix2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m[k] = s * a.m[k];
    return r;
}

Matrix2 adjoint(const Matrix2& a)
{
    Matrix2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

complex trace(const Matrix2& a) { return a(0, 0) + a(1, 1); }

Matrix4 kron(const Matrix2& a, const Matrix2& b)
{
    Matrix4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

Matrix4 operator*(const Matrix4& a, const Matrix4& b)
{
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            complex acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

complex trace(const Matrix4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

Matrix2 partial_trace_a(const Matrix4& a)
{
    Matrix2 r;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(k, l) = a(k, l) + a(2 + k, 2 + l);
    return r;
}

Unitary2 Unitary2::from_axis_angle(const Vec3& n, double gamma)
{
    const complex c = std::cos(0.5 * gamma);
    const complex s = -kI * std::sin(0.5 * gamma);
    return {c * identity2() + s * axis_operator(n)};
}

Matrix4 density_from_pauli(const TwoQubitState& s)
{
    const Matrix2 id = identity2();
    Matrix4 rho = kron(id, id);
    for (int i = 1; i <= 3; ++i) {
        rho = add(rho, scale(s.a()[i - 1], kron(pauli(i), id)));
        rho = add(rho, scale(s.b()[i - 1], kron(id, pauli(i))));
        for (int j = 1; j <= 3; ++j) rho = add(rho, scale(s.E()(i - 1, j - 1), kron(pauli(i), pauli(j))));
    }
    return scale(0.25, rho);
}

Vec3 bloch_vector(const Matrix2& rho)
{
    return {trace(pauli(1) * rho).real(), trace(pauli(2) * rho).real(), trace(pauli(3) * rho).real()};
}

namespace {

// Unnormalized Bob state Tr_A[(P_m x I) rho], P_m = (I + sign alpha.sigma)/2
Matrix2 conditional_bob(const Matrix4& rho, const Vec3& alpha, double sign)
{
    const Matrix2 proj = complex(0.5) * (identity2() + complex(sign) * axis_operator(alpha));
    return partial_trace_a(kron(proj, identity2()) * rho);
}

}  // namespace

std::array<double, 2> branch_probabilities(const TwoQubitState& s, const Vec3& alpha)
{
    const Matrix4 rho = density_from_pauli(s);
    return {trace(conditional_bob(rho, alpha, +1.0)).real(), trace(conditional_bob(rho, alpha, -1.0)).real()};
}

DensityMatrix2 simulate_protocol(const TwoQubitState& s, const Vec3& alpha, const DecodingStrategy& dec)
{
    const Matrix4 rho = density_from_pauli(s);
    const std::array<Unitary2, 2> u{Unitary2::from_axis_angle(dec.n1, dec.gamma1),
                                    Unitary2::from_axis_angle(dec.n2, dec.gamma2)};
    DensityMatrix2 out;
    for (int m = 0; m < 2; ++m) {
        // P_m * rho_B|m, so the mixture needs no division
        const Matrix2 weighted = conditional_bob(rho, alpha, m == 0 ? 1.0 : -1.0);
        if (trace(weighted).real() < 1e-14) continue;
        out = out + u[m].u * weighted * adjoint(u[m].u);
    }
    return out;
}

PureQubit pure_state_from_bloch(const Vec3& s_hat)
{
    const double nz = std::abs(norm(s_hat) - 1.0);
    if (nz > 1e-9) throw std::invalid_argument("pure_state_from_bloch: not a unit vector");
    const double theta = std::acos(std::clamp(s_hat.z, -1.0, 1.0));
    const double phi = std::atan2(s_hat.y, s_hat.x);
    PureQubit q;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    if (c < 1e-15) {
        q.amp = {0.0, 1.0};
    } else {
        q.amp = {c, std::polar(s, phi)};
    }
    return q;
}

double fidelity(const PureQubit& psi, const Matrix2& rho)
{
    complex acc = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) acc += std::conj(psi.amp[i]) * rho(i, j) * psi.amp[j];
    return acc.real();
}

std::vector<DemoRun> standard_rsp_demo(std::size_t n_phases)
{
    const double r = 1.0 / std::sqrt(2.0);
    // (|01> - |10>)/sqrt2, amplitude index 2 * alice + bob
    const std::array<complex, 4> singlet{0.0, r, -r, 0.0};
    const Matrix2 sz = pauli(3);

    std::vector<DemoRun> runs;
    for (std::size_t k = 0; k < n_phases; ++k) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phases);
        const std::array<complex, 2> psi{r, std::polar(r, phi)};
        const std::array<complex, 2> perp{r, -std::polar(r, phi)};

        DemoRun run;
        run.phi = phi;
        for (int outcome = 0; outcome < 2; ++outcome) {
            const auto& chi = outcome == 0 ? psi : perp;
            std::array<complex, 2> bob{};
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t i = 0; i < 2; ++i) bob[j] += std::conj(chi[i]) * singlet[2 * i + j];
            const double p = std::norm(bob[0]) + std::norm(bob[1]);
            run.probabilities[outcome] = p;
            if (p < 1e-14) continue;
            if (outcome == 0) {
                // Bob holds psi_perp; sigma_z maps it to psi
                bob = {sz(0, 0) * bob[0] + sz(0, 1) * bob[1], sz(1, 0) * bob[0] + sz(1, 1) * bob[1]};
            }
            const complex overlap = std::conj(psi[0]) * bob[0] + std::conj(psi[1]) * bob[1];
            run.fidelity += std::norm(overlap);  // weighted by p through the unnormalized amplitudes
        }
        runs.push_back(run);
    }
    return runs;
}

}  // namespace rsp::oracle
