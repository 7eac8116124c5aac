#include "rsp/bloch_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsp {
namespace {

using Pauli = std::array<complex, 4>;  // row-major 2x2

constexpr complex kI{0.0, 1.0};

const std::array<Pauli, 4>& paulis()
{
    // sigma_0 = identity, then x, y, z
    static const std::array<Pauli, 4> p{{
        {1.0, 0.0, 0.0, 1.0},
        {0.0, 1.0, 1.0, 0.0},
        {0.0, -kI, kI, 0.0},
        {1.0, 0.0, 0.0, -1.0},
    }};
    return p;
}

// Tr[(sigma_i x sigma_j) rho]
double pauli_expectation(const DensityMatrix4& rho, std::size_t i, std::size_t j)
{
    const Pauli& pa = paulis()[i];
    const Pauli& pb = paulis()[j];
    complex acc = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const complex op = pa[2 * (r / 2) + c / 2] * pb[2 * (r % 2) + c % 2];
            acc += op * rho(c, r);
        }
    return acc.real();
}

}  // namespace

complex trace(const DensityMatrix4& rho) { return rho(0, 0) + rho(1, 1) + rho(2, 2) + rho(3, 3); }

double hermiticity_error(const DensityMatrix4& rho)
{
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) err = std::max(err, std::abs(rho(i, j) - std::conj(rho(j, i))));
    return err;
}

std::array<double, 4> hermitian_eigenvalues(const DensityMatrix4& rho)
{
    // H = A + iB embeds as the real symmetric [[A, -B], [B, A]], whose
    // spectrum is that of H with every eigenvalue doubled.
    SquareMatrix<8> big{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const complex h = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            big[i][j] = h.real();
            big[i + 4][j + 4] = h.real();
            big[i][j + 4] = -h.imag();
            big[i + 4][j] = h.imag();
        }
    const auto ev = symmetric_eigenvalues<8>(big);
    return {0.5 * (ev[0] + ev[1]), 0.5 * (ev[2] + ev[3]), 0.5 * (ev[4] + ev[5]), 0.5 * (ev[6] + ev[7])};
}

TwoQubitState new_state(const Vec3& a, const Vec3& b, const Mat3& E)
{
    if (!is_finite(a) || !is_finite(b) || !is_finite(E)) throw std::invalid_argument("new_state: non-finite entry");
    TwoQubitState s;
    s.a_ = a;
    s.b_ = b;
    s.E_ = E;
    const auto ev = hermitian_eigenvalues(to_density_matrix(s));
    s.min_eigenvalue_ = ev[0];
    s.physical_ = ev[0] >= -kPhysicalTolerance;
    return s;
}

DensityMatrix4 to_density_matrix(const TwoQubitState& s)
{
    std::array<std::array<double, 4>, 4> coeff{};
    coeff[0][0] = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        coeff[i + 1][0] = s.a()[i];
        coeff[0][i + 1] = s.b()[i];
        for (std::size_t j = 0; j < 3; ++j) coeff[i + 1][j + 1] = s.E()(i, j);
    }

    DensityMatrix4 rho;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (coeff[i][j] == 0.0) continue;
            const Pauli& pa = paulis()[i];
            const Pauli& pb = paulis()[j];
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    rho(r, c) += 0.25 * coeff[i][j] * pa[2 * (r / 2) + c / 2] * pb[2 * (r % 2) + c % 2];
        }
    return rho;
}

TwoQubitState from_density_matrix(const DensityMatrix4& rho, double tol)
{
    for (const complex& z : rho.m)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("from_density_matrix: non-finite entry");
    if (hermiticity_error(rho) > tol) throw std::invalid_argument("from_density_matrix: matrix is not Hermitian");
    if (std::abs(trace(rho) - 1.0) > tol) throw std::invalid_argument("from_density_matrix: trace is not 1");

    Vec3 a;
    Vec3 b;
    Mat3 E;
    for (std::size_t i = 0; i < 3; ++i) {
        a[i] = pauli_expectation(rho, i + 1, 0);
        b[i] = pauli_expectation(rho, 0, i + 1);
        for (std::size_t j = 0; j < 3; ++j) E(i, j) = pauli_expectation(rho, i + 1, j + 1);
    }
    return new_state(a, b, E);
}

PhysicalityReport is_physical(const TwoQubitState& s, double tol)
{
    const double lo = hermitian_eigenvalues(to_density_matrix(s))[0];
    return {lo >= -tol, lo};
}

std::array<double, 4> bell_region_margins(double l1, double l2, double l3)
{
    return {1.0 - l1 - l2 - l3, 1.0 - l1 + l2 + l3, 1.0 + l1 - l2 + l3, 1.0 + l1 + l2 - l3};
}

bool bell_region_check(double l1, double l2, double l3)
{
    const auto m = bell_region_margins(l1, l2, l3);
    return std::all_of(m.begin(), m.end(), [](double v) { return v >= 0.0; });
}

TwoQubitState bell_diagonal(double l1, double l2, double l3) { return new_state({}, {}, Mat3::diag(l1, l2, l3)); }

TwoQubitState singlet() { return bell_diagonal(-1.0, -1.0, -1.0); }

TwoQubitState maximally_mixed() { return new_state({}, {}, Mat3::zero()); }

TwoQubitState werner(double lambda)
{
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("werner: lambda must lie in [0, 1]");
    return bell_diagonal(-lambda, -lambda, -lambda);
}

Mat3 correlation_capability(const TwoQubitState& s) { return s.E() - outer(s.a(), s.b()); }

std::array<double, 3> squared_correlation_eigs(const Mat3& E)
{
    auto ev = symmetric_eigen(transpose(E) * E).values;
    for (double& v : ev) v = std::max(v, 0.0);
    return {ev[2], ev[1], ev[0]};
}

}  // namespace rsp
