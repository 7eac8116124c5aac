#pragma once

#include <array>
#include <complex>

#include "rsp/linalg.hpp"

namespace rsp {

using complex = std::complex<double>;

/// Eigenvalue threshold below which a reconstructed density matrix counts as
/// unphysical. Boundary states (pure states, tetrahedron faces) sit at zero.
inline constexpr double kPhysicalTolerance = 1e-10;

/// 4x4 complex matrix, row-major, basis ordering |00>, |01>, |10>, |11>
/// with Alice's qubit first.
struct DensityMatrix4 {
    std::array<complex, 16> m{};

    complex operator()(std::size_t i, std::size_t j) const { return m[4 * i + j]; }
    complex& operator()(std::size_t i, std::size_t j) { return m[4 * i + j]; }
};

complex trace(const DensityMatrix4& rho);
/// max |rho(i,j) - conj(rho(j,i))|
double hermiticity_error(const DensityMatrix4& rho);
/// Ascending eigenvalues of the Hermitian part of rho.
std::array<double, 4> hermitian_eigenvalues(const DensityMatrix4& rho);

/// Two-qubit state in Bloch form: rho = 1/4 [I x I + a.sigma x I + I x b.sigma + sum_ij E_ij sigma_i x sigma_j].
///
/// Construction goes through `new_state`, which rejects non-finite input and
/// records whether the reconstructed density matrix is positive. Unphysical
/// parameter combinations are kept (flagged) so sweeps can probe region
/// boundaries; callers that need physical inputs check `physical()`.
class TwoQubitState {
public:
    TwoQubitState() = default;  // maximally mixed

    const Vec3& a() const { return a_; }
    const Vec3& b() const { return b_; }
    const Mat3& E() const { return E_; }

    bool physical() const { return physical_; }
    /// Smallest eigenvalue of the density matrix.
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    friend TwoQubitState new_state(const Vec3& a, const Vec3& b, const Mat3& E);

    Vec3 a_{};
    Vec3 b_{};
    Mat3 E_{};
    bool physical_ = true;
    double min_eigenvalue_ = 0.25;
};

/// Throws std::invalid_argument on non-finite entries.
TwoQubitState new_state(const Vec3& a, const Vec3& b, const Mat3& E);

DensityMatrix4 to_density_matrix(const TwoQubitState& s);

/// Pauli coefficients of rho. Throws std::invalid_argument when rho is not
/// Hermitian or not unit trace within `tol`.
TwoQubitState from_density_matrix(const DensityMatrix4& rho, double tol = 1e-9);

struct PhysicalityReport {
    bool physical = false;
    double min_eigenvalue = 0.0;
};

PhysicalityReport is_physical(const TwoQubitState& s, double tol = kPhysicalTolerance);

/// Positivity of the Bell-diagonal state with E = diag(l1, l2, l3): the four
/// tetrahedron inequalities
///   1 - l1 - l2 - l3 >= 0,  1 - l1 + l2 + l3 >= 0,
///   1 + l1 - l2 + l3 >= 0,  1 + l1 + l2 - l3 >= 0.
bool bell_region_check(double l1, double l2, double l3);

/// Left-hand sides of the four inequalities above, in that order.
std::array<double, 4> bell_region_margins(double l1, double l2, double l3);

TwoQubitState bell_diagonal(double l1, double l2, double l3);
TwoQubitState singlet();
TwoQubitState maximally_mixed();

/// lambda |psi-><psi-| + (1 - lambda) I/4. Throws if lambda is outside [0, 1].
TwoQubitState werner(double lambda);

/// Coefficients E_ij - a_i b_j of rho - rho_A x rho_B (up to the 1/4 Pauli factor).
Mat3 correlation_capability(const TwoQubitState& s);

/// Eigenvalues of E^T E (the squared singular values of E), descending.
std::array<double, 3> squared_correlation_eigs(const Mat3& E);

}  // namespace rsp
