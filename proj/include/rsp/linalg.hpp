#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace rsp {

/// Real 3-vector used for every Bloch-space quantity (local Bloch vectors,
/// measurement axes, rotation axes, signal directions).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

    static constexpr Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
    static constexpr Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
    static constexpr Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double norm_squared(const Vec3& a) { return dot(a, a); }

/// Throws std::invalid_argument for the zero vector.
Vec3 normalize(const Vec3& a);

inline bool is_finite(const Vec3& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

/// 3x3 real matrix, row-major: m(i, j) is row i, column j with i, j in {x, y, z}.
struct Mat3 {
    std::array<double, 9> m{};

    constexpr double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }
    constexpr double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }

    static constexpr Mat3 zero() { return {}; }
    static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
    static constexpr Mat3 diag(double a, double b, double c)
    {
        Mat3 r;
        r(0, 0) = a;
        r(1, 1) = b;
        r(2, 2) = c;
        return r;
    }
    static constexpr Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2)
    {
        Mat3 r;
        for (std::size_t j = 0; j < 3; ++j) {
            r(0, j) = r0[j];
            r(1, j) = r1[j];
            r(2, j) = r2[j];
        }
        return r;
    }

    constexpr Vec3 row(std::size_t i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
    constexpr Vec3 col(std::size_t j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }

    friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 operator+(const Mat3& a, const Mat3& b)
{
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = a.m[k] + b.m[k];
    return r;
}
constexpr Mat3 operator-(const Mat3& a, const Mat3& b)
{
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = a.m[k] - b.m[k];
    return r;
}
constexpr Mat3 operator*(double s, const Mat3& a)
{
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = s * a.m[k];
    return r;
}
constexpr Mat3 operator*(const Mat3& a, const Mat3& b)
{
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}
constexpr Vec3 operator*(const Mat3& a, const Vec3& v)
{
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

constexpr Mat3 transpose(const Mat3& a)
{
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}
constexpr double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }
constexpr double determinant(const Mat3& a)
{
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}
constexpr Mat3 outer(const Vec3& u, const Vec3& v)
{
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = u[i] * v[j];
    return r;
}
/// [n]x such that skew(n) * v == cross(n, v).
constexpr Mat3 skew(const Vec3& n)
{
    return Mat3::from_rows({0.0, -n.z, n.y}, {n.z, 0.0, -n.x}, {-n.y, n.x, 0.0});
}

double max_abs_diff(const Mat3& a, const Mat3& b);
double max_abs_diff(const Vec3& a, const Vec3& b);
bool is_finite(const Mat3& a);

/// Square real matrix of fixed size for the small symmetric eigenproblems.
template <std::size_t N>
using SquareMatrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
struct SymmetricEigen {
    std::array<double, N> values{};  ///< ascending
    SquareMatrix<N> vectors{};       ///< column k pairs with values[k]
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix. Sweeps until the
/// off-diagonal mass falls below 1e-30 of the diagonal mass, which puts
/// eigenvalue errors at the 1e-15 level for the O(1) matrices used here.
template <std::size_t N>
SymmetricEigen<N> symmetric_eigen(SquareMatrix<N> a)
{
    SquareMatrix<N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double diag = 0.0;
        for (std::size_t p = 0; p < N; ++p) {
            diag += a[p][p] * a[p][p];
            for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
        }
        if (off <= 1e-30 * diag || off < 1e-300) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = a[q][p] = 0.0;
                for (std::size_t r = 0; r < N; ++r) {
                    const double vrp = v[r][p];
                    const double vrq = v[r][q];
                    v[r][p] = vrp - s * (vrq + tau * vrp);
                    v[r][q] = vrq + s * (vrp - tau * vrq);
                    if (r == p || r == q) continue;
                    const double arp = a[r][p];
                    const double arq = a[r][q];
                    a[r][p] = a[p][r] = arp - s * (arq + tau * arp);
                    a[r][q] = a[q][r] = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    // insertion sort, N <= 8
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = i; j > 0 && a[order[j - 1]][order[j - 1]] > a[order[j]][order[j]]; --j)
            std::swap(order[j - 1], order[j]);

    SymmetricEigen<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a[order[k]][order[k]];
        for (std::size_t r = 0; r < N; ++r) out.vectors[r][k] = v[r][order[k]];
    }
    return out;
}

template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(const SquareMatrix<N>& a)
{
    return symmetric_eigen<N>(a).values;
}

struct Eigen3 {
    std::array<double, 3> values{};  ///< ascending
    std::array<Vec3, 3> vectors{};   ///< unit eigenvectors, paired with values
};

/// Eigen-decomposition of a symmetric Mat3 (ascending).
Eigen3 symmetric_eigen(const Mat3& a);

}  // namespace rsp
