#include "rsp/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsp {

Vec3 normalize(const Vec3& a)
{
    const double n = norm(a);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("normalize: zero or non-finite vector");
    return a / n;
}

double max_abs_diff(const Mat3& a, const Mat3& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < 9; ++k) d = std::max(d, std::abs(a.m[k] - b.m[k]));
    return d;
}

double max_abs_diff(const Vec3& a, const Vec3& b)
{
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

bool is_finite(const Mat3& a)
{
    return std::all_of(a.m.begin(), a.m.end(), [](double v) { return std::isfinite(v); });
}

Eigen3 symmetric_eigen(const Mat3& a)
{
    SquareMatrix<3> s{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) s[i][j] = 0.5 * (a(i, j) + a(j, i));
    const auto e = symmetric_eigen<3>(s);
    Eigen3 out;
    out.values = e.values;
    for (std::size_t k = 0; k < 3; ++k) out.vectors[k] = {e.vectors[0][k], e.vectors[1][k], e.vectors[2][k]};
    return out;
}

}  // namespace rsp
