#include <doctest.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rsp/bloch_core.hpp"
#include "rsp/sampling.hpp"

using namespace rsp;

namespace {

double max_entry_diff(const DensityMatrix4& a, const DensityMatrix4& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < 16; ++k) d = std::max(d, std::abs(a.m[k] - b.m[k]));
    return d;
}

// |psi><psi| with psi = (|01> - |10>) / sqrt 2, written out by hand
DensityMatrix4 singlet_projector()
{
    DensityMatrix4 p;
    p(1, 1) = p(2, 2) = 0.5;
    p(1, 2) = p(2, 1) = -0.5;
    return p;
}

}  // namespace

TEST_CASE("new_state flags physicality without rejecting")
{
    CHECK(new_state({}, {}, -1.0 * Mat3::identity()).physical());
    CHECK(new_state({}, {}, Mat3::diag(0.5, 0.3, 0.1)).physical());
    const TwoQubitState bad = new_state({}, {}, Mat3::identity());
    CHECK_FALSE(bad.physical());
    CHECK(bad.min_eigenvalue() == doctest::Approx(-0.5));

    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(new_state({nan, 0, 0}, {}, Mat3::zero()), std::invalid_argument);
    CHECK_THROWS_AS(new_state({}, {}, Mat3::diag(std::numeric_limits<double>::infinity(), 0, 0)),
                    std::invalid_argument);
}

TEST_CASE("to_density_matrix examples")
{
    const DensityMatrix4 mixed = to_density_matrix(maximally_mixed());
    DensityMatrix4 quarter;
    for (std::size_t i = 0; i < 4; ++i) quarter(i, i) = 0.25;
    CHECK(max_entry_diff(mixed, quarter) < 1e-15);

    CHECK(max_entry_diff(to_density_matrix(singlet()), singlet_projector()) < 1e-15);

    // a = z, b = 0, E = 0: rho = (I + sz)/2 x I/2 = diag(1/2, 1/2, 0, 0)
    const DensityMatrix4 r = to_density_matrix(new_state(Vec3::unit_z(), {}, Mat3::zero()));
    const double reduced00 = (r(0, 0) + r(1, 1)).real(), reduced11 = (r(2, 2) + r(3, 3)).real();
    CHECK(reduced00 == doctest::Approx(1.0));
    CHECK(reduced11 == doctest::Approx(0.0));
    CHECK(std::abs(r(0, 2) + r(1, 3)) < 1e-15);
}

TEST_CASE("from_density_matrix examples and errors")
{
    DensityMatrix4 quarter;
    for (std::size_t i = 0; i < 4; ++i) quarter(i, i) = 0.25;
    const TwoQubitState m = from_density_matrix(quarter);
    CHECK(norm(m.a()) < 1e-15);
    CHECK(norm(m.b()) < 1e-15);
    CHECK(max_abs_diff(m.E(), Mat3::zero()) < 1e-15);

    const TwoQubitState s = from_density_matrix(singlet_projector());
    CHECK(max_abs_diff(s.E(), -1.0 * Mat3::identity()) < 1e-15);
    CHECK(norm(s.a()) + norm(s.b()) < 1e-15);

    DensityMatrix4 skewed = quarter;
    skewed(0, 1) = complex(0.1, 0.0);
    CHECK_THROWS_AS(from_density_matrix(skewed), std::invalid_argument);
    DensityMatrix4 heavy = quarter;
    heavy(0, 0) = 0.5;
    CHECK_THROWS_AS(from_density_matrix(heavy), std::invalid_argument);
}

TEST_CASE("density matrix round trip on random states")
{
    CounterRng rng(11);
    for (int t = 0; t < 100; ++t) {
        const TwoQubitState s = random_physical_state(rng);
        CHECK(s.physical());
        const DensityMatrix4 rho = to_density_matrix(s);
        CHECK(hermiticity_error(rho) < 1e-15);
        CHECK(std::abs(trace(rho) - 1.0) < 1e-14);
        const TwoQubitState t2 = from_density_matrix(rho);
        CHECK(max_abs_diff(s.a(), t2.a()) < 1e-12);
        CHECK(max_abs_diff(s.b(), t2.b()) < 1e-12);
        CHECK(max_abs_diff(s.E(), t2.E()) < 1e-12);
    }
}

TEST_CASE("unphysical states still give Hermitian unit-trace matrices")
{
    const DensityMatrix4 rho = to_density_matrix(new_state({0.9, 0, 0}, {0, 0.9, 0}, Mat3::identity()));
    CHECK(hermiticity_error(rho) < 1e-15);
    CHECK(std::abs(trace(rho) - 1.0) < 1e-15);
}

TEST_CASE("is_physical examples")
{
    CHECK(is_physical(singlet()).physical);
    const PhysicalityReport bad = is_physical(new_state({}, {}, Mat3::identity()));
    CHECK_FALSE(bad.physical);
    CHECK(bad.min_eigenvalue == doctest::Approx(-0.5));
    CHECK(is_physical(werner(1.0)).physical);
}

TEST_CASE("tetrahedron check examples")
{
    CHECK(bell_region_check(-1, -1, -1));
    CHECK(bell_region_check(0.5, 0.3, 0.1));
    CHECK_FALSE(bell_region_check(1, 1, 1));
    const auto m = bell_region_margins(0.5, 0.3, 0.1);
    CHECK(m[0] == doctest::Approx(0.1));
    CHECK(m[1] == doctest::Approx(0.9));
    CHECK(m[2] == doctest::Approx(1.3));
    CHECK(m[3] == doctest::Approx(1.7));
    // the other three vertices
    CHECK(bell_region_check(-1, 1, 1));
    CHECK(bell_region_check(1, -1, 1));
    CHECK(bell_region_check(1, 1, -1));
}

TEST_CASE("tetrahedron agrees with eigenvalue positivity")
{
    CounterRng rng(12);
    int mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
        const double l1 = rng.uniform(-1, 1), l2 = rng.uniform(-1, 1), l3 = rng.uniform(-1, 1);
        if (bell_region_check(l1, l2, l3) != is_physical(bell_diagonal(l1, l2, l3)).physical) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("Werner family")
{
    CHECK(max_abs_diff(werner(0.0).E(), Mat3::zero()) == 0.0);
    CHECK(max_abs_diff(werner(1.0).E(), singlet().E()) == 0.0);
    const auto ev = hermitian_eigenvalues(to_density_matrix(werner(0.5)));
    CHECK(ev[0] == doctest::Approx(0.125));
    CHECK(ev[1] == doctest::Approx(0.125));
    CHECK(ev[2] == doctest::Approx(0.125));
    CHECK(ev[3] == doctest::Approx(0.625));

    // lambda |psi-><psi-| + (1 - lambda) I / 4
    const double lambda = 0.37;
    DensityMatrix4 want = singlet_projector();
    for (auto& z : want.m) z *= lambda;
    for (std::size_t i = 0; i < 4; ++i) want(i, i) += (1.0 - lambda) / 4.0;
    CHECK(max_entry_diff(to_density_matrix(werner(lambda)), want) < 1e-15);

    CHECK_THROWS_AS(werner(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(werner(1.1), std::invalid_argument);
}

TEST_CASE("correlation capability")
{
    const Vec3 a = Vec3::unit_x(), b = Vec3::unit_z();
    CHECK(max_abs_diff(correlation_capability(new_state(a, b, outer(a, b))), Mat3::zero()) == 0.0);
    CHECK(max_abs_diff(correlation_capability(singlet()), -1.0 * Mat3::identity()) == 0.0);

    const Vec3 v = 0.4 * Vec3::unit_z();
    const Mat3 chi = correlation_capability(new_state(v, v, -0.2 * Mat3::identity()));
    CHECK(max_abs_diff(chi, Mat3::diag(-0.2, -0.2, -0.2 - 0.16)) < 1e-15);

    CounterRng rng(13);
    for (int t = 0; t < 50; ++t) {
        const Vec3 p = rng.uniform() * random_unit_vector(rng), q = rng.uniform() * random_unit_vector(rng);
        CHECK(max_abs_diff(correlation_capability(new_state(p, q, outer(p, q))), Mat3::zero()) == 0.0);
    }
}

TEST_CASE("squared correlation eigenvalues")
{
    const auto iso = squared_correlation_eigs(-0.6 * Mat3::identity());
    for (double l : iso) CHECK(l == doctest::Approx(0.36));
    const auto d = squared_correlation_eigs(Mat3::diag(0.5, 0.3, 0.1));
    CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(d[2] == doctest::Approx(0.01).epsilon(1e-12));
    const auto z = squared_correlation_eigs(Mat3::zero());
    CHECK(z == std::array<double, 3>{0.0, 0.0, 0.0});

    CounterRng rng(14);
    for (int t = 0; t < 100; ++t) {
        Mat3 E;
        for (double& x : E.m) x = rng.uniform(-1, 1);
        const auto base = squared_correlation_eigs(E);
        const auto rot = squared_correlation_eigs(random_rotation(rng) * E * random_rotation(rng));
        CHECK(base[0] >= base[1]);
        CHECK(base[1] >= base[2]);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(base[k] - rot[k]) < 1e-10);
    }
}
