#include <doctest.h>

#include <stdexcept>

#include "rsp/greatcircle.hpp"
#include "rsp/metrics.hpp"
#include "rsp/sampling.hpp"
#include "test_support.hpp"

using namespace rsp;
using rsp::test::kPi;

TEST_CASE("signal vector at the pole")
{
    const GreatCircle gc = frame_from_beta(Vec3::unit_z());
    CHECK(max_abs_diff(signal_vector(gc, 0.0), Vec3::unit_y()) < 1e-15);
    CHECK(max_abs_diff(cross(gc.e1, gc.e2), Vec3::unit_z()) < 1e-15);
    CHECK(std::abs(gc.e1.z) + std::abs(gc.e2.z) < 1e-15);
    // the sweep stays on the equator and visits it uniformly
    for (int k = 0; k < 16; ++k) {
        const Vec3 s = signal_vector(gc, 2.0 * kPi * k / 16);
        CHECK(std::abs(s.z) < 1e-15);
        CHECK(norm(s) == doctest::Approx(1.0));
    }
}

TEST_CASE("frame for beta = x")
{
    const GreatCircle gc = frame_from_beta(Vec3::unit_x());
    CHECK(std::abs(std::abs(gc.e1.y) - 1.0) < 1e-15);
    CHECK(std::abs(dot(gc.e1, gc.e2)) < 1e-15);
    CHECK(max_abs_diff(cross(gc.e1, gc.e2), Vec3::unit_x()) < 1e-15);
}

TEST_CASE("frame invariants on random normals")
{
    CounterRng rng(31);
    for (int t = 0; t < 1000; ++t) {
        const Vec3 beta = random_unit_vector(rng);
        const GreatCircle gc = frame_from_beta(beta);
        CHECK(std::abs(dot(gc.e1, gc.e2)) < 1e-12);
        CHECK(std::abs(dot(gc.beta, gc.e1)) < 1e-12);
        CHECK(std::abs(dot(gc.beta, gc.e2)) < 1e-12);
        CHECK(max_abs_diff(cross(gc.e1, gc.e2), beta) < 1e-12);
        CHECK(std::abs(gc.e1.z) < 1e-12);  // in the xy-plane
        const double phi = rng.uniform(0, 2 * kPi);
        const Vec3 s = signal_vector(gc, phi);
        CHECK(std::abs(dot(s, beta)) < 1e-12);
        CHECK(std::abs(norm(s) - 1.0) < 1e-12);
        CHECK(max_abs_diff(s, std::cos(phi) * gc.e1 + std::sin(phi) * gc.e2) < 1e-12);
    }
    CHECK_THROWS_AS(frame_from_beta(Vec3{0.0, 0.0, 2.0}), std::invalid_argument);
}

TEST_CASE("avg_max_fidelity examples")
{
    const GreatCircle gz = frame_from_beta(Vec3::unit_z());
    CHECK(avg_max_fidelity(singlet(), standard_decoding(Vec3::unit_z()), gz).value == doctest::Approx(1.0));
    CHECK(avg_max_fidelity(maximally_mixed(), standard_decoding(Vec3::unit_z()), gz).value == doctest::Approx(0.5));

    // diag(0.5, 0.3, 0.1) with the decoding that aligns the circle to the top
    // singular plane: the exact circle mean is the elliptic value, which sits
    // 3e-3 under (1 + sqrt(D)) / 2
    const TwoQubitState s = bell_diagonal(0.5, 0.3, 0.1);
    CounterRng rng(32);
    for (int t = 0; t < 5; ++t) {
        const GreatCircle gc = frame_from_beta(random_unit_vector(rng));
        const auto [R1, R2] = test::aligning_decoding(gc.e1, gc.e2, gc.beta);
        const EncodedOverlapKernel k(s, R1, R2);
        const double mean = circle_average(gc, {256, false, 1e-12}, k).value;
        CHECK(0.5 * (1.0 + mean) == doctest::Approx(test::elliptic_fidelity(0.5, 0.3)).epsilon(1e-12));
        CHECK(std::abs(0.5 * (1.0 + mean) - fidelity_from_payoff(0.17)) <= 5e-3);
        // and its payoff reaches D exactly
        const double pay = circle_average(gc, {256, false, 1e-12}, [&](const Vec3& p) {
                               const double o = k(p);
                               return o * o;
                           }).value;
        CHECK(pay == doctest::Approx(0.17).epsilon(1e-12));
    }
}

TEST_CASE("avg_max_payoff examples")
{
    const GreatCircle gz = frame_from_beta(Vec3::unit_z());
    CHECK(avg_max_payoff(singlet(), standard_decoding(Vec3::unit_z()), gz).value == doctest::Approx(1.0));
    CHECK(avg_max_payoff(maximally_mixed(), standard_decoding(Vec3::unit_z()), gz).value == 0.0);
    for (double lambda : {0.0, 0.3, 0.5, 0.9}) {
        const GreatCircle gc = frame_from_beta(normalize(Vec3{0.2, -0.4, 0.7}));
        CHECK(avg_max_payoff(werner(lambda), standard_decoding(gc.beta), gc).value ==
              doctest::Approx(lambda * lambda).epsilon(1e-12));
    }
}

TEST_CASE("standard and constrained payoff formulas")
{
    for (double lambda : {0.2, 0.7, 1.0})
        CHECK(standard_avg_payoff(werner(lambda), normalize(Vec3{1, 2, 3})) == doctest::Approx(lambda * lambda));
    const TwoQubitState s = bell_diagonal(0.5, 0.3, 0.1);
    CHECK(standard_avg_payoff(s, Vec3::unit_z()) == doctest::Approx(0.17));
    CHECK(standard_avg_payoff(s, Vec3::unit_x()) == doctest::Approx(0.05));

    CounterRng rng(33);
    for (int t = 0; t < 50; ++t) {
        const TwoQubitState r = random_physical_state(rng);
        const Vec3 beta = random_unit_vector(rng);
        CHECK(constrained_avg_payoff(r, beta, 0.0, kPi) == doctest::Approx(standard_avg_payoff(r, beta)).epsilon(1e-14));
        const double g = rng.uniform(-kPi, kPi);
        const double bperp = norm_squared(r.b()) - dot(r.b(), beta) * dot(r.b(), beta);
        CHECK(constrained_avg_payoff(r, beta, g, g) == doctest::Approx(0.5 * bperp).epsilon(1e-14));
    }
}

TEST_CASE("quadrature matches the analytic circle averages")
{
    CounterRng rng(34);
    for (int t = 0; t < 50; ++t) {
        const TwoQubitState s = random_physical_state(rng);
        const GreatCircle gc = frame_from_beta(random_unit_vector(rng));
        const auto q = avg_max_payoff(s, standard_decoding(gc.beta), gc, {256, false, 1e-12});
        CHECK(std::abs(q.value - standard_avg_payoff(s, gc.beta)) < 1e-10);

        const double g1 = rng.uniform(-kPi, kPi), g2 = rng.uniform(-kPi, kPi);
        const auto c = avg_max_payoff(s, make_decoding(gc.beta, g1, gc.beta, g2), gc, {256, false, 1e-12});
        CHECK(std::abs(c.value - constrained_avg_payoff(s, gc.beta, g1, g2)) < 1e-10);
    }
}

TEST_CASE("constrained payoff is maximized at a half-turn or no relative turn")
{
    CounterRng rng(35);
    int corr_regime = 0, local_regime = 0;
    for (int t = 0; t < 200; ++t) {
        // alternate between generic states and mixtures dominated by a large b
        TwoQubitState s = random_physical_state(rng);
        if (t % 2 == 1) {
            const Vec3 b = 0.95 * random_unit_vector(rng);
            s = new_state(0.15 * s.a(), 0.85 * b + 0.15 * s.b(), 0.15 * s.E());
        }
        const Vec3 beta = random_unit_vector(rng);
        const double corr = trace(transpose(s.E()) * s.E()) - norm_squared(s.E() * beta);
        const double local = norm_squared(s.b()) - dot(s.b(), beta) * dot(s.b(), beta);
        const double want = corr >= local ? kPi : 0.0;
        (corr >= local ? corr_regime : local_regime)++;
        double best = -1.0, arg = -1.0;
        for (int k = 0; k <= 64; ++k) {
            const double delta = kPi * k / 64;
            const double v = constrained_avg_payoff(s, beta, delta, 0.0);
            if (v > best + 1e-14) {
                best = v;
                arg = delta;
            }
        }
        CHECK(arg == doctest::Approx(want));
    }
    CHECK(corr_regime > 10);
    CHECK(local_regime > 10);
}

TEST_CASE("fidelity average ignores a and b")
{
    CounterRng rng(36);
    for (int t = 0; t < 30; ++t) {
        const TwoQubitState s = random_physical_state(rng);
        const GreatCircle gc = frame_from_beta(random_unit_vector(rng));
        const DecodingStrategy d = make_decoding(random_unit_vector(rng), rng.uniform(-kPi, kPi),
                                                 random_unit_vector(rng), rng.uniform(-kPi, kPi));
        const double base = avg_max_fidelity(s, d, gc).value;
        const TwoQubitState moved = new_state(random_unit_vector(rng), 0.7 * random_unit_vector(rng), s.E());
        CHECK(std::abs(avg_max_fidelity(moved, d, gc).value - base) < 1e-12);
    }
}

TEST_CASE("quadrature settings")
{
    const GreatCircle gc = frame_from_beta(Vec3::unit_z());
    CHECK_THROWS_AS(avg_max_fidelity(singlet(), standard_decoding(gc.beta), gc, {4, false, 1e-12}),
                    std::invalid_argument);
    CHECK_THROWS_AS(avg_max_fidelity(singlet(), standard_decoding(gc.beta), gc, {24, true, 1e-12}),
                    std::invalid_argument);
    const auto r = avg_max_fidelity(bell_diagonal(0.5, 0.3, 0.1), standard_decoding(normalize(Vec3{1, 1, 1})),
                                    frame_from_beta(normalize(Vec3{1, 1, 1})), {16, true, 1e-14});
    CHECK(r.converged);
    CHECK(r.n_points >= 32);
    // a tolerance of zero can never be met before the cap
    const auto capped = circle_average(gc, {8, true, 0.0}, [](const Vec3& p) { return p.x * p.x + 1e-3 * p.y; });
    CHECK_FALSE(capped.converged);
    CHECK(capped.n_points == kMaxQuadraturePoints);
}
