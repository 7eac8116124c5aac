#include "rsp/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsp/bloch_core.hpp"
#include "rsp/greatcircle.hpp"
#include "rsp/oracle.hpp"
#include "rsp/protocol.hpp"
#include "rsp/sampling.hpp"

namespace rsp {
namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    CheckResult r;

    Check(std::string name, double tol) { r = {std::move(name), true, 0.0, tol, 0}; }
    void error(double e)
    {
        ++r.instances;
        r.worst = std::max(r.worst, e);
        if (!(e <= r.tolerance)) r.passed = false;
    }
    // counting checks: tolerance 0, worst = number of bad instances
    void flag(bool ok)
    {
        ++r.instances;
        if (!ok) {
            r.worst += 1.0;
            r.passed = false;
        }
    }
};

DecodingStrategy random_decoding(CounterRng& rng)
{
    return make_decoding(random_unit_vector(rng), rng.uniform(-kPi, kPi), random_unit_vector(rng),
                         rng.uniform(-kPi, kPi));
}

double circle_payoff(const TwoQubitState& s, const GreatCircle& gc, const Mat3& R1, const Mat3& R2, std::size_t n)
{
    const EncodedOverlapKernel k(s, R1, R2);
    return circle_average(gc, {n, false, 1e-12}, [&](const Vec3& p) {
               const double o = k(p);
               return o * o;
           }).value;
}

// Mixture weighted toward I/2 x rho_b: large in-plane b, weak correlations.
TwoQubitState b_dominated_state(CounterRng& rng)
{
    const TwoQubitState other = random_physical_state(rng);
    const Vec3 b = 0.95 * random_unit_vector(rng);
    const double w = 0.85;
    return new_state((1.0 - w) * other.a(), w * b + (1.0 - w) * other.b(), (1.0 - w) * other.E());
}

}  // namespace

std::size_t ValidationReport::failures() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

ValidationReport run_validation(const ValidationOptions& opt)
{
    const RotationBuilder rot = opt.rotation ? opt.rotation : RotationBuilder(rotation_matrix);
    ValidationReport rep;

    {
        CounterRng rng(opt.seed, {1});
        Check bloch("oracle_average_bloch", 1e-12);
        Check prob("oracle_branch_probabilities", 1e-14);
        Check fid("oracle_fidelity", 1e-12);
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const TwoQubitState s = random_physical_state(rng);
            const Vec3 alpha = random_unit_vector(rng);
            const DecodingStrategy dec = random_decoding(rng);
            const Vec3 s_hat = random_unit_vector(rng);

            const Vec3 r = average_bloch(s, alpha, rot(dec.n1, dec.gamma1), rot(dec.n2, dec.gamma2));
            const oracle::DensityMatrix2 rho_b = oracle::simulate_protocol(s, alpha, dec);
            bloch.error(max_abs_diff(r, oracle::bloch_vector(rho_b)));

            const auto p = oracle::branch_probabilities(s, alpha);
            prob.error(std::max(std::abs(p[0] - measure_branch(s, alpha, Outcome::Plus).probability),
                                std::abs(p[1] - measure_branch(s, alpha, Outcome::Minus).probability)));

            fid.error(std::abs(oracle::fidelity(oracle::pure_state_from_bloch(s_hat), rho_b) - linear_fidelity(r, s_hat)));
        }
        rep.checks.push_back(bloch.r);
        rep.checks.push_back(prob.r);
        rep.checks.push_back(fid.r);
    }

    {
        CounterRng rng(opt.seed, {2});
        Check c("oracle_unitary_conjugation", 1e-12);
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const Vec3 n = random_unit_vector(rng);
            const double g = rng.uniform(-kPi, kPi);
            const Vec3 v = rng.uniform() * random_unit_vector(rng);
            const oracle::Matrix2 rho = oracle::complex(0.5) *
                                        (oracle::identity2() + oracle::complex(v.x) * oracle::pauli(1) +
                                         oracle::complex(v.y) * oracle::pauli(2) + oracle::complex(v.z) * oracle::pauli(3));
            const oracle::Matrix2 u = oracle::Unitary2::from_axis_angle(n, g).u;
            const Vec3 out = oracle::bloch_vector(u * rho * oracle::adjoint(u));
            c.error(max_abs_diff(out, rot(n, g) * v));
        }
        rep.checks.push_back(c.r);
    }

    {
        Check c("singlet_ideal_protocol", 1e-12);
        for (const auto& run : oracle::standard_rsp_demo(64)) {
            c.error(std::max({std::abs(run.fidelity - 1.0), std::abs(run.probabilities[0] - 0.5),
                              std::abs(run.probabilities[1] - 0.5)}));
        }
        rep.checks.push_back(c.r);
    }

    {
        CounterRng rng(opt.seed, {3});
        Check c("density_matrix_round_trip", 1e-12);
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const TwoQubitState s = random_physical_state(rng);
            const TwoQubitState t = from_density_matrix(to_density_matrix(s));
            c.error(std::max({max_abs_diff(s.a(), t.a()), max_abs_diff(s.b(), t.b()), max_abs_diff(s.E(), t.E())}));
        }
        rep.checks.push_back(c.r);
    }

    {
        CounterRng rng(opt.seed, {4});
        Check c("standard_payoff_quadrature", 1e-10);
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const TwoQubitState s = random_physical_state(rng);
            const GreatCircle gc = frame_from_beta(random_unit_vector(rng));
            const double q = circle_payoff(s, gc, rot(gc.beta, 0.0), rot(gc.beta, kPi), opt.quad_points);
            c.error(std::abs(q - standard_avg_payoff(s, gc.beta)));
        }
        rep.checks.push_back(c.r);
    }

    {
        CounterRng rng(opt.seed, {5});
        Check quad("constrained_payoff_quadrature", 1e-10);
        Check arg("constrained_payoff_argmax", 0.0);
        // half the instances from each regime of the argmax condition
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const TwoQubitState s = i % 2 == 0 ? random_physical_state(rng) : b_dominated_state(rng);
            const GreatCircle gc = frame_from_beta(random_unit_vector(rng));
            const double g1 = rng.uniform(-kPi, kPi), g2 = rng.uniform(-kPi, kPi);
            const Vec3 beta = gc.beta;
            quad.error(std::abs(circle_payoff(s, gc, rot(beta, g1), rot(beta, g2), opt.quad_points) -
                                constrained_avg_payoff(s, beta, g1, g2)));

            const Mat3 E = s.E();
            const double corr = trace(transpose(E) * E) - norm_squared(E * beta);
            const double local = norm_squared(s.b()) - dot(s.b(), beta) * dot(s.b(), beta);
            const double expected = corr >= local ? kPi : 0.0;
            constexpr std::size_t kSteps = 32;
            double best = -1.0, best_delta = 0.0;
            for (std::size_t k = 0; k <= kSteps; ++k) {
                const double delta = kPi * static_cast<double>(k) / kSteps;
                const double v = circle_payoff(s, gc, rot(beta, delta), rot(beta, 0.0), 64);
                if (v > best + 1e-13) {
                    best = v;
                    best_delta = delta;
                }
            }
            arg.flag(std::abs(best_delta - expected) < 1e-12);
        }
        rep.checks.push_back(quad.r);
        rep.checks.push_back(arg.r);
    }

    {
        CounterRng rng(opt.seed, {6});
        const std::vector<Vec3> grid = fibonacci_sphere(4096);
        Check c("encoding_axis_vs_grid", 1e-9);
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const TwoQubitState s = random_physical_state(rng);
            const DecodingStrategy dec = random_decoding(rng);
            const Vec3 s_hat = random_unit_vector(rng);
            const Mat3 R1 = rot(dec.n1, dec.gamma1), R2 = rot(dec.n2, dec.gamma2);
            const double best = linear_fidelity(average_bloch(s, optimal_encoding_axis(s, dec, s_hat), R1, R2), s_hat);
            double grid_best = -1.0;
            for (const Vec3& alpha : grid)
                grid_best = std::max(grid_best, linear_fidelity(average_bloch(s, alpha, R1, R2), s_hat));
            c.error(std::max(0.0, grid_best - best));
        }
        rep.checks.push_back(c.r);
    }

    {
        CounterRng rng(opt.seed, {7});
        Check c("tetrahedron_vs_eigenvalues", 0.0);
        for (std::size_t i = 0; i < opt.region_samples; ++i) {
            const double l1 = rng.uniform(-1.0, 1.0), l2 = rng.uniform(-1.0, 1.0), l3 = rng.uniform(-1.0, 1.0);
            c.flag(bell_region_check(l1, l2, l3) == is_physical(bell_diagonal(l1, l2, l3)).physical);
        }
        rep.checks.push_back(c.r);
    }

    return rep;
}

}  // namespace rsp
