#include "rsp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rsp/nelder_mead.hpp"
#include "rsp/oracle.hpp"
#include "rsp/parallel.hpp"
#include "rsp/sampling.hpp"

namespace rsp {
namespace {

constexpr double kPi = std::numbers::pi;

double canonical_phi(double phi)
{
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
    if (p >= 2.0 * kPi) p = 0.0;
    return p;
}

}  // namespace

void validate_config(const OptimizerConfig& cfg)
{
    if (cfg.starts < 1) throw std::invalid_argument("config: starts must be >= 1");
    if (cfg.max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
    if (!(cfg.simplex_tol > 0.0)) throw std::invalid_argument("config: simplex_tol must be positive");
    if (cfg.beta_samples < 8) throw std::invalid_argument("config: beta_samples must be >= 8");
    if (!(cfg.tol_closed_form > 0.0)) throw std::invalid_argument("config: tol_closed_form must be positive");
    if (cfg.sweep_beta_samples < 1) throw std::invalid_argument("config: sweep_beta_samples must be >= 1");
    validate_quadrature(cfg.quadrature());
}

DecodingStrategy to_strategy(const DecodingParams6& p)
{
    DecodingStrategy d;
    d.n1 = spherical_unit(p.theta1, p.phi1);
    d.gamma1 = wrap_angle(p.gamma1);
    d.n2 = spherical_unit(p.theta2, p.phi2);
    d.gamma2 = wrap_angle(p.gamma2);
    return d;
}

DecodingParams6 to_params(const DecodingStrategy& d)
{
    auto angles = [](const Vec3& n) {
        const Vec3 u = normalize(n);
        return std::pair{std::acos(std::clamp(u.z, -1.0, 1.0)), canonical_phi(std::atan2(u.y, u.x))};
    };
    const auto [t1, p1] = angles(d.n1);
    const auto [t2, p2] = angles(d.n2);
    return {t1, p1, wrap_angle(d.gamma1), t2, p2, wrap_angle(d.gamma2)};
}

DecodingObjective::DecodingObjective(const TwoQubitState& s, const GreatCircle& gc, Objective obj,
                                     std::size_t n_points)
    : state_(s), objective_(obj), points_(circle_points(gc, n_points))
{
}

double DecodingObjective::operator()(const Mat3& R1, const Mat3& R2) const
{
    const EncodedOverlapKernel k(state_, R1, R2);
    std::vector<double> vals;
    vals.reserve(points_.size());
    if (objective_ == Objective::Fidelity) {
        for (const Vec3& p : points_) vals.push_back(k(p));
        return 0.5 * (1.0 + compensated_mean(vals));
    }
    for (const Vec3& p : points_) {
        const double o = k(p);
        vals.push_back(o * o);
    }
    return compensated_mean(vals);
}

double DecodingObjective::operator()(const DecodingStrategy& d) const
{
    return (*this)(rotation_matrix(d.n1, d.gamma1), rotation_matrix(d.n2, d.gamma2));
}

OptResult optimize_decoding(const TwoQubitState& s, const GreatCircle& gc, Objective obj, const OptimizerConfig& cfg,
                            std::uint64_t stream_id)
{
    validate_config(cfg);
    const DecodingObjective objective(s, gc, obj, cfg.quad_points);
    auto negated = [&](const std::vector<double>& x) {
        return -objective(rotation_matrix(spherical_unit(x[0], x[1]), x[2]),
                          rotation_matrix(spherical_unit(x[3], x[4]), x[5]));
    };

    NelderMeadOptions nm;
    nm.max_iter = cfg.max_iter;
    nm.ftol = cfg.simplex_tol;
    nm.initial_step = 0.6;

    CounterRng shift_rng(cfg.seed, {0x6f7074ULL, stream_id});
    const KroneckerSequence lds(6, shift_rng);

    OptResult res;
    res.payoff_validity_warning = obj == Objective::Payoff && norm(s.b()) > 1e-9;
    res.value = -std::numeric_limits<double>::infinity();

    const DecodingParams6 standard = to_params(standard_decoding(gc.beta));
    for (std::size_t k = 0; k < cfg.starts; ++k) {
        std::vector<double> x0;
        if (k == 0) {
            const auto a = standard.as_array();
            x0.assign(a.begin(), a.end());
        } else {
            const auto u = lds.point(k - 1);
            x0 = {std::acos(1.0 - 2.0 * u[0]), 2.0 * kPi * u[1], kPi * (2.0 * u[2] - 1.0),
                  std::acos(1.0 - 2.0 * u[3]), 2.0 * kPi * u[4], kPi * (2.0 * u[5] - 1.0)};
        }
        if (k == 0) res.standard_value = -negated(x0);

        const NelderMeadResult r = nelder_mead(negated, x0, nm);
        res.starts.push_back({-r.f, r.converged, r.evaluations});
        res.converged = res.converged || r.converged;
        if (-r.f > res.value) {
            res.value = -r.f;
            res.best_start_index = k;
            res.strategy = to_strategy(DecodingParams6{r.x[0], r.x[1], r.x[2], r.x[3], r.x[4], r.x[5]});
        }
    }
    res.starts_used = cfg.starts;
    return res;
}

Extremum minimize_standard_payoff(const TwoQubitState& s, const std::vector<Vec3>& betas)
{
    if (betas.empty()) throw std::invalid_argument("minimize_standard_payoff: no directions");
    Extremum best{std::numeric_limits<double>::infinity(), betas.front()};
    for (const Vec3& b : betas) {
        const double v = standard_avg_payoff(s, b);
        if (v < best.value) best = {v, b};
    }
    const GreatCircle start = frame_from_beta(best.beta);
    NelderMeadOptions nm;
    nm.max_iter = 2000;
    nm.ftol = 1e-15;
    nm.initial_step = 0.05;
    auto f = [&](const std::vector<double>& x) { return standard_avg_payoff(s, spherical_unit(x[0], x[1])); };
    const auto r = nelder_mead(f, {start.theta_beta, start.phi_beta}, nm);
    if (r.f < best.value) best = {r.f, spherical_unit(r.x[0], r.x[1])};
    return best;
}

namespace {

// Local search for the extremum of an optimized objective over beta.
Extremum refine_beta_extremum(const TwoQubitState& s, const Extremum& start, Objective obj, bool maximize,
                              const OptimizerConfig& cfg, std::uint64_t stream)
{
    const GreatCircle gc0 = frame_from_beta(start.beta);
    const double sign = maximize ? -1.0 : 1.0;
    auto f = [&](const std::vector<double>& x) {
        const GreatCircle gc = frame_from_beta(spherical_unit(x[0], x[1]));
        return sign * optimize_decoding(s, gc, obj, cfg, stream).value;
    };
    NelderMeadOptions nm;
    nm.max_iter = cfg.beta_refine_evals;
    nm.ftol = cfg.simplex_tol;
    nm.initial_step = 0.15;
    nm.restarts = 0;
    const auto r = nelder_mead(f, {gc0.theta_beta, gc0.phi_beta}, nm);
    const double v = sign * r.f;
    if ((maximize && v > start.value) || (!maximize && v < start.value))
        return {v, spherical_unit(r.x[0], r.x[1])};
    return start;
}

}  // namespace

BetaSweepReport sweep_beta(const TwoQubitState& s, const std::vector<Vec3>& betas, const OptimizerConfig& cfg,
                           DecodingMode mode)
{
    validate_config(cfg);
    if (betas.size() < 8) throw std::invalid_argument("sweep_beta: at least 8 directions required");

    BetaSweepReport rep;
    rep.mode = mode;
    rep.samples.resize(betas.size());

    parallel_for(betas.size(), cfg.threads, [&](std::size_t i) {
        BetaSample& smp = rep.samples[i];
        smp.beta = betas[i];
        const GreatCircle gc = frame_from_beta(betas[i]);
        if (mode == DecodingMode::Standard) {
            smp.fidelity_strategy = smp.payoff_strategy = standard_decoding(gc.beta);
            const auto q = avg_max_fidelity(s, smp.fidelity_strategy, gc, cfg.quadrature());
            smp.fidelity = q.value;
            smp.payoff = standard_avg_payoff(s, gc.beta);
            smp.converged = q.converged;
            return;
        }
        const OptResult f = optimize_decoding(s, gc, Objective::Fidelity, cfg, 2 * i);
        const OptResult p = optimize_decoding(s, gc, Objective::Payoff, cfg, 2 * i + 1);
        smp.fidelity = f.value;
        smp.payoff = p.value;
        smp.fidelity_strategy = f.strategy;
        smp.payoff_strategy = p.strategy;
        smp.converged = f.converged && p.converged;
        for (const auto& st : f.starts) smp.evaluations += st.evaluations;
        for (const auto& st : p.starts) smp.evaluations += st.evaluations;
    });

    std::vector<double> fs, ps;
    Extremum fmin{std::numeric_limits<double>::infinity(), {}}, fmax{-std::numeric_limits<double>::infinity(), {}};
    Extremum pmin = fmin, pmax = fmax;
    for (const BetaSample& smp : rep.samples) {
        fs.push_back(smp.fidelity);
        ps.push_back(smp.payoff);
        rep.all_converged = rep.all_converged && smp.converged;
        if (smp.fidelity < fmin.value) fmin = {smp.fidelity, smp.beta};
        if (smp.fidelity > fmax.value) fmax = {smp.fidelity, smp.beta};
        if (smp.payoff < pmin.value) pmin = {smp.payoff, smp.beta};
        if (smp.payoff > pmax.value) pmax = {smp.payoff, smp.beta};
    }
    rep.f_avg = compensated_mean(fs);
    rep.p_avg = compensated_mean(ps);

    if (mode == DecodingMode::Optimized && cfg.refine_beta) {
        const std::uint64_t base = 2 * betas.size();
        std::array<Extremum*, 4> targets{&fmin, &fmax, &pmin, &pmax};
        std::array<Extremum, 4> refined{};
        parallel_for(4, cfg.threads, [&](std::size_t k) {
            const Objective obj = k < 2 ? Objective::Fidelity : Objective::Payoff;
            refined[k] = refine_beta_extremum(s, *targets[k], obj, k % 2 == 1, cfg, base + k);
        });
        for (std::size_t k = 0; k < 4; ++k) *targets[k] = refined[k];
    }

    rep.f_min = fmin.value;
    rep.f_max = fmax.value;
    rep.p_min = pmin.value;
    rep.p_max = pmax.value;
    rep.f_argmin = fmin.beta;
    rep.f_argmax = fmax.beta;
    rep.p_argmin = pmin.beta;
    rep.p_argmax = pmax.beta;

    rep.standard_payoff_min = minimize_standard_payoff(s, betas);
    std::vector<double> std_p;
    for (const Vec3& b : betas) std_p.push_back(standard_avg_payoff(s, b));
    rep.standard_payoff_sphere_avg = compensated_mean(std_p);
    rep.payoff_validity_warning = mode == DecodingMode::Optimized && norm(s.b()) > 1e-9;
    return rep;
}

BetaSweepReport sweep_beta(const TwoQubitState& s, const OptimizerConfig& cfg, DecodingMode mode)
{
    return sweep_beta(s, fibonacci_sphere(cfg.beta_samples), cfg, mode);
}

double grid_decoding_oracle(const TwoQubitState& s, const GreatCircle& gc, std::size_t resolution, Objective obj,
                            std::size_t n_points)
{
    if (resolution < 2) throw std::invalid_argument("grid_decoding_oracle: resolution must be >= 2");
    const double total = std::pow(static_cast<double>(resolution), 6.0);
    if (total > 1e7) throw std::invalid_argument("grid_decoding_oracle: grid exceeds 1e7 points");

    const DecodingObjective objective(s, gc, obj, n_points);
    const std::size_t r = resolution;
    std::vector<double> theta(r), phi(r), gamma(r);
    for (std::size_t k = 0; k < r; ++k) {
        theta[k] = kPi * static_cast<double>(k) / static_cast<double>(r - 1);
        phi[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(r);
        gamma[k] = -kPi + 2.0 * kPi * static_cast<double>(k + 1) / static_cast<double>(r);
    }
    std::vector<Vec3> axes;
    for (double t : theta)
        for (double p : phi) axes.push_back(spherical_unit(t, p));
    std::vector<Mat3> rots;
    for (const Vec3& n : axes)
        for (double g : gamma) rots.push_back(rotation_matrix(n, g));

    double best = -std::numeric_limits<double>::infinity();
    for (const Mat3& R1 : rots)
        for (const Mat3& R2 : rots) best = std::max(best, objective(R1, R2));
    return best;
}

TEReport analyze_state(const TwoQubitState& s, const OptimizerConfig& cfg)
{
    TEReport rep;
    rep.state = s;
    rep.sweep = sweep_beta(s, cfg);
    rep.closed_forms = closed_forms(s);
    rep.capability_forms = closed_forms(correlation_capability(s), false);

    const double D = rep.closed_forms.D;
    const double fD = fidelity_from_payoff(D);
    const double tol = cfg.tol_closed_form;
    auto add = [&](std::string name, double numeric, double reference, double t) {
        const double err = std::abs(numeric - reference);
        rep.discrepancies.push_back({std::move(name), numeric, reference, err, err <= t, t});
    };
    add("fidelity_min_vs_closed_form", rep.sweep.f_min, fD, tol);
    add("fidelity_avg_vs_closed_form", rep.sweep.f_avg, fD, tol);
    add("fidelity_max_vs_closed_form", rep.sweep.f_max, fD, tol);
    add("payoff_min_vs_D", rep.sweep.p_min, D, tol);
    add("payoff_avg_vs_D", rep.sweep.p_avg, D, tol);
    add("payoff_max_vs_D", rep.sweep.p_max, D, tol);
    add("fidelity_vs_payoff_relation", rep.sweep.f_avg, fidelity_from_payoff(std::max(0.0, rep.sweep.p_avg)), tol);
    add("standard_payoff_min_vs_d", rep.sweep.standard_payoff_min.value, rep.closed_forms.d, 1e-6);
    add("standard_payoff_sphere_avg_vs_Q", rep.sweep.standard_payoff_sphere_avg, rep.closed_forms.Q, 2e-3);

    // oracle spot check with the best fidelity strategy at a few signal states
    double dev = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, rep.sweep.samples.size() / 4);
    for (std::size_t i = 0; i < rep.sweep.samples.size(); i += stride) {
        const BetaSample& smp = rep.sweep.samples[i];
        const GreatCircle gc = frame_from_beta(smp.beta);
        for (int k = 0; k < 4; ++k) {
            const Vec3 sh = signal_vector(gc, 0.5 * kPi * k + 0.3);
            const Vec3 alpha = optimal_encoding_axis(s, smp.fidelity_strategy, sh);
            const Vec3 bloch = average_bloch(s, alpha, smp.fidelity_strategy);
            const Vec3 sim = oracle::bloch_vector(oracle::simulate_protocol(s, alpha, smp.fidelity_strategy));
            dev = std::max(dev, max_abs_diff(bloch, sim));
        }
    }
    rep.oracle_max_deviation = dev;
    return rep;
}

}  // namespace rsp
