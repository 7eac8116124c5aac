#include "rsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsp/greatcircle.hpp"
#include "rsp/optimizer.hpp"
#include "rsp/sampling.hpp"

namespace rsp {

double metric_D(const Mat3& E)
{
    const auto l = squared_correlation_eigs(E);
    return 0.5 * (l[0] + l[1]);
}

double metric_d(const Mat3& E)
{
    const auto l = squared_correlation_eigs(E);
    return 0.5 * (l[1] + l[2]);
}

double metric_Q(const Mat3& E)
{
    const auto l = squared_correlation_eigs(E);
    return (l[0] + l[1] + l[2]) / 3.0;
}

double binary_entropy(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

double metric_C3(double Q)
{
    if (!(Q >= 0.0 && Q <= 1.0)) throw std::invalid_argument("metric_C3: Q outside [0, 1]");
    return 1.0 - binary_entropy(0.5 * (1.0 + std::sqrt(Q)));
}

double fidelity_from_payoff(double P)
{
    if (!(P >= 0.0)) throw std::invalid_argument("fidelity_from_payoff: negative payoff");
    return 0.5 * (1.0 + std::sqrt(P));
}

ClosedForms closed_forms(const Mat3& E, bool bell_diagonal_locals)
{
    ClosedForms c;
    c.eigs = squared_correlation_eigs(E);
    c.D = 0.5 * (c.eigs[0] + c.eigs[1]);
    c.d = 0.5 * (c.eigs[1] + c.eigs[2]);
    c.Q = (c.eigs[0] + c.eigs[1] + c.eigs[2]) / 3.0;
    // Q slightly above 1 only through rounding on the singlet
    if (bell_diagonal_locals && c.Q <= 1.0 + 1e-12) c.C3 = metric_C3(std::min(c.Q, 1.0));
    return c;
}

ClosedForms closed_forms(const TwoQubitState& s)
{
    const bool bell = norm(s.a()) <= 1e-9 && norm(s.b()) <= 1e-9;
    return closed_forms(s.E(), bell);
}

GuessingStats guessing_protocol_exact(std::size_t n_points)
{
    if (n_points < 3) throw std::invalid_argument("guessing_protocol_exact: need at least 3 points");
    std::vector<double> p, f;
    for (std::size_t k = 0; k < n_points; ++k) {
        // relative angle between the guess and the signal
        const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_points));
        p.push_back(c * c);
        f.push_back(0.5 * (1.0 + c));
    }
    return {compensated_mean(p), compensated_mean(f)};
}

GuessingStats guessing_protocol_monte_carlo(std::size_t n_samples, std::uint64_t seed)
{
    if (n_samples < 1) throw std::invalid_argument("guessing_protocol_monte_carlo: need at least one sample");
    CounterRng rng(seed, {0x6775657373ULL});
    const GreatCircle gc = frame_from_beta(Vec3::unit_z());
    std::vector<double> p, f;
    p.reserve(n_samples);
    f.reserve(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const Vec3 guess = signal_vector(gc, rng.uniform(0.0, 2.0 * std::numbers::pi));
        const Vec3 sig = signal_vector(gc, rng.uniform(0.0, 2.0 * std::numbers::pi));
        p.push_back(payoff(guess, sig));
        f.push_back(linear_fidelity(guess, sig));
    }
    return {compensated_mean(p), compensated_mean(f)};
}

std::vector<Vec3> probe_betas(std::uint64_t seed, std::size_t count, std::uint64_t stream)
{
    CounterRng rng(seed, {0x70726f6265ULL, stream});
    std::vector<Vec3> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_unit_vector(rng));
    return out;
}

namespace {

StateFigures evaluate_state(const TwoQubitState& s, const OptimizerConfig& cfg, std::uint64_t stream)
{
    StateFigures fig;
    fig.closed = closed_forms(s);
    fig.fidelity_closed = fidelity_from_payoff(fig.closed.D);
    fig.payoff_uses_standard_decoding = norm(s.b()) > 1e-9;

    const auto betas = probe_betas(cfg.seed, cfg.sweep_beta_samples, stream);
    std::vector<double> f, p, p_std;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const GreatCircle gc = frame_from_beta(betas[i]);
        f.push_back(optimize_decoding_fidelity(s, gc, cfg, 2 * i).value);
        p.push_back(optimize_decoding_payoff(s, gc, cfg, 2 * i + 1).value);
        p_std.push_back(standard_avg_payoff(s, gc.beta));
    }
    fig.fidelity_numeric = compensated_mean(f);
    fig.payoff_unconstrained = compensated_mean(p);
    fig.payoff_numeric = fig.payoff_uses_standard_decoding ? compensated_mean(p_std) : fig.payoff_unconstrained;
    return fig;
}

}  // namespace

StateFigures evaluate_state(const TwoQubitState& s, const OptimizerConfig& cfg)
{
    validate_config(cfg);
    return evaluate_state(s, cfg, 0);
}

StateComparison compare_states(const TwoQubitState& s1, const TwoQubitState& s2, const OptimizerConfig& cfg)
{
    validate_config(cfg);
    StateComparison c;
    // the same probe directions for both states
    c.first = evaluate_state(s1, cfg, 0);
    c.second = evaluate_state(s2, cfg, 0);

    const double dD = c.first.closed.D - c.second.closed.D;
    if (std::abs(dD) <= 1e-12)
        c.preferred = Preference::Tie;
    else
        c.preferred = dD > 0.0 ? Preference::First : Preference::Second;

    const double df = c.first.fidelity_numeric - c.second.fidelity_numeric;
    const double tol = cfg.tol_closed_form;
    switch (c.preferred) {
    case Preference::First: c.numeric_agrees = df >= -tol; break;
    case Preference::Second: c.numeric_agrees = df <= tol; break;
    case Preference::Tie: c.numeric_agrees = std::abs(df) <= tol; break;
    }
    return c;
}

}  // namespace rsp
