#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rsp/bloch_core.hpp"
#include "rsp/config.hpp"
#include "rsp/greatcircle.hpp"
#include "rsp/metrics.hpp"
#include "rsp/protocol.hpp"

namespace rsp {

/// Spherical axis angles and rotation angles of both decoding rotations.
struct DecodingParams6 {
    double theta1 = 0.0, phi1 = 0.0, gamma1 = 0.0;
    double theta2 = 0.0, phi2 = 0.0, gamma2 = 0.0;

    std::array<double, 6> as_array() const { return {theta1, phi1, gamma1, theta2, phi2, gamma2}; }
    static DecodingParams6 from_array(const std::array<double, 6>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
};

/// Any real angles are accepted; the axes are spherical_unit(theta, phi).
DecodingStrategy to_strategy(const DecodingParams6& p);
/// theta in [0, pi], phi in [0, 2 pi), gamma in (-pi, pi].
DecodingParams6 to_params(const DecodingStrategy& d);

enum class Objective { Fidelity, Payoff };

struct StartOutcome {
    double value = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
};

struct OptResult {
    double value = 0.0;
    DecodingStrategy strategy;
    std::size_t starts_used = 0;
    bool converged = false;
    std::size_t best_start_index = 0;
    /// Value of the standard strategy (start 0).
    double standard_value = 0.0;
    std::vector<StartOutcome> starts;
    /// Set for payoff runs on states with |b| > 1e-9, where the payoff is not a
    /// faithful figure of merit under unconstrained decoding.
    bool payoff_validity_warning = false;
};

/// Circle-averaged objective of a decoding strategy on a fixed grid.
class DecodingObjective {
public:
    DecodingObjective(const TwoQubitState& s, const GreatCircle& gc, Objective obj, std::size_t n_points);
    double operator()(const DecodingStrategy& d) const;
    double operator()(const Mat3& R1, const Mat3& R2) const;

private:
    TwoQubitState state_;
    Objective objective_;
    std::vector<Vec3> points_;
};

/// Multi-start Nelder-Mead over DecodingParams6 maximizing the circle average
/// of the encoding-maximized objective. Start 0 is the standard strategy; the
/// remaining starts come from a shifted Kronecker sequence whose shift is drawn
/// from the stream (seed, stream_id). Quadrature uses cfg.quad_points.
OptResult optimize_decoding(const TwoQubitState& s, const GreatCircle& gc, Objective obj, const OptimizerConfig& cfg,
                            std::uint64_t stream_id = 0);

inline OptResult optimize_decoding_fidelity(const TwoQubitState& s, const GreatCircle& gc, const OptimizerConfig& cfg,
                                            std::uint64_t stream_id = 0)
{
    return optimize_decoding(s, gc, Objective::Fidelity, cfg, stream_id);
}

inline OptResult optimize_decoding_payoff(const TwoQubitState& s, const GreatCircle& gc, const OptimizerConfig& cfg,
                                          std::uint64_t stream_id = 0)
{
    return optimize_decoding(s, gc, Objective::Payoff, cfg, stream_id);
}

enum class DecodingMode { Optimized, Standard };

struct BetaSample {
    Vec3 beta;
    double fidelity = 0.0;
    double payoff = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
    DecodingStrategy fidelity_strategy;
    DecodingStrategy payoff_strategy;
};

struct Extremum {
    double value = 0.0;
    Vec3 beta;
};

struct BetaSweepReport {
    DecodingMode mode = DecodingMode::Optimized;
    std::vector<BetaSample> samples;
    double f_min = 0.0, f_avg = 0.0, f_max = 0.0;
    double p_min = 0.0, p_avg = 0.0, p_max = 0.0;
    Vec3 f_argmin, f_argmax, p_argmin, p_argmax;
    /// Standard decoding, analytic circle average of |E s|^2:
    /// minimum over beta (lattice then local refinement) and sphere average
    /// over the sample set.
    Extremum standard_payoff_min;
    double standard_payoff_sphere_avg = 0.0;
    bool all_converged = true;
    bool payoff_validity_warning = false;
};

/// Evaluates both objectives at every beta (in parallel over cfg.threads with
/// per-index RNG streams) and aggregates min/avg/max. Averages are plain means
/// over the supplied directions, so a Fibonacci lattice gives sphere averages.
/// Throws std::invalid_argument for fewer than 8 directions.
BetaSweepReport sweep_beta(const TwoQubitState& s, const std::vector<Vec3>& betas, const OptimizerConfig& cfg,
                           DecodingMode mode = DecodingMode::Optimized);

/// Sweep over a Fibonacci lattice of cfg.beta_samples directions.
BetaSweepReport sweep_beta(const TwoQubitState& s, const OptimizerConfig& cfg,
                           DecodingMode mode = DecodingMode::Optimized);

/// Minimum of the analytic standard-decoding payoff over the sphere from a
/// lattice scan plus local search; target value is metric_d.
Extremum minimize_standard_payoff(const TwoQubitState& s, const std::vector<Vec3>& betas);

/// Exhaustive grid over DecodingParams6: `resolution` nodes per coordinate
/// (theta on [0, pi], phi and gamma on [0, 2 pi) resp. (-pi, pi]).
/// Throws std::invalid_argument when resolution^6 exceeds 1e7.
double grid_decoding_oracle(const TwoQubitState& s, const GreatCircle& gc, std::size_t resolution,
                            Objective obj = Objective::Fidelity, std::size_t n_points = 64);

struct Discrepancy {
    std::string name;
    double numeric = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
    /// abs_error <= tolerance
    bool within_tolerance = false;
    double tolerance = 0.0;
};

struct TEReport {
    TwoQubitState state;
    BetaSweepReport sweep;
    ClosedForms closed_forms;
    /// Closed forms of the correlation capability E - a b^T.
    ClosedForms capability_forms;
    std::vector<Discrepancy> discrepancies;
    /// max |oracle - Bloch formula| over spot checks with the best strategy found.
    double oracle_max_deviation = 0.0;
};

TEReport analyze_state(const TwoQubitState& s, const OptimizerConfig& cfg);

}  // namespace rsp
