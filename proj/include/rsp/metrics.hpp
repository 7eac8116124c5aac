#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "rsp/bloch_core.hpp"
#include "rsp/config.hpp"

namespace rsp {

/// Singular-value functions of the correlation matrix. With l1^2 >= l2^2 >= l3^2
/// the eigenvalues of E^T E:
///   D = (l1^2 + l2^2) / 2   half the two largest
///   d = (l2^2 + l3^2) / 2   half the two smallest
///   Q = (l1^2 + l2^2 + l3^2) / 3
double metric_D(const Mat3& E);
double metric_d(const Mat3& E);
double metric_Q(const Mat3& E);

/// -x log2 x - (1 - x) log2 (1 - x) with 0 log 0 = 0. Throws outside [0, 1].
double binary_entropy(double x);

/// 1 - h((1 + sqrt(Q)) / 2). Throws std::invalid_argument for Q outside [0, 1].
double metric_C3(double Q);

/// (1 + sqrt(P)) / 2. Throws std::invalid_argument for negative P.
double fidelity_from_payoff(double P);

struct ClosedForms {
    double D = 0.0;
    double d = 0.0;
    double Q = 0.0;
    /// Only defined for Bell-diagonal input (a = b = 0 within 1e-9).
    std::optional<double> C3;
    std::array<double, 3> eigs{};  ///< eigenvalues of E^T E, descending
};

/// C3 is filled when `bell_diagonal_locals` is true.
ClosedForms closed_forms(const Mat3& E, bool bell_diagonal_locals);
ClosedForms closed_forms(const TwoQubitState& s);

struct GuessingStats {
    double avg_payoff = 0.0;
    double avg_fidelity = 0.0;
};

/// Bob ignores Alice's bit and outputs a pure state r in the signal plane.
/// Exact: uniform-grid quadrature over the relative angle (exact for the
/// trigonometric integrands at any n_points >= 3).
GuessingStats guessing_protocol_exact(std::size_t n_points = 64);
/// Monte-Carlo over random guesses r and random signals s on the circle.
GuessingStats guessing_protocol_monte_carlo(std::size_t n_samples, std::uint64_t seed);

enum class Preference { First, Second, Tie };

struct StateFigures {
    ClosedForms closed;
    double fidelity_closed = 0.0;  ///< (1 + sqrt(D)) / 2
    double fidelity_numeric = 0.0; ///< optimized over decoding, mean over the probe directions
    /// Optimized payoff where the payoff is a valid figure of merit (b = 0),
    /// otherwise the payoff with the standard decoding.
    double payoff_numeric = 0.0;
    bool payoff_uses_standard_decoding = false;
    /// Unconstrained optimized payoff, reported for completeness.
    double payoff_unconstrained = 0.0;
};

struct StateComparison {
    StateFigures first;
    StateFigures second;
    /// Ordering by D; Tie when |D1 - D2| <= 1e-12.
    Preference preferred = Preference::Tie;
    /// Whether the numerically optimized fidelities give the same ordering
    /// (within cfg.tol_closed_form).
    bool numeric_agrees = true;
};

StateFigures evaluate_state(const TwoQubitState& s, const OptimizerConfig& cfg);
StateComparison compare_states(const TwoQubitState& s1, const TwoQubitState& s2, const OptimizerConfig& cfg);

/// Deterministic probe directions derived from (seed, stream).
std::vector<Vec3> probe_betas(std::uint64_t seed, std::size_t count, std::uint64_t stream = 0);

}  // namespace rsp
