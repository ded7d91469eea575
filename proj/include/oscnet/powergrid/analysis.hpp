#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscnet/powergrid/model.hpp"

namespace oscnet::powergrid {

/// Complex order parameter R = (1/N) sum e^{i delta_j}.
std::complex<double> order_parameter(std::span<const double> deltas);

/// Per-area order parameters plus the wrapped inter-group phase gap
/// arg(R_a1) - arg(R_a2) for two-area systems.
struct GroupOrder {
    std::vector<int> labels;
    std::vector<std::complex<double>> r;
    std::optional<double> gap;  // two areas only
};
GroupOrder group_order_parameters(std::span<const double> deltas, std::span<const int> areas);

/// Equilibria of the damped system: solve 0 = omega_i - alpha_i v +
/// coupling_i(theta) for theta (gauge theta_1 = 0) and the common drift v.
struct Equilibrium {
    std::vector<double> theta;  // angles, theta[0] = 0
    double drift = 0.0;         // common rate v
    double residual = 0.0;
    bool converged = false;
};

struct EquilibriumOptions {
    int max_iterations = 80;
    double tolerance = 1e-12;   // Newton step/residual tolerance
    double accept_residual = 1e-10;
    bool solve_drift = true;    // false: pin v = 0 (reported residual only)
};

Equilibrium solve_equilibrium(const CcSystem& sys, std::span<const double> theta_guess,
                              const EquilibriumOptions& opts = {});

/// Multi-start solve with dedup modulo 2 pi per angle (gauge already fixed).
std::vector<Equilibrium> equilibrium_solve(const CcSystem& sys,
                                           const std::vector<std::vector<double>>& guesses,
                                           const EquilibriumOptions& opts = {});

enum class Stability { stable, unstable, marginal };

struct Classification {
    Stability verdict = Stability::marginal;
    std::vector<std::complex<double>> eigenvalues;  // rotation zero mode ignored in verdict
    double max_real_part = 0.0;                     // after removing the zero mode
};

/// Numerical classification of a fixed point of the full damped first-order
/// system; the single zero mode from rotational symmetry is ignored.
Classification classify_fixed_point(const CcSystem& sys, const Equilibrium& eq,
                                    double threshold = 1e-6);

enum class Regime { phase_locked, chimera, incoherent };

std::string to_string(Regime r);

struct ChimeraThresholds {
    double freq_spread = 0.05;     // rad/s over the window
    double r_locked = 0.95;        // global (or every-area) coherence
    double r_coherent = 0.9;       // area counted coherent
    double r_incoherent = 0.5;     // area counted incoherent
    double window_fraction = 0.2;  // final fraction of the run examined
};

/// Regime label over the final window of a simulated trajectory:
/// phase-locked when the frequency spread is tight and either the global
/// |R| or every per-area |R| clears r_locked (the latter admits
/// conformist-contrarian pi-states); chimera when exactly one area is
/// coherent and another incoherent; otherwise incoherent.
Regime chimera_detect(const TimeSeries& series, const CcSystem& sys,
                      const ChimeraThresholds& th = {});

/// Per-generator accelerating drive omega_i - alpha_i y_i + coupling_i
/// (the equal-area P_m - P_transmitted balance).
std::vector<double> accel_power(std::span<const double> delta, std::span<const double> y,
                                const CcSystem& sys);

/// Sink/source roots of the single-machine infinite-bus drive
/// p_m - p_max sin(delta) on [0, pi]: sink at asin(p_m/p_max) (drive
/// derivative negative), source at pi - asin(p_m/p_max).
struct EqualAreaRoots {
    double sink = 0.0;
    double source = 0.0;
};
EqualAreaRoots equal_area_roots(double p_m, double p_max);

/// Compass-plot export: per-generator steady-state vectors with magnitude
/// rms_{j,t}(delta_j - delta_i) over the window and angle delta_i at the
/// final sample, measured against the global mean phase.
struct CompassVector {
    double magnitude = 0.0;
    double angle = 0.0;
};
std::vector<CompassVector> compass_vectors(const TimeSeries& series, const CcSystem& sys,
                                           double window_fraction = 0.2);

/// Linearized pair-mode curvature of the two-oscillator gap reduction,
/// -2 k cos(phi) for the conformist pair (sign flips for contrarian).
double pair_mode_curvature(double coupling, double phi, bool contrarian = false);

}  // namespace oscnet::powergrid
