#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oscnet/simcore/rng.hpp"
#include "oscnet/simcore/time_grid.hpp"
#include "oscnet/simcore/time_series.hpp"
#include "oscnet/tcl/model.hpp"

namespace oscnet::tcl {

enum class TclModelKind { hybrid, phase_oscillator, dist_averaging };

/// How the delay/advance offsets enter the phase-model interaction term
///   phidot_i = omega_i + K sum_{j != i} |Theta[sin phi_j] - Theta[sin(phi_i + a_i)]|.
enum class AlphaMode {
    none,      // a_i = 0 (plain binary Kuramoto synchronization)
    common,    // a_i = alpha for every unit
    per_unit,  // a_i supplied per unit
};

struct FleetConfig {
    std::size_t n = 1;
    TclModelKind model = TclModelKind::phase_oscillator;
    double coupling = 0.267;  // K, phase model
    double w_weight = 0.06;   // averaging weight w

    AlphaMode alpha_mode = AlphaMode::none;
    double alpha_common = 0.0;
    std::vector<double> alpha_per_unit;

    /// Offsets applied inside the delivered switching signal
    /// s_i = Theta[sin(phi_i + out_i) - s0_i]; this is how the averaging
    /// model dispatches angular separation, and it is the knob the load
    /// follower turns. Empty = no offsets (Eq.-faithful phase model).
    std::vector<double> output_alpha;

    TclParams base;                    // nominal unit
    double omega_rel_spread = 0.0;     // +/- relative spread on omega (seeded uniform)
    double duty_min = 0.0, duty_max = 0.0;  // heterogeneous duty range; 0,0 = use base.duty

    bool couple_thermal = true;   // integrate T_i alongside the switching model
    std::uint64_t seed = 1;
    TimeUnit unit = TimeUnit::hours;
    std::size_t trace_limit = 100;  // per-unit channels recorded at most
};

/// Materialized fleet: per-unit parameters plus initial state.
struct TclFleet {
    FleetConfig config;
    std::vector<TclParams> units;   // omega/duty already heterogenized
    std::vector<double> alpha;      // interaction offsets a_i (empty for none)
    std::vector<double> out_alpha;  // output offsets (empty for none)
    std::vector<double> phi0;       // initial phases (random on [0, 2pi))
    std::vector<double> T0;         // initial temperatures
    std::vector<double> s0_bias;    // duty biases s_{i,0}

    double rated_power() const {
        double sum = 0.0;
        for (const auto& u : units) sum += u.P * u.eta;
        return sum;
    }
    double mean_omega() const {
        double sum = 0.0;
        for (const auto& u : units) sum += u.omega;
        return sum / static_cast<double>(units.size());
    }
};

TclFleet make_fleet(const FleetConfig& cfg);

/// Equi-spaced per-unit offsets (i-1) * spacing, the canonical alpha
/// assignment for an N-unit fleet.
std::vector<double> equispaced_offsets(std::size_t n, double spacing);

/// Phase-model interaction sum for one unit, the O(N) counting form of
///   sum_{j != i} |Theta[sin phi_j] - Theta[sin(phi_i + a_i)]|
/// given n_on = #\{j : Theta[sin phi_j] = 1\} over the whole fleet.
double phase_interaction(double phi_i, double a_i, double own_raw_on, std::size_t n_on,
                         std::size_t n);

/// Full phase-oscillator derivative (per-unit alpha or common); exposed for
/// direct tests of the model equation.
void phase_oscillator_rhs(std::span<const double> phis, const TclFleet& fleet,
                          std::span<double> dphis);

/// Distributed-averaging frequency derivative fdot_i = w sum_{j!=i} (f_j - f_i).
void dist_averaging_rhs(std::span<const double> freqs, double w, std::span<double> dfreqs);

struct FleetRunResult {
    TimeSeries series;       // p_agg + traced per-unit channels
    std::vector<double> final_phi;
    std::vector<double> final_T;
    std::vector<double> final_s;
    std::vector<double> final_f;  // averaging model only
};

struct FleetRunOptions {
    /// Re-assignments of the output offsets at given times (load following).
    struct OffsetSchedule {
        double t = 0.0;
        std::vector<double> offsets;
    };
    std::vector<OffsetSchedule> offset_schedule;
    std::optional<std::vector<double>> phi_override;  // start from these phases
    std::optional<std::vector<double>> f_override;    // averaging: initial frequencies
    std::optional<std::vector<double>> T_override;    // initial temperatures
    std::optional<std::vector<double>> initial_offsets;  // out_alpha at t0
};

/// Integrate the configured fleet over the grid. Channels: p_agg plus
/// phi_i / T_i / s_i (and f_i for the averaging model) for traced units.
FleetRunResult simulate_fleet(const TclFleet& fleet, const TimeGrid& grid,
                              const FleetRunOptions& opts = {});

}  // namespace oscnet::tcl
