#pragma once

#include <cstdint>
#include <vector>

#include "oscnet/powergrid/analysis.hpp"

namespace oscnet::powergrid {

/// Bifurcation parameter: the inter-area coupling magnitude (cross entries
/// replaced by the parameter value) or one generator's natural frequency.
enum class SweepParameter { interarea_coupling, natural_frequency };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::interarea_coupling;
    std::size_t generator = 3;  // natural_frequency sweeps: which omega
    double from = -1.0;
    double to = 1.0;
    double resolution = 0.05;
    double sim_time = 200.0;
    double dt = 0.01;
    std::uint64_t seed = 1;
    ChimeraThresholds thresholds;
    bool parallel = true;
};

struct SweepPoint {
    double value = 0.0;
    Regime regime = Regime::incoherent;
    double r_global = 0.0;        // time-averaged over the detector window
    std::vector<double> r_area;   // per area, same window
    std::size_t equilibria = 0;   // converged distinct fixed points found
    bool diverged = false;
};

/// Apply the sweep parameter to a copy of the template system.
CcSystem apply_sweep_value(const CcSystem& base, const SweepSpec& spec, double value);

/// Per-value record: solve equilibria from standard guesses, simulate from
/// the standard initial conditions (seed derived per point), and label the
/// regime. Points run in parallel when requested.
std::vector<SweepPoint> bifurcation_sweep(const CcSystem& base, const SweepSpec& spec);

}  // namespace oscnet::powergrid
