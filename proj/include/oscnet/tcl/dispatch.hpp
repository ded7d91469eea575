#pragma once

#include <optional>
#include <vector>

#include "oscnet/tcl/fleet.hpp"

namespace oscnet::tcl {

/// Piecewise-constant utility demand, percent of the fleet's rated
/// (all-ON) power sum P_j eta_j.
struct UtilitySignal {
    struct Step {
        double t = 0.0;
        double percent = 100.0;  // in [0, 100]
    };
    std::vector<Step> steps;

    double at(double t) const;
    void validate() const;
};

/// Delay calculator: maps a demanded aggregate power to the per-unit phase
/// increment alpha that realizes it. Built by sweeping alpha over [0, pi],
/// synthesizing the locked switching signals at offsets (i-1)*alpha, and
/// recording the steady-state rms aggregate power (final 3 cycles after a
/// 10-cycle settling window).
struct DelayCalculator {
    std::vector<double> alphas;
    std::vector<double> rms_kw;
    bool monotone = true;    // false when the sweep is not monotone past its min
    std::size_t argmin = 0;  // index of the minimum-rms alpha

    double max_rms() const { return rms_kw.empty() ? 0.0 : rms_kw.front(); }
    double min_rms() const { return rms_kw.empty() ? 0.0 : rms_kw[argmin]; }

    /// Alpha achieving the demanded rms power; demands outside the
    /// achievable range clamp to the nearest achievable point.
    double lookup(double demand_kw, bool* clamped = nullptr) const;
};

DelayCalculator delayc_build(const TclFleet& fleet, double alpha_step = 0.01);

/// One closed-loop load-following update: negative feedback of the tracking
/// error into the DelayC lookup. Set points are never touched. Returns the
/// new per-unit offsets (i-1)*alpha.
struct LoadFollower {
    DelayCalculator delayc;
    double feedback_gain = 0.5;  // integral trim on the demanded power
    double trim_kw = 0.0;
    double alpha = 0.0;
    bool clamped = false;

    /// demand_kw: current reference; measured_kw: windowed rms of P_agg.
    /// utility_alive=false switches to the autonomous minimum-load fallback
    /// alpha = 2*pi/N.
    std::vector<double> step(double demand_kw, double measured_kw, std::size_t n,
                             bool utility_alive = true);
};

}  // namespace oscnet::tcl
