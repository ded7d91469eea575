#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscnet/simcore/time_grid.hpp"
#include "oscnet/simcore/time_series.hpp"

namespace oscnet {

/// dx/dt = f(t, x), written into dxdt (same length as x).
using Rhs = std::function<void(double t, std::span<const double> x, std::span<double> dxdt)>;

/// Per-step switching rule for hybrid systems. Called once after each
/// completed continuous step with the post-step state; mutates the discrete
/// variables, which are held constant within a step.
using DiscreteUpdate =
    std::function<void(double t, std::span<const double> x, std::span<double> discrete)>;

/// Observer invoked at every grid sample (including the initial one).
using StepObserver = std::function<void(std::size_t step, double t, std::span<const double> x)>;

/// Thrown when a discrete variable flips on more than `max_consecutive_flips`
/// consecutive steps: the step size cannot resolve the switching band.
struct ChatteringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrateOptions {
    double divergence_limit = 1e12;  // any |x_i| beyond this aborts and flags the series
    int max_consecutive_flips = 3;
};

/// One classical RK4 step in place. `work` must hold 5*n doubles.
void rk4_step(const Rhs& rhs, double t, double dt, std::vector<double>& x,
              std::vector<double>& work);

/// Fixed-step RK4 over the grid, recording every sample through `observer`.
/// Returns false if the trajectory diverged (observer has already seen the
/// last finite sample); `diverged_at` receives the abort time.
bool integrate_rk4_observe(const Rhs& rhs, std::vector<double> x0, const TimeGrid& grid,
                           const StepObserver& observer, double* diverged_at = nullptr,
                           const IntegrateOptions& opts = {});

/// Convenience wrapper recording the raw state vector into a TimeSeries with
/// the given channel names (defaults to x0..x{n-1}).
TimeSeries integrate_rk4(const Rhs& rhs, const std::vector<double>& x0, const TimeGrid& grid,
                         const std::vector<std::string>& channel_names = {},
                         const IntegrateOptions& opts = {});

/// RK4 with a per-step discrete update. The discrete vector is visible to the
/// rhs (read-only) and updated once per step from the post-step state. A
/// chattering guard aborts when any discrete variable keeps flipping every
/// step, which signals dt too large or a zero switching band.
using HybridRhs = std::function<void(double t, std::span<const double> x,
                                     std::span<const double> discrete, std::span<double> dxdt)>;

bool step_hybrid_observe(
    const HybridRhs& rhs, const DiscreteUpdate& update, std::vector<double> x0,
    std::vector<double> discrete0, const TimeGrid& grid,
    const std::function<void(std::size_t, double, std::span<const double>, std::span<const double>)>&
        observer,
    double* diverged_at = nullptr, const IntegrateOptions& opts = {});

TimeSeries step_hybrid(const HybridRhs& rhs, const DiscreteUpdate& update,
                       const std::vector<double>& x0, const std::vector<double>& discrete0,
                       const TimeGrid& grid, const std::vector<std::string>& state_names = {},
                       const std::vector<std::string>& discrete_names = {},
                       const IntegrateOptions& opts = {});

/// Central finite-difference Jacobian of `rhs` at (t, x).
/// Row i, column j = d f_i / d x_j, stored row-major.
std::vector<double> finite_difference_jacobian(const Rhs& rhs, double t,
                                               const std::vector<double>& x, double eps = 1e-6);

}  // namespace oscnet
