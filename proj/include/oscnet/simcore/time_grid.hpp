#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oscnet {

/// Time unit a scenario is expressed in. Outputs echo the unit so that
/// hour-scale TCL runs and second-scale grid runs stay unambiguous.
enum class TimeUnit { seconds, hours };

inline std::string to_string(TimeUnit u) {
    return u == TimeUnit::seconds ? "seconds" : "hours";
}

inline TimeUnit time_unit_from_string(const std::string& s) {
    if (s == "seconds") return TimeUnit::seconds;
    if (s == "hours") return TimeUnit::hours;
    throw std::invalid_argument("unknown time unit: " + s);
}

/// Uniform integration grid: steps intervals of width dt starting at t0.
/// Sample k lives at t0 + k*dt for k in [0, steps].
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;

    TimeGrid() = default;
    TimeGrid(double t0_, double dt_, std::size_t steps_) : t0(t0_), dt(dt_), steps(steps_) {
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
        if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
    }

    double at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    double t_end() const { return at(steps); }
    std::size_t samples() const { return steps + 1; }

    /// Grid covering [t0, t0+duration] with the closest step count.
    static TimeGrid from_duration(double t0, double dt, double duration) {
        auto n = static_cast<std::size_t>(duration / dt + 0.5);
        return TimeGrid(t0, dt, n < 1 ? 1 : n);
    }
};

}  // namespace oscnet
