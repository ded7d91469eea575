#include "oscnet/tcl/fleet.hpp"

#include <algorithm>
#include <cmath>

#include "oscnet/simcore/integrate.hpp"

namespace oscnet::tcl {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

namespace {

bool finite_state(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v) || std::abs(v) > 1e12) return false;
    return true;
}

}  // namespace

std::vector<double> equispaced_offsets(std::size_t n, double spacing) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i) * spacing;
    return out;
}

TclFleet make_fleet(const FleetConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("make_fleet: n must be >= 1");
    cfg.base.validate();
    if (cfg.coupling < 0.0) throw std::invalid_argument("make_fleet: coupling must be >= 0");
    if (cfg.w_weight < 0.0) throw std::invalid_argument("make_fleet: w_weight must be >= 0");

    TclFleet fleet;
    fleet.config = cfg;
    fleet.units.assign(cfg.n, cfg.base);

    RngStream rng(cfg.seed);
    for (auto& u : fleet.units) {
        if (cfg.omega_rel_spread > 0.0)
            u.omega *= 1.0 + rng.uniform(-cfg.omega_rel_spread, cfg.omega_rel_spread);
        if (cfg.duty_max > cfg.duty_min && cfg.duty_max > 0.0)
            u.duty = rng.uniform(cfg.duty_min, cfg.duty_max);
    }

    switch (cfg.alpha_mode) {
        case AlphaMode::none:
            break;
        case AlphaMode::common:
            fleet.alpha.assign(cfg.n, cfg.alpha_common);
            break;
        case AlphaMode::per_unit:
            if (cfg.alpha_per_unit.size() != cfg.n)
                throw std::invalid_argument("make_fleet: alpha_per_unit size mismatch");
            fleet.alpha = cfg.alpha_per_unit;
            break;
    }
    for (double a : fleet.alpha)
        if (a < -kPi - 1e-12 || a > kTwoPi + 1e-12)
            throw std::invalid_argument("make_fleet: alpha outside [-pi, 2pi]");

    if (!cfg.output_alpha.empty()) {
        if (cfg.output_alpha.size() != cfg.n)
            throw std::invalid_argument("make_fleet: output_alpha size mismatch");
        fleet.out_alpha = cfg.output_alpha;
    }

    fleet.phi0.resize(cfg.n);
    fleet.T0.resize(cfg.n);
    fleet.s0_bias.resize(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        fleet.phi0[i] = rng.uniform(0.0, kTwoPi);
        fleet.T0[i] = rng.uniform(fleet.units[i].t_min(), fleet.units[i].t_max());
        fleet.s0_bias[i] = duty_bias(fleet.units[i].duty);
    }
    return fleet;
}

double phase_interaction(double phi_i, double a_i, double own_raw_on, std::size_t n_on,
                         std::size_t n) {
    const bool shifted_on = heaviside_sin(phi_i + a_i) > 0.5;
    const std::size_t n_off = n - n_on;
    if (shifted_on) return static_cast<double>(n_off - (own_raw_on > 0.5 ? 0 : 1));
    return static_cast<double>(n_on - (own_raw_on > 0.5 ? 1 : 0));
}

void phase_oscillator_rhs(std::span<const double> phis, const TclFleet& fleet,
                          std::span<double> dphis) {
    const std::size_t n = phis.size();
    std::size_t n_on = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (heaviside_sin(phis[j]) > 0.5) ++n_on;
    for (std::size_t i = 0; i < n; ++i) {
        const double a_i = fleet.alpha.empty() ? 0.0 : fleet.alpha[i];
        const double raw_on = heaviside_sin(phis[i]);
        const double interaction =
            n > 1 ? phase_interaction(phis[i], a_i, raw_on, n_on, n) : 0.0;
        dphis[i] = fleet.units[i].omega + fleet.config.coupling * interaction;
    }
}

void dist_averaging_rhs(std::span<const double> freqs, double w, std::span<double> dfreqs) {
    const std::size_t n = freqs.size();
    double sum = 0.0;
    for (double f : freqs) sum += f;
    for (std::size_t i = 0; i < n; ++i)
        dfreqs[i] = w * (sum - static_cast<double>(n) * freqs[i]);
}

namespace {

struct ChannelPlan {
    std::size_t traced = 0;
    bool thermal = false;
    bool freqs = false;
};

void add_channels(TimeSeries& ts, const TclFleet& fleet, const ChannelPlan& plan) {
    ts.add_channel("p_agg");
    for (std::size_t i = 0; i < plan.traced; ++i) ts.add_channel("phi_" + std::to_string(i));
    for (std::size_t i = 0; i < plan.traced; ++i) ts.add_channel("s_" + std::to_string(i));
    if (plan.thermal)
        for (std::size_t i = 0; i < plan.traced; ++i) ts.add_channel("T_" + std::to_string(i));
    if (plan.freqs)
        for (std::size_t i = 0; i < plan.traced; ++i) ts.add_channel("f_" + std::to_string(i));
    ts.seed = fleet.config.seed;
    ts.unit = fleet.config.unit;
}

}  // namespace

FleetRunResult simulate_fleet(const TclFleet& fleet, const TimeGrid& grid,
                              const FleetRunOptions& opts) {
    const auto& cfg = fleet.config;
    const std::size_t n = cfg.n;
    const bool thermal = cfg.couple_thermal;
    const std::size_t traced = std::min(n, cfg.trace_limit);

    FleetRunResult out;
    ChannelPlan plan{traced, thermal, cfg.model == TclModelKind::dist_averaging};
    add_channels(out.series, fleet, plan);
    out.series.reserve(grid.samples());

    std::vector<double> out_alpha = fleet.out_alpha.empty()
                                        ? std::vector<double>(n, 0.0)
                                        : fleet.out_alpha;
    if (opts.initial_offsets) {
        out_alpha = *opts.initial_offsets;
        if (out_alpha.size() != n)
            throw std::invalid_argument("simulate_fleet: initial_offsets size");
    }
    std::size_t next_offset = 0;
    auto apply_offsets = [&](double t) {
        while (next_offset < opts.offset_schedule.size() &&
               opts.offset_schedule[next_offset].t <= t + 1e-12) {
            const auto& entry = opts.offset_schedule[next_offset];
            if (entry.offsets.size() != n)
                throw std::invalid_argument("simulate_fleet: offset schedule size mismatch");
            out_alpha = entry.offsets;
            ++next_offset;
        }
    };

    std::vector<double> phi = opts.phi_override.value_or(fleet.phi0);
    if (phi.size() != n) throw std::invalid_argument("simulate_fleet: phi override size");
    std::vector<double> T = opts.T_override.value_or(fleet.T0);
    if (T.size() != n) throw std::invalid_argument("simulate_fleet: T override size");
    std::vector<double> s(n, 0.0);
    std::vector<double> freq(n, 0.0);

    std::vector<double> row;
    row.reserve(out.series.channel_count());
    auto record = [&](double t) {
        row.clear();
        row.push_back(aggregate_power({s.data(), n}, {fleet.units.data(), n}));
        for (std::size_t i = 0; i < traced; ++i) row.push_back(phi[i]);
        for (std::size_t i = 0; i < traced; ++i) row.push_back(s[i]);
        if (plan.thermal)
            for (std::size_t i = 0; i < traced; ++i) row.push_back(T[i]);
        if (plan.freqs)
            for (std::size_t i = 0; i < traced; ++i) row.push_back(freq[i]);
        out.series.append(t, row);
    };

    if (cfg.model == TclModelKind::hybrid) {
        // Thermostat-driven switching; phases unused.
        for (std::size_t i = 0; i < n; ++i) s[i] = T[i] > fleet.units[i].T_s ? 1.0 : 0.0;
        std::vector<int> flip_run(n, 0);
        apply_offsets(grid.at(0));
        record(grid.at(0));
        std::vector<double> work;
        Rhs rhs = [&](double, std::span<const double> x, std::span<double> dx) {
            for (std::size_t i = 0; i < n; ++i)
                dx[i] = hybrid_temperature_rate(x[i], s[i], fleet.units[i]);
        };
        std::vector<double> state = T;
        for (std::size_t k = 0; k < grid.steps; ++k) {
            rk4_step(rhs, grid.at(k), grid.dt, state, work);
            if (!finite_state(state)) {
                out.series.diverged_at = grid.at(k + 1);
                break;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double prev = s[i];
                s[i] = hybrid_switch(state[i], s[i], fleet.units[i]);
                if (s[i] != prev) {
                    if (++flip_run[i] > 3)
                        throw ChatteringError("hybrid TCL " + std::to_string(i) +
                                              " chattering: dt too large or zero dead band");
                } else {
                    flip_run[i] = 0;
                }
            }
            T = state;
            record(grid.at(k + 1));
        }
        out.final_T = T;
        out.final_s = s;
        return out;
    }

    if (cfg.model == TclModelKind::phase_oscillator) {
        // State: [phi..., T...]; switching is a function of phase.
        std::vector<double> state(phi);
        if (thermal) state.insert(state.end(), T.begin(), T.end());
        auto update_s = [&](std::span<const double> x) {
            for (std::size_t i = 0; i < n; ++i)
                s[i] = heaviside(std::sin(x[i] + out_alpha[i]) - fleet.s0_bias[i]);
        };
        Rhs rhs = [&](double, std::span<const double> x, std::span<double> dx) {
            std::size_t n_on = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (heaviside_sin(x[j]) > 0.5) ++n_on;
            for (std::size_t i = 0; i < n; ++i) {
                const double a_i = fleet.alpha.empty() ? 0.0 : fleet.alpha[i];
                const double inter =
                    n > 1 ? phase_interaction(x[i], a_i, heaviside_sin(x[i]), n_on, n) : 0.0;
                dx[i] = fleet.units[i].omega + cfg.coupling * inter;
            }
            if (thermal) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double s_i = heaviside(std::sin(x[i] + out_alpha[i]) - fleet.s0_bias[i]);
                    dx[n + i] = hybrid_temperature_rate(x[n + i], s_i, fleet.units[i]);
                }
            }
        };
        apply_offsets(grid.at(0));
        update_s({state.data(), n});
        record(grid.at(0));
        std::vector<double> work;
        for (std::size_t k = 0; k < grid.steps; ++k) {
            rk4_step(rhs, grid.at(k), grid.dt, state, work);
            if (!finite_state(state)) {
                out.series.diverged_at = grid.at(k + 1);
                break;
            }
            apply_offsets(grid.at(k + 1));
            update_s({state.data(), n});
            if (thermal)
                for (std::size_t i = 0; i < n; ++i) T[i] = state[n + i];
            phi.assign(state.begin(), state.begin() + static_cast<long>(n));
            record(grid.at(k + 1));
        }
        out.final_phi = phi;
        out.final_T = T;
        out.final_s = s;
        return out;
    }

    // Distributed averaging: state [f..., T...]. The switching phase is
    // reconstructed as 2 pi f_i t + alpha_i from the CURRENT frequency, so
    // once the consensus protocol aligns the f_i the offsets alone fix the
    // angular separation; initial phase randomness lives in the initial
    // frequency spread.
    for (std::size_t i = 0; i < n; ++i) freq[i] = fleet.units[i].omega;
    if (opts.f_override) {
        freq = *opts.f_override;
        if (freq.size() != n) throw std::invalid_argument("simulate_fleet: f override size");
    }
    std::vector<double> state(freq);
    if (thermal) state.insert(state.end(), T.begin(), T.end());
    auto phase_of = [&](double t, std::size_t i, double f_i) {
        return kTwoPi * f_i * t + out_alpha[i];
    };
    auto update_s = [&](double t, std::span<const double> x) {
        for (std::size_t i = 0; i < n; ++i)
            s[i] = heaviside(std::sin(phase_of(t, i, x[i])) - fleet.s0_bias[i]);
    };
    Rhs rhs = [&](double t, std::span<const double> x, std::span<double> dx) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += x[j];
        for (std::size_t i = 0; i < n; ++i)
            dx[i] = cfg.w_weight * (sum - static_cast<double>(n) * x[i]);
        if (thermal) {
            for (std::size_t i = 0; i < n; ++i) {
                const double s_i =
                    heaviside(std::sin(phase_of(t, i, x[i])) - fleet.s0_bias[i]);
                dx[n + i] = hybrid_temperature_rate(x[n + i], s_i, fleet.units[i]);
            }
        }
    };
    apply_offsets(grid.at(0));
    update_s(grid.at(0), {state.data(), n});
    for (std::size_t i = 0; i < n; ++i) phi[i] = phase_of(grid.at(0), i, state[i]);
    record(grid.at(0));
    std::vector<double> work;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        rk4_step(rhs, grid.at(k), grid.dt, state, work);
        if (!finite_state(state)) {
            out.series.diverged_at = grid.at(k + 1);
            break;
        }
        const double t1 = grid.at(k + 1);
        apply_offsets(t1);
        update_s(t1, {state.data(), n});
        freq.assign(state.begin(), state.begin() + static_cast<long>(n));
        for (std::size_t i = 0; i < n; ++i) phi[i] = phase_of(t1, i, freq[i]);
        if (thermal)
            for (std::size_t i = 0; i < n; ++i) T[i] = state[n + i];
        record(t1);
    }
    out.final_phi = phi;
    out.final_f = freq;
    out.final_T = T;
    out.final_s = s;
    return out;
}

}  // namespace oscnet::tcl
