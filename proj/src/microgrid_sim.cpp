#include "oscnet/microgrid/sim.hpp"

#include <algorithm>
#include <cmath>

#include "oscnet/simcore/integrate.hpp"

namespace oscnet::microgrid {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::droop_only: return "droop-only";
        case Scheme::dapi: return "DAPI";
        case Scheme::radapi: return "RADAPI";
    }
    return "?";
}

std::vector<double> LoadSchedule::at(double t, std::size_t n) const {
    std::vector<double> load(n, 0.0);
    for (const auto& s : steps) {
        if (s.t <= t) {
            if (s.node_load.size() != n)
                throw std::invalid_argument("LoadSchedule: node_load size mismatch");
            load = s.node_load;
        } else {
            break;
        }
    }
    return load;
}

std::vector<double> LoadSchedule::step_times() const {
    std::vector<double> out;
    for (const auto& s : steps) out.push_back(s.t);
    return out;
}

LoadSchedule LoadSchedule::square_wave(double lo, double hi, double half_period, double t_end,
                                       const std::vector<double>& share) {
    double total_share = 0.0;
    for (double s : share) total_share += s;
    if (total_share <= 0.0) throw std::invalid_argument("square_wave: share must sum > 0");
    LoadSchedule out;
    bool high = false;
    for (double t = 0.0; t < t_end; t += half_period) {
        const double level = high ? hi : lo;
        Step s;
        s.t = t;
        for (double w : share) s.node_load.push_back(level * w / total_share);
        out.steps.push_back(std::move(s));
        high = !high;
    }
    return out;
}

void MicrogridConfig::validate() const {
    if (inverters.empty()) throw std::invalid_argument("MicrogridConfig: no inverters");
    if (net.size() != inverters.size())
        throw std::invalid_argument("MicrogridConfig: network size mismatch");
    for (const auto& inv : inverters) inv.validate();
    control.validate();
    if (fault.kind == FaultKind::time_delay && fault.delay != 0.0 && fault.delay < grid.dt)
        throw std::invalid_argument("MicrogridConfig: delay must be 0 or >= dt");
}

std::optional<double> SettlingMetrics::overall() const {
    if (!frequency || !control_input || !power_sharing) return std::nullopt;
    return std::max({*frequency, *control_input, *power_sharing});
}

namespace {

struct PairList {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j
    Matrix index;  // -1 where uncoupled

    static PairList from_graph(const NetworkGraph& g) {
        PairList out;
        out.index = Matrix(g.node_count(), g.node_count(), -1.0);
        for (const auto& e : g.edges()) {
            out.index(e.i, e.j) = static_cast<double>(out.pairs.size());
            out.index(e.j, e.i) = static_cast<double>(out.pairs.size());
            out.pairs.emplace_back(e.i, e.j);
        }
        return out;
    }
};

// Worst-case settling of `values` (sup-norm channel) into `band`, measured
// from each window start; returns the max over windows, or nullopt if any
// window fails to settle before its end.
std::optional<double> worst_window_settling(const std::vector<double>& t,
                                            const std::vector<double>& values,
                                            const std::vector<double>& window_starts,
                                            double band) {
    double worst = 0.0;
    for (std::size_t w = 0; w < window_starts.size(); ++w) {
        const double t0 = window_starts[w];
        const double t1 = w + 1 < window_starts.size() ? window_starts[w + 1] : t.back() + 1.0;
        // samples in [t0, t1)
        std::size_t lo = static_cast<std::size_t>(
            std::lower_bound(t.begin(), t.end(), t0) - t.begin());
        std::size_t hi = static_cast<std::size_t>(
            std::lower_bound(t.begin(), t.end(), t1) - t.begin());
        if (lo >= hi) continue;
        // last out-of-band sample in the window; non-finite values are out
        std::size_t first_ok = lo;
        for (std::size_t k = hi; k-- > lo;) {
            if (!(values[k] <= band)) {
                first_ok = k + 1;
                break;
            }
            first_ok = k;
        }
        if (first_ok >= hi) return std::nullopt;  // never settled in this window
        worst = std::max(worst, t[first_ok] - t0);
    }
    return worst;
}

}  // namespace

std::vector<double> inject_fault(std::span<const double> samples, double dt,
                                 const FaultSpec& fault, RngStream& rng) {
    std::vector<double> out(samples.begin(), samples.end());
    if (fault.kind == FaultKind::none) return out;
    if (fault.kind == FaultKind::time_delay) {
        if (fault.delay == 0.0) return out;
        if (fault.delay < dt) throw std::invalid_argument("inject_fault: delay must be >= dt");
        const auto shift = static_cast<std::size_t>(std::lround(fault.delay / dt));
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = samples[k >= shift ? k - shift : 0];
        return out;
    }
    // malicious_data: additive noise inside the window
    const double sigma = fault.noise.stddev();
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = dt * static_cast<double>(k);
        if (t >= fault.t_start && t <= fault.t_end)
            out[k] += sample_gaussian(rng, fault.noise.mean, sigma);
    }
    return out;
}

MicrogridRun simulate_microgrid(const MicrogridConfig& cfg, const MetricBands& bands) {
    cfg.validate();
    const std::size_t n = cfg.size();
    const auto& grid = cfg.grid;
    const double w0 = cfg.inverters.front().omega0;
    const bool secondary = cfg.control.scheme != Scheme::droop_only;
    const bool adaptive = cfg.control.scheme == Scheme::radapi;

    NetworkGraph coupling =
        cfg.control.coupling.value_or(NetworkGraph::complete(n, 1.0));
    PairList links = PairList::from_graph(coupling);
    const std::size_t n_pairs = links.pairs.size();

    // State layout: droop-only reduced [delta w V], unreduced [delta Pm Qm];
    // secondary [delta V Omega (c...)]. Frequency is algebraic under
    // secondary control.
    std::size_t dim;
    if (!secondary) dim = 3 * n;
    else dim = 3 * n + (adaptive ? n_pairs : 0);
    std::vector<double> x(dim, 0.0);
    if (!cfg.delta0.empty() && cfg.delta0.size() != n)
        throw std::invalid_argument("MicrogridConfig: delta0 size mismatch");
    if (!secondary) {
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = cfg.delta0.empty() ? 0.0 : cfg.delta0[i];
            x[n + i] = cfg.unreduced_droop ? 0.0 : w0;          // omega or Pm
            x[2 * n + i] = cfg.unreduced_droop ? 0.0 : cfg.inverters[i].V0;  // V or Qm
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = cfg.delta0.empty() ? 0.0 : cfg.delta0[i];
            x[n + i] = cfg.inverters[i].V0;
            x[2 * n + i] = 0.0;  // Omega
        }
        for (std::size_t l = 0; l < (adaptive ? n_pairs : 0); ++l)
            x[3 * n + l] = cfg.control.c_init;
    }

    RngStream noise_rng = RngStream::derive(cfg.seed, 1);
    RngStream fault_rng = RngStream::derive(cfg.seed, 2);
    const double noise_sigma = cfg.noise.stddev();

    // Communication history for the delay channel, one slot per grid sample.
    std::vector<std::vector<double>> omega_hist(n), Omega_hist(n);
    for (auto& h : omega_hist) h.reserve(grid.samples());
    for (auto& h : Omega_hist) h.reserve(grid.samples());
    const auto delay_steps = static_cast<std::size_t>(std::lround(
        cfg.fault.kind == FaultKind::time_delay ? cfg.fault.delay / grid.dt : 0.0));

    // Per-step frozen context.
    std::vector<double> d_noise(n, 0.0);
    std::vector<double> comm_omega(n, w0), comm_Omega(n, 0.0);
    std::vector<double> load_now(n, 0.0);

    auto fault_active = [&](double t) {
        if (cfg.fault.kind == FaultKind::none) return false;
        return t >= cfg.fault.t_start && t <= cfg.fault.t_end;
    };

    auto static_c = [&](std::size_t l) {
        (void)l;
        return cfg.control.c_init;
    };

    // Output series.
    MicrogridRun out;
    auto& ts = out.series;
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("omega_" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("omega_noisy_" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("Omega_" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("P_" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("V_" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ts.add_channel("delta_" + std::to_string(i));
    if (adaptive)
        for (const auto& [i, j] : links.pairs)
            ts.add_channel("c_" + std::to_string(i) + "_" + std::to_string(j));
    ts.add_channel("p_load");
    ts.seed = cfg.seed;
    ts.unit = TimeUnit::seconds;
    ts.reserve(grid.samples());

    std::vector<double> p_now(n), q_now(n), omega_true(n), omega_noisy(n);

    // Assemble instantaneous outputs from a state vector.
    auto compute_outputs = [&](const std::vector<double>& state) {
        auto pf = power_flow({state.data(), n}, cfg.net);
        for (std::size_t i = 0; i < n; ++i) {
            p_now[i] = pf.p[i] + load_now[i];
            q_now[i] = pf.q[i];
            const auto& inv = cfg.inverters[i];
            if (!secondary) {
                omega_true[i] = cfg.unreduced_droop
                                    ? inv.omega0 - inv.m_p * (state[n + i] - inv.P_star)
                                    : state[n + i];
            } else {
                omega_true[i] =
                    inv.omega0 - inv.m_p * (p_now[i] - inv.P_star) + state[2 * n + i];
            }
            omega_noisy[i] = omega_true[i] + d_noise[i];
        }
    };

    std::vector<double> row;
    auto record = [&](double t, const std::vector<double>& state) {
        compute_outputs(state);
        row.clear();
        for (std::size_t i = 0; i < n; ++i) row.push_back(omega_true[i]);
        for (std::size_t i = 0; i < n; ++i) row.push_back(omega_noisy[i]);
        for (std::size_t i = 0; i < n; ++i) row.push_back(secondary ? state[2 * n + i] : 0.0);
        for (std::size_t i = 0; i < n; ++i) row.push_back(p_now[i]);
        for (std::size_t i = 0; i < n; ++i)
            row.push_back(secondary || !cfg.unreduced_droop
                              ? (secondary ? state[n + i] : state[2 * n + i])
                              : cfg.inverters[i].V0 -
                                    cfg.inverters[i].m_q *
                                        (state[2 * n + i] - cfg.inverters[i].Q_star));
        for (std::size_t i = 0; i < n; ++i) row.push_back(state[i]);
        if (adaptive)
            for (std::size_t l = 0; l < n_pairs; ++l) row.push_back(state[3 * n + l]);
        double total = 0.0;
        for (double v : load_now) total += v;
        row.push_back(total);
        ts.append(t, row);
        for (std::size_t i = 0; i < n; ++i) {
            omega_hist[i].push_back(omega_noisy[i]);
            Omega_hist[i].push_back(secondary ? state[2 * n + i] : 0.0);
        }
    };

    Rhs rhs = [&](double, std::span<const double> s, std::span<double> dx) {
        std::fill(dx.begin(), dx.end(), 0.0);
        auto pf = power_flow({s.data(), n}, cfg.net);
        for (std::size_t i = 0; i < n; ++i) {
            p_now[i] = pf.p[i] + load_now[i];
            q_now[i] = pf.q[i];
        }

        if (!secondary) {
            if (!cfg.unreduced_droop) {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& inv = cfg.inverters[i];
                    dx[i] = s[n + i] + d_noise[i] - w0;  // rotating frame
                    dx[n + i] = droop_omega_rate(s[n + i], p_now[i], inv);
                    dx[2 * n + i] = droop_voltage_rate(s[2 * n + i], q_now[i], inv);
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& inv = cfg.inverters[i];
                    const double omega_i =
                        inv.omega0 - inv.m_p * (s[n + i] - inv.P_star) + d_noise[i];
                    dx[i] = omega_i - w0;
                    dx[n + i] = (p_now[i] - s[n + i]) / inv.tau_p;      // Pm filter
                    dx[2 * n + i] = (q_now[i] - s[2 * n + i]) / inv.tau_p;  // Qm filter
                }
            }
            return;
        }

        // Secondary control: frequency algebraic, Omega integral state.
        for (std::size_t i = 0; i < n; ++i) {
            const auto& inv = cfg.inverters[i];
            const double omega_i =
                inv.omega0 - inv.m_p * (p_now[i] - inv.P_star) + s[2 * n + i] + d_noise[i];
            dx[i] = omega_i - w0;
            dx[n + i] = droop_voltage_rate(s[n + i], q_now[i], inv);
            double coupling_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double l_idx = links.index(i, j);
                if (j == i || l_idx < 0.0) continue;
                const auto l = static_cast<std::size_t>(l_idx);
                const double c_ij =
                    adaptive ? s[3 * n + l] : static_c(l);
                coupling_sum += c_ij * (s[2 * n + i] - comm_Omega[j]);
            }
            const double own_omega = comm_omega[i];
            dx[2 * n + i] = (-(own_omega - w0) - coupling_sum) / inv.k_i;
        }
        if (adaptive) {
            for (std::size_t l = 0; l < n_pairs; ++l) {
                const auto [i, j] = links.pairs[l];
                const double du = comm_Omega[i] - comm_Omega[j];
                dx[3 * n + l] =
                    -cfg.control.delta * s[3 * n + l] + cfg.control.gamma * du * du;
            }
        }
    };

    // Main loop: freeze per-step noise and communicated values, then step.
    std::vector<double> work;
    load_now = cfg.loads.at(grid.at(0), n);
    record(grid.at(0), x);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.at(k);
        load_now = cfg.loads.at(t, n);
        if (noise_sigma > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                d_noise[i] = sample_gaussian(noise_rng, cfg.noise.mean, noise_sigma);

        // Communicated values as seen by the controllers at this step.
        compute_outputs(x);
        const bool active = fault_active(t);
        for (std::size_t i = 0; i < n; ++i) {
            double w_comm = omega_noisy[i];
            double u_comm = secondary ? x[2 * n + i] : 0.0;
            if (active && cfg.fault.kind == FaultKind::time_delay && delay_steps > 0) {
                std::size_t lag = delay_steps;
                if (cfg.fault.random_jitter)
                    lag = 1 + static_cast<std::size_t>(fault_rng.next_u64() % delay_steps);
                const std::size_t idx = k >= lag ? k - lag : 0;
                w_comm = omega_hist[i][idx];
                u_comm = Omega_hist[i][idx];
            } else if (active && cfg.fault.kind == FaultKind::malicious_data) {
                const double sigma = cfg.fault.noise.stddev();
                w_comm += sample_gaussian(fault_rng, cfg.fault.noise.mean, sigma);
                u_comm += sample_gaussian(fault_rng, cfg.fault.noise.mean, sigma);
            }
            comm_omega[i] = w_comm;
            comm_Omega[i] = u_comm;
        }

        rk4_step(rhs, t, grid.dt, x, work);
        bool finite = true;
        for (double v : x)
            if (!std::isfinite(v) || std::abs(v) > 1e12) finite = false;
        if (!finite) {
            ts.diverged_at = grid.at(k + 1);
            break;
        }
        if (adaptive && cfg.control.min_gain_clamp)
            for (std::size_t l = 0; l < n_pairs; ++l)
                x[3 * n + l] = std::max(x[3 * n + l], cfg.control.min_gain);
        load_now = cfg.loads.at(grid.at(k + 1), n);
        record(grid.at(k + 1), x);
    }
    if (ts.diverged_at) return out;  // no metrics on a diverged run

    if (adaptive) {
        out.final_c.assign(x.begin() + static_cast<long>(3 * n), x.end());
    }

    // ---- Metrics ----
    const auto& t_axis = ts.times();
    auto starts = cfg.loads.step_times();
    if (starts.empty() || starts.front() > grid.at(0)) starts.insert(starts.begin(), grid.at(0));

    std::vector<double> sup_freq(ts.size()), sup_omega_dis(ts.size()), sup_share(ts.size());
    std::vector<const std::vector<double>*> w_ch(n), u_ch(n), p_ch(n);
    for (std::size_t i = 0; i < n; ++i) {
        w_ch[i] = &ts.channel("omega_" + std::to_string(i));
        u_ch[i] = &ts.channel("Omega_" + std::to_string(i));
        p_ch[i] = &ts.channel("P_" + std::to_string(i));
    }
    // Power-sharing disagreement is normalized by the run-average droop
    // signal m_p P so the relative band means the same thing at every load
    // level.
    double mp_scale = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            mp_scale += std::abs(cfg.inverters[i].m_p * (*p_ch[i])[k]);
    mp_scale /= static_cast<double>(ts.size() * n);
    mp_scale = std::max(mp_scale, 1e-9);

    for (std::size_t k = 0; k < ts.size(); ++k) {
        double worst_w = 0.0, worst_u = 0.0, worst_s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst_w = std::max(worst_w, std::abs((*w_ch[i])[k] - w0));
            for (std::size_t j = i + 1; j < n; ++j) {
                worst_u = std::max(worst_u, std::abs((*u_ch[i])[k] - (*u_ch[j])[k]));
                worst_s = std::max(worst_s,
                                   std::abs(cfg.inverters[i].m_p * (*p_ch[i])[k] -
                                            cfg.inverters[j].m_p * (*p_ch[j])[k]));
            }
        }
        sup_freq[k] = worst_w;
        sup_omega_dis[k] = worst_u;
        sup_share[k] = worst_s / mp_scale;
    }

    if (bands.smooth_window > 0.0) {
        const auto w = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::lround(bands.smooth_window / grid.dt)));
        auto smooth = [&](std::vector<double>& v) {
            double acc = 0.0;
            std::vector<double> s(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) {
                acc += v[k];
                if (k >= w) acc -= v[k - w];
                s[k] = acc / static_cast<double>(std::min(k + 1, w));
            }
            v = std::move(s);
        };
        smooth(sup_freq);
        smooth(sup_omega_dis);
        smooth(sup_share);
    }

    out.metrics.frequency =
        worst_window_settling(t_axis, sup_freq, starts, bands.frequency_band_rel * w0);
    out.metrics.control_input =
        worst_window_settling(t_axis, sup_omega_dis, starts, bands.control_band_rel * w0);
    out.metrics.power_sharing =
        worst_window_settling(t_axis, sup_share, starts, bands.sharing_band_rel);
    out.frequency_regulated = sup_freq.back() <= bands.frequency_band_rel * w0;
    return out;
}

}  // namespace oscnet::microgrid
