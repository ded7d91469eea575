#include <cmath>
#include <sstream>

#include "oscnet/analysis/spectrum.hpp"
#include "oscnet/tcl/dispatch.hpp"
#include "oscnet/tcl/fleet.hpp"
#include "oscnet/tcl/metrics.hpp"
#include "scenario_detail.hpp"

namespace oscnet::scenario::detail {

namespace {

using namespace oscnet::tcl;

constexpr double kPi = 3.14159265358979323846;

const char* kNames[] = {
    "tcl-single-unit",     "tcl-ensemble-n4-duty50", "tcl-ensemble-n4-duty43",
    "tcl-population-n100", "tcl-heterogeneous",      "tcl-averaging-consensus",
    "tcl-population-n1000", "tcl-population-n10000", "tcl-gridfluct-n100",
    "tcl-loadfollow-100-50",
};

json phase_fleet_json(std::size_t n, double p_kw, double duty, double omega, double hours,
                      double het = 0.0) {
    json j;
    j["seed"] = 7;
    j["model"] = "phase_oscillator";
    j["n"] = n;
    j["coupling"] = 0.267;
    j["alpha_mode"] = "common";
    j["alpha_common"] = 2.0 * kPi / static_cast<double>(n);
    j["ambient_c"] = 32.0;
    j["deadband_c"] = 0.5;
    j["thermal_r"] = 2.0;
    j["thermal_c"] = 10.0;
    j["rate_kw"] = p_kw;
    j["eta"] = 1.0;
    j["setpoint_c"] = 20.0;
    j["duty"] = duty;
    j["omega"] = omega;  // rad per hour (phase model)
    j["omega_rel_spread"] = het;
    j["duty_min"] = 0.0;
    j["duty_max"] = 0.0;
    j["couple_thermal"] = false;
    j["t_end"] = hours;
    j["dt"] = 1e-3;
    j["time_unit"] = "hours";
    j["w_weight"] = 0.0;
    j["output_alpha_spacing"] = 0.0;
    return j;
}

json averaging_fleet_json(std::size_t n, double p_kw, double duty_min, double duty_max,
                          double f_hz, double f_spread, double seconds, double dt) {
    json j;
    j["seed"] = 7;
    j["model"] = "dist_averaging";
    j["n"] = n;
    j["coupling"] = 0.0;
    j["alpha_mode"] = "none";
    j["alpha_common"] = 0.0;
    j["ambient_c"] = 32.0;
    j["deadband_c"] = 3.0;
    j["thermal_r"] = 2.0;
    j["thermal_c"] = 10.0;
    j["rate_kw"] = p_kw;
    j["eta"] = 1.0;
    j["setpoint_c"] = 27.0;
    j["duty"] = 0.5 * (duty_min + duty_max);
    j["omega"] = f_hz;  // cycles per second (averaging model)
    j["omega_rel_spread"] = f_spread;
    j["duty_min"] = duty_min;
    j["duty_max"] = duty_max;
    j["couple_thermal"] = false;
    j["t_end"] = seconds;
    j["dt"] = dt;
    j["time_unit"] = "seconds";
    j["w_weight"] = 4.0 / static_cast<double>(n);
    j["output_alpha_spacing"] = 2.0 * kPi / static_cast<double>(n);
    return j;
}

FleetConfig to_fleet_config(const json& j) {
    FleetConfig cfg;
    cfg.n = j["n"].get<std::size_t>();
    const std::string model = j["model"].get<std::string>();
    cfg.model = model == "hybrid" ? TclModelKind::hybrid
                : model == "phase_oscillator" ? TclModelKind::phase_oscillator
                                              : TclModelKind::dist_averaging;
    cfg.coupling = j["coupling"].get<double>();
    cfg.w_weight = j["w_weight"].get<double>();
    const std::string am = j["alpha_mode"].get<std::string>();
    cfg.alpha_mode = am == "common" ? AlphaMode::common
                     : am == "per_unit" ? AlphaMode::per_unit
                                        : AlphaMode::none;
    cfg.alpha_common = j["alpha_common"].get<double>();
    cfg.base.T_a = j["ambient_c"].get<double>();
    cfg.base.deadband = j["deadband_c"].get<double>();
    cfg.base.R = j["thermal_r"].get<double>();
    cfg.base.C = j["thermal_c"].get<double>();
    cfg.base.P = j["rate_kw"].get<double>();
    cfg.base.eta = j["eta"].get<double>();
    cfg.base.T_s = j["setpoint_c"].get<double>();
    cfg.base.duty = j["duty"].get<double>();
    cfg.base.omega = j["omega"].get<double>();
    cfg.omega_rel_spread = j["omega_rel_spread"].get<double>();
    cfg.duty_min = j["duty_min"].get<double>();
    cfg.duty_max = j["duty_max"].get<double>();
    cfg.couple_thermal = j["couple_thermal"].get<bool>();
    cfg.seed = get_seed(j);
    cfg.unit = time_unit_from_string(j["time_unit"].get<std::string>());
    const double spacing = j["output_alpha_spacing"].get<double>();
    if (spacing != 0.0) cfg.output_alpha = equispaced_offsets(cfg.n, spacing);
    return cfg;
}

TimeGrid to_grid(const json& j) {
    const double dt = j["dt"].get<double>();
    return TimeGrid(0.0, dt,
                    static_cast<std::size_t>(std::lround(j["t_end"].get<double>() / dt)));
}

struct SteadyStats {
    double mean_kw = 0.0;
    double band_percent = 0.0;       // raw signal
    double cycle_band_percent = 0.0; // cycle-averaged signal
    double cycle_mean_kw = 0.0;
};

SteadyStats steady_stats(const std::vector<double>& p, double dt, double period,
                         double tail_fraction) {
    SteadyStats s;
    auto tail = final_window({p.data(), p.size()}, tail_fraction);
    s.mean_kw = mean(tail);
    s.band_percent = fluctuation_band_percent(tail);
    auto smooth = cycle_average({p.data(), p.size()}, dt, period);
    auto stail = final_window({smooth.data(), smooth.size()}, tail_fraction);
    s.cycle_mean_kw = mean(stail);
    s.cycle_band_percent = fluctuation_band_percent(stail);
    return s;
}

double measured_duty(const std::vector<double>& s, double tail_fraction) {
    return mean(final_window({s.data(), s.size()}, tail_fraction));
}

}  // namespace

bool is_tcl_scenario(const std::string& name) {
    for (const char* n : kNames)
        if (name == n) return true;
    return false;
}

std::vector<std::pair<std::string, std::string>> tcl_list() {
    return {
        {"tcl-single-unit", "hybrid thermostat vs phase model: duty and switching spectrum match"},
        {"tcl-ensemble-n4-duty50", "four units, 50% duty: de-synchronize to the 24 kW minimum"},
        {"tcl-ensemble-n4-duty43", "four units, 43% duty: de-synchronized aggregate"},
        {"tcl-population-n100", "hundred units driven to the P*(N/2) minimum aggregate"},
        {"tcl-heterogeneous", "5% frequency spread: tracking error and RMSE for both models"},
        {"tcl-averaging-consensus", "frequency consensus conservation and collapse to the mean"},
        {"tcl-population-n1000", "thousand-unit population: settle level and fluctuation band"},
        {"tcl-population-n10000", "ten-thousand-unit population (heavy)"},
        {"tcl-gridfluct-n100", "random vs de-synchronized grid ripple over five seeds"},
        {"tcl-loadfollow-100-50", "utility step 100%->50% tracked through the delay calculator"},
    };
}

json tcl_builtin(const std::string& name) {
    json j;
    if (name == "tcl-single-unit") {
        j = phase_fleet_json(1, 14.0, 0.43, 2.15, 200.0);
        j["n"] = 1;
        j["alpha_mode"] = "none";
        j["alpha_common"] = 0.0;
        j["couple_thermal"] = true;
        // phase model runs at the hybrid unit's natural frequency and duty
        j["use_natural_frequency"] = true;
        j["fft_window"] = 131072;
    } else if (name == "tcl-ensemble-n4-duty50") {
        j = phase_fleet_json(4, 12.0, 0.50, 0.27, 400.0);
    } else if (name == "tcl-ensemble-n4-duty43") {
        j = phase_fleet_json(4, 14.0, 0.43, 0.55, 250.0);
    } else if (name == "tcl-population-n100") {
        j = phase_fleet_json(100, 14.0, 0.50, 0.55, 250.0);
    } else if (name == "tcl-heterogeneous") {
        j = phase_fleet_json(100, 14.0, 0.50, 0.55, 250.0, 0.05);
        j["averaging_variant"] = averaging_fleet_json(100, 14.0, 0.0, 0.0, 0.0031, 0.05,
                                                      4000.0, 0.25);
        j["averaging_variant"]["duty"] = 0.5;
        j["averaging_variant"]["deadband_c"] = 0.5;
        j["averaging_variant"]["setpoint_c"] = 20.0;
        // slow consensus so the convergence transient is visible in the
        // tracking metrics
        j["averaging_variant"]["w_weight"] = 1.0 / (30.0 * 100.0);
    } else if (name == "tcl-averaging-consensus") {
        j = averaging_fleet_json(50, 1.66, 0.422, 0.482, 0.0031, 0.0645, 2000.0, 0.25);
    } else if (name == "tcl-population-n1000") {
        j = averaging_fleet_json(1000, 1.66, 0.422, 0.482, 0.0031, 0.0645, 4000.0, 0.25);
    } else if (name == "tcl-population-n10000") {
        j = averaging_fleet_json(10000, 1.66, 0.4812, 0.5354, 0.0031, 0.161, 4000.0, 0.25);
        j["deadband_c"] = 2.0;
        j["setpoint_c"] = 24.0;
    } else if (name == "tcl-gridfluct-n100") {
        j = averaging_fleet_json(100, 1.66, 0.25, 0.65, 0.0031, 0.0645, 4000.0, 0.25);
        j["seed"] = 5;
        j["seeds"] = 5;
        j["ripple_window_fraction"] = 0.5;
    } else if (name == "tcl-loadfollow-100-50") {
        j = averaging_fleet_json(100, 1.66, 0.0, 0.0, 0.0031, 0.05, 8000.0, 0.25);
        j["duty"] = 0.5;
        j["deadband_c"] = 0.5;
        j["setpoint_c"] = 20.0;
        j["utility_step_time_s"] = 4000.0;
        j["utility_from_percent"] = 100.0;
        j["utility_to_percent"] = 50.0;
        j["control_interval_s"] = 500.0;
    } else {
        throw std::invalid_argument("unknown tcl scenario: " + name);
    }
    j["scenario"] = name;
    return j;
}

namespace {

ScenarioResult run_single_unit(const json& config) {
    ScenarioResult out;
    // Hybrid reference run.
    json hybrid_json = config;
    hybrid_json["model"] = "hybrid";
    auto hybrid_cfg = to_fleet_config(hybrid_json);
    auto hybrid_fleet = make_fleet(hybrid_cfg);
    auto grid = to_grid(config);
    auto hybrid_run = simulate_fleet(hybrid_fleet, grid);

    const auto& sh = hybrid_run.series.channel("s_0");
    const double hybrid_duty = measured_duty(sh, 0.8);
    const auto window = config["fft_window"].get<std::size_t>();
    const double fs = 1.0 / grid.dt;
    auto spec_h = fft_spectrum(final_window({sh.data(), sh.size()}, 0.8), window, fs);
    const double f_hybrid = dominant_frequency(spec_h);

    // Phase model at the hybrid natural frequency and analytic duty.
    json phase_json = config;
    phase_json["model"] = "phase_oscillator";
    if (config["use_natural_frequency"].get<bool>()) {
        auto params = to_fleet_config(config).base;
        phase_json["omega"] = natural_frequency(params);
        phase_json["duty"] = hybrid_duty;
    }
    auto phase_cfg = to_fleet_config(phase_json);
    auto phase_fleet = make_fleet(phase_cfg);
    auto phase_run = simulate_fleet(phase_fleet, grid);
    const auto& sp = phase_run.series.channel("s_0");
    const double phase_duty = measured_duty(sp, 0.8);
    auto spec_p = fft_spectrum(final_window({sp.data(), sp.size()}, 0.8), window, fs);
    const double f_phase = dominant_frequency(spec_p);

    {
        std::ostringstream osh, osp;
        osh << "freq_hz,magnitude\n";
        osp << "freq_hz,magnitude\n";
        char line[80];
        for (std::size_t k = 0; k < spec_h.freq.size(); ++k) {
            std::snprintf(line, sizeof(line), "%.17g,%.17g\n", spec_h.freq[k],
                          spec_h.magnitude[k]);
            osh << line;
        }
        for (std::size_t k = 0; k < spec_p.freq.size(); ++k) {
            std::snprintf(line, sizeof(line), "%.17g,%.17g\n", spec_p.freq[k],
                          spec_p.magnitude[k]);
            osp << line;
        }
        out.tables["spectrum_hybrid"] = osh.str();
        out.tables["spectrum_phase"] = osp.str();
    }
    out.summary["hybrid_duty"] = hybrid_duty;
    out.summary["phase_duty"] = phase_duty;
    out.summary["duty_gap_pp"] = std::abs(hybrid_duty - phase_duty) * 100.0;
    out.summary["hybrid_fundamental_cyc_per_hour"] = f_hybrid;
    out.summary["phase_fundamental_cyc_per_hour"] = f_phase;
    out.summary["fundamental_rel_gap"] = std::abs(f_hybrid - f_phase) / f_hybrid;
    out.series["trajectory_hybrid"] = hybrid_run.series;
    out.series["trajectory_phase"] = phase_run.series;
    return out;
}

ScenarioResult run_minimization(const json& config) {
    ScenarioResult out;
    auto cfg = to_fleet_config(config);
    auto fleet = make_fleet(cfg);
    auto grid = to_grid(config);
    auto run = simulate_fleet(fleet, grid);
    const auto& p = run.series.channel("p_agg");
    const double period = 2.0 * kPi / fleet.mean_omega();
    auto stats = steady_stats(p, grid.dt, period, 0.2);

    // duty-weighted floor: N P eta d (reduces to P(N/2) at 50% duty)
    double duty_sum = 0.0;
    for (const auto& u : fleet.units) duty_sum += u.duty;
    const double target = fleet.rated_power() * duty_sum / static_cast<double>(cfg.n);
    out.summary["steady_p_agg_kw"] = stats.cycle_mean_kw;
    out.summary["raw_tail_mean_kw"] = stats.mean_kw;
    out.summary["ripple_percent"] = stats.cycle_band_percent;
    out.summary["raw_band_percent"] = stats.band_percent;
    out.summary["target_kw"] = target;
    out.summary["diverged"] = run.series.diverged_at.has_value();

    std::vector<double> ref(p.size(), target);
    out.summary["rmse_percent"] =
        metric_rmse({ref.data(), ref.size()}, {p.data(), p.size()}, grid.dt, target);
    auto smooth = cycle_average({p.data(), p.size()}, grid.dt, period);
    out.summary["steady_rel_error_percent"] = steady_state_relative_error(
        {ref.data(), ref.size()}, {smooth.data(), smooth.size()});
    out.series["trajectory"] = run.series;
    return out;
}

ScenarioResult run_heterogeneous(const json& config) {
    // Phase model metrics plus the distributed-averaging variant.
    ScenarioResult out = run_minimization(config);
    json avg = config["averaging_variant"];
    avg["seed"] = config["seed"];
    auto cfg = to_fleet_config(avg);
    auto fleet = make_fleet(cfg);
    const double dt = avg["dt"].get<double>();
    TimeGrid grid(0.0, dt,
                  static_cast<std::size_t>(std::lround(avg["t_end"].get<double>() / dt)));
    auto run = simulate_fleet(fleet, grid);
    const auto& p = run.series.channel("p_agg");
    const double period = 1.0 / fleet.mean_omega();
    const double target = static_cast<double>(cfg.n) / 2.0 * cfg.base.P * cfg.base.eta;
    std::vector<double> ref(p.size(), target);
    json javg;
    javg["steady_p_agg_kw"] = steady_stats(p, dt, period, 0.2).cycle_mean_kw;
    javg["rmse_percent"] =
        metric_rmse({ref.data(), ref.size()}, {p.data(), p.size()}, dt, target);
    auto smooth = cycle_average({p.data(), p.size()}, dt, period);
    javg["steady_rel_error_percent"] = steady_state_relative_error(
        {ref.data(), ref.size()}, {smooth.data(), smooth.size()});
    out.summary["averaging_model"] = javg;
    out.series["trajectory_averaging"] = run.series;
    return out;
}

ScenarioResult run_consensus(const json& config) {
    ScenarioResult out;
    auto cfg = to_fleet_config(config);
    auto fleet = make_fleet(cfg);
    auto grid = to_grid(config);
    auto run = simulate_fleet(fleet, grid);
    double f0_sum = 0.0;
    for (const auto& u : fleet.units) f0_sum += u.omega;
    double fT_sum = 0.0, worst = 0.0;
    const double fmean = f0_sum / static_cast<double>(cfg.n);
    for (double f : run.final_f) {
        fT_sum += f;
        worst = std::max(worst, std::abs(f - fmean) / fmean);
    }
    out.summary["sum_f_rel_drift"] = std::abs(fT_sum - f0_sum) / f0_sum;
    out.summary["worst_rel_dev_from_mean"] = worst;
    out.summary["diverged"] = run.series.diverged_at.has_value();
    out.series["trajectory"] = run.series;
    return out;
}

ScenarioResult run_population(const json& config) {
    ScenarioResult out;
    auto cfg = to_fleet_config(config);
    auto fleet = make_fleet(cfg);
    auto grid = to_grid(config);
    auto run = simulate_fleet(fleet, grid);
    const auto& p = run.series.channel("p_agg");
    auto tail = final_window({p.data(), p.size()}, 0.25);
    double duty_sum = 0.0;
    for (const auto& u : fleet.units) duty_sum += u.duty;
    out.summary["steady_p_agg_kw"] = mean(tail);
    out.summary["fluctuation_band_percent"] = fluctuation_band_percent(tail);
    out.summary["expected_kw"] = fleet.rated_power() * duty_sum / static_cast<double>(cfg.n);
    out.summary["diverged"] = run.series.diverged_at.has_value();
    out.series["trajectory"] = run.series;
    return out;
}

ScenarioResult run_gridfluct(const json& config) {
    ScenarioResult out;
    const auto seeds = config["seeds"].get<std::size_t>();
    const double window = config["ripple_window_fraction"].get<double>();
    const auto base_seed = get_seed(config);
    json per_seed = json::array();
    double sum_pred = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) {
        const auto seed = base_seed + 1000 * s;
        // random案: no consensus, random phase offsets
        json rnd = config;
        rnd["seed"] = seed;
        auto rnd_cfg = to_fleet_config(rnd);
        rnd_cfg.w_weight = 0.0;
        RngStream orng(seed * 77 + 1);
        rnd_cfg.output_alpha.resize(rnd_cfg.n);
        for (auto& a : rnd_cfg.output_alpha) a = orng.uniform(0.0, 2.0 * kPi);
        auto rnd_fleet = make_fleet(rnd_cfg);
        auto grid = to_grid(config);
        auto rnd_run = simulate_fleet(rnd_fleet, grid);

        json des = config;
        des["seed"] = seed;
        auto des_cfg = to_fleet_config(des);
        auto des_fleet = make_fleet(des_cfg);
        auto des_run = simulate_fleet(des_fleet, grid);

        const auto& pr = rnd_run.series.channel("p_agg");
        const auto& pd = des_run.series.channel("p_agg");
        auto wr = final_window({pr.data(), pr.size()}, window);
        auto wd = final_window({pd.data(), pd.size()}, window);
        const double pred = metric_p_red(peak_to_peak(wr), peak_to_peak(wd));
        sum_pred += pred;
        per_seed.push_back({{"seed", seed},
                            {"p2p_random_kw", peak_to_peak(wr)},
                            {"p2p_desync_kw", peak_to_peak(wd)},
                            {"p_red_percent", pred}});
        if (s == 0) {
            out.series["trajectory_random"] = rnd_run.series;
            out.series["trajectory_desync"] = des_run.series;
        }
    }
    out.summary["per_seed"] = per_seed;
    out.summary["p_red_mean_percent"] = sum_pred / static_cast<double>(seeds);
    return out;
}

ScenarioResult run_loadfollow(const json& config) {
    ScenarioResult out;
    auto cfg = to_fleet_config(config);
    auto fleet = make_fleet(cfg);
    const double dt = config["dt"].get<double>();
    const double t_end = config["t_end"].get<double>();
    const double step_t = config["utility_step_time_s"].get<double>();
    UtilitySignal utility;
    utility.steps = {{0.0, config["utility_from_percent"].get<double>()},
                     {step_t, config["utility_to_percent"].get<double>()}};
    utility.validate();

    auto delayc = delayc_build(fleet);
    LoadFollower follower{delayc};
    const double rated = fleet.rated_power();
    const double interval = config["control_interval_s"].get<double>();
    const double cycle = 1.0 / fleet.mean_omega();

    std::vector<double> ts_before;
    for (const auto& u : fleet.units) ts_before.push_back(u.T_s);

    // Closed loop: simulate control intervals, measure the windowed rms,
    // update the offsets through the follower.
    TimeSeries full;
    full.add_channel("p_agg");
    full.add_channel("p_ref_kw");
    full.add_channel("alpha");
    full.seed = cfg.seed;
    full.unit = cfg.unit;
    std::vector<double> f_state, T_state;
    std::vector<double> offsets = equispaced_offsets(cfg.n, 0.0);
    double t0 = 0.0;
    double measured = rated;  // before any measurement, assume rated
    while (t0 < t_end - 1e-9) {
        const double t1 = std::min(t0 + interval, t_end);
        const double demand_kw = utility.at(t0) / 100.0 * rated;
        offsets = follower.step(demand_kw, measured, cfg.n);
        TimeGrid seg(t0, dt, static_cast<std::size_t>(std::lround((t1 - t0) / dt)));
        FleetRunOptions opts;
        opts.initial_offsets = offsets;
        if (!f_state.empty()) opts.f_override = f_state;
        if (!T_state.empty()) opts.T_override = T_state;
        auto run = simulate_fleet(fleet, seg, opts);
        f_state = run.final_f;
        T_state = run.final_T;
        const auto& p = run.series.channel("p_agg");
        // windowed rms over the final cycle of the segment
        const auto wlen = std::min<std::size_t>(
            p.size(), static_cast<std::size_t>(std::lround(cycle / dt)));
        measured = rms(std::span<const double>(p).subspan(p.size() - wlen));
        const auto& t_axis = run.series.times();
        for (std::size_t k = (t0 == 0.0 ? 0 : 1); k < run.series.size(); ++k)
            full.append(t_axis[k], {p[k], demand_kw, follower.alpha});
        t0 = t1;
    }

    // Tracking error after the utility step, on the cycle-averaged signal.
    const auto& p = full.channel("p_agg");
    const auto& ref = full.channel("p_ref_kw");
    auto smooth = cycle_average({p.data(), p.size()}, dt, cycle);
    std::size_t k_step = 0;
    const auto& t_axis = full.times();
    while (k_step < t_axis.size() && t_axis[k_step] < step_t) ++k_step;
    std::vector<double> ref_after(ref.begin() + static_cast<long>(k_step), ref.end());
    std::vector<double> p_after(smooth.begin() + static_cast<long>(k_step), smooth.end());
    out.summary["post_step_rel_error_percent"] = steady_state_relative_error(
        {ref_after.data(), ref_after.size()}, {p_after.data(), p_after.size()});
    out.summary["rmse_percent_after_step"] =
        metric_rmse({ref_after.data(), ref_after.size()}, {p_after.data(), p_after.size()},
                    dt, ref_after.back());
    out.summary["final_alpha"] = follower.alpha;
    out.summary["demand_clamped"] = follower.clamped;
    bool setpoints_untouched = true;
    for (std::size_t i = 0; i < fleet.units.size(); ++i)
        setpoints_untouched &= fleet.units[i].T_s == ts_before[i];
    out.summary["setpoints_untouched"] = setpoints_untouched;
    out.series["trajectory"] = full;
    return out;
}

}  // namespace

ScenarioResult run_tcl_scenario(const json& config) {
    const std::string name = config["scenario"].get<std::string>();
    if (name == "tcl-single-unit") return run_single_unit(config);
    if (name == "tcl-ensemble-n4-duty50" || name == "tcl-ensemble-n4-duty43" ||
        name == "tcl-population-n100")
        return run_minimization(config);
    if (name == "tcl-heterogeneous") return run_heterogeneous(config);
    if (name == "tcl-averaging-consensus") return run_consensus(config);
    if (name == "tcl-population-n1000" || name == "tcl-population-n10000")
        return run_population(config);
    if (name == "tcl-gridfluct-n100") return run_gridfluct(config);
    if (name == "tcl-loadfollow-100-50") return run_loadfollow(config);
    throw std::invalid_argument("unknown tcl scenario: " + name);
}

}  // namespace oscnet::scenario::detail
