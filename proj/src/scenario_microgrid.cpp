#include <cmath>

#include "oscnet/microgrid/diagnostics.hpp"
#include "oscnet/microgrid/sim.hpp"
#include "scenario_detail.hpp"

namespace oscnet::scenario::detail {

namespace {

using namespace oscnet::microgrid;

const char* kNames[] = {
    "microgrid-nominal",     "microgrid-regulation", "microgrid-delay-250ms",
    "microgrid-malicious",   "microgrid-passivity",  "microgrid-mingain",
};

json base_config() {
    json j;
    j["seed"] = 42;
    j["inverters"] = 2;
    j["omega0"] = 1.0;
    j["m_p"] = 0.05;
    j["k_i"] = 1.0;
    j["line_reactance"] = 0.4;
    j["c_init"] = 0.8;
    j["gamma"] = 2e6;
    j["delta"] = 5e-4;
    j["min_gain_clamp"] = false;
    j["load_low"] = 0.33;
    j["load_high"] = 0.67;
    j["load_half_period_s"] = 45.0;
    j["load_share"] = json::array({1.0, 0.0});
    j["t_end_s"] = 90.0;
    j["dt_s"] = 0.01;
    // d_i disturbance; width interpreted per noise_is_variance
    j["noise_width"] = 1e-4;
    j["noise_is_variance"] = false;
    j["fault"] = {{"kind", "none"},
                  {"delay_s", 0.0},
                  {"random_jitter", false},
                  {"noise_width", 1e-4},
                  {"noise_is_variance", true},
                  {"t_start_s", 0.0},
                  {"t_end_s", 0.0}};
    j["bands"] = {{"frequency_rel", 1e-3},
                  {"control_rel", 1e-3},
                  {"sharing_rel", 0.01},
                  {"smooth_window_s", 0.2}};
    j["delta0"] = json::array();
    j["schemes"] = json::array({"DAPI", "RADAPI"});
    j["time_unit"] = "seconds";
    return j;
}

MicrogridConfig to_config(const json& j, Scheme scheme) {
    MicrogridConfig cfg;
    const auto n = j["inverters"].get<std::size_t>();
    cfg.inverters.resize(n);
    for (auto& inv : cfg.inverters) {
        inv.omega0 = j["omega0"].get<double>();
        inv.m_p = j["m_p"].get<double>();
        inv.k_i = j["k_i"].get<double>();
    }
    cfg.net = LineNetwork::two_bus(j["line_reactance"].get<double>());
    cfg.control.scheme = scheme;
    cfg.control.c_init = j["c_init"].get<double>();
    cfg.control.gamma = j["gamma"].get<double>();
    cfg.control.delta = j["delta"].get<double>();
    cfg.control.min_gain_clamp = j["min_gain_clamp"].get<bool>();
    std::vector<double> share;
    for (const auto& v : j["load_share"]) share.push_back(v.get<double>());
    cfg.loads = LoadSchedule::square_wave(j["load_low"].get<double>(),
                                          j["load_high"].get<double>(),
                                          j["load_half_period_s"].get<double>(),
                                          j["t_end_s"].get<double>(), share);
    cfg.noise = GaussianSpec{0.0, j["noise_width"].get<double>(),
                             j["noise_is_variance"].get<bool>()};
    const auto& jf = j["fault"];
    const std::string kind = jf["kind"].get<std::string>();
    cfg.fault.kind = kind == "time_delay"
                         ? FaultKind::time_delay
                         : (kind == "malicious_data" ? FaultKind::malicious_data
                                                     : FaultKind::none);
    cfg.fault.delay = jf["delay_s"].get<double>();
    cfg.fault.random_jitter = jf["random_jitter"].get<bool>();
    cfg.fault.noise = GaussianSpec{0.0, jf["noise_width"].get<double>(),
                                   jf["noise_is_variance"].get<bool>()};
    cfg.fault.t_start = jf["t_start_s"].get<double>();
    cfg.fault.t_end = jf["t_end_s"].get<double>();
    const double dt = j["dt_s"].get<double>();
    cfg.grid = TimeGrid(0.0, dt,
                        static_cast<std::size_t>(std::lround(j["t_end_s"].get<double>() / dt)));
    cfg.seed = get_seed(j);
    for (const auto& v : j["delta0"]) cfg.delta0.push_back(v.get<double>());
    return cfg;
}

MetricBands to_bands(const json& j) {
    MetricBands b;
    b.frequency_band_rel = j["bands"]["frequency_rel"].get<double>();
    b.control_band_rel = j["bands"]["control_rel"].get<double>();
    b.sharing_band_rel = j["bands"]["sharing_rel"].get<double>();
    b.smooth_window = j["bands"]["smooth_window_s"].get<double>();
    return b;
}

json metrics_json(const SettlingMetrics& m) {
    json j;
    j["frequency_s"] = m.frequency ? json(*m.frequency) : json();
    j["control_input_s"] = m.control_input ? json(*m.control_input) : json();
    j["power_sharing_s"] = m.power_sharing ? json(*m.power_sharing) : json();
    j["overall_s"] = m.overall() ? json(*m.overall()) : json();
    return j;
}

// Worst |omega_i - omega0| per sample, for recovery measurements.
std::vector<double> sup_frequency_deviation(const TimeSeries& ts, std::size_t n, double w0) {
    std::vector<double> sup(ts.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = ts.channel("omega_" + std::to_string(i));
        for (std::size_t k = 0; k < ts.size(); ++k)
            sup[k] = std::max(sup[k], std::abs(w[k] - w0));
    }
    return sup;
}

}  // namespace

bool is_microgrid_scenario(const std::string& name) {
    for (const char* n : kNames)
        if (name == n) return true;
    return false;
}

std::vector<std::pair<std::string, std::string>> microgrid_list() {
    return {
        {"microgrid-nominal",
         "two-inverter DAPI vs RADAPI under the switching load, settling metrics and net gain"},
        {"microgrid-regulation",
         "noise-free frequency regulation and 1% proportional sharing checks"},
        {"microgrid-delay-250ms", "DAPI vs RADAPI with a 250 ms random communication delay"},
        {"microgrid-malicious",
         "corrupted communication channel in the 30-60 s window, recovery check"},
        {"microgrid-passivity",
         "storage-function decomposition on the symmetric RADAPI run, plus Delta=0 gain growth"},
        {"microgrid-mingain", "aggressive gain leakage with the minimum-gain clamp engaged"},
    };
}

json microgrid_builtin(const std::string& name) {
    json j = base_config();
    j["scenario"] = name;
    if (name == "microgrid-nominal") return j;
    if (name == "microgrid-regulation") {
        j["noise_width"] = 0.0;
        return j;
    }
    if (name == "microgrid-delay-250ms") {
        j["fault"] = {{"kind", "time_delay"}, {"delay_s", 0.25},   {"random_jitter", true},
                      {"noise_width", 1e-4},  {"noise_is_variance", true},
                      {"t_start_s", 0.0},     {"t_end_s", 90.0}};
        return j;
    }
    if (name == "microgrid-malicious") {
        j["noise_width"] = 0.0;
        j["fault"] = {{"kind", "malicious_data"}, {"delay_s", 0.0},
                      {"random_jitter", false},   {"noise_width", 1e-3},
                      {"noise_is_variance", false}, {"t_start_s", 30.0}, {"t_end_s", 60.0}};
        return j;
    }
    if (name == "microgrid-passivity") {
        j["noise_width"] = 0.0;
        j["load_share"] = json::array({0.5, 0.5});
        j["delta0"] = json::array({0.05, -0.05});
        j["schemes"] = json::array({"RADAPI"});
        return j;
    }
    // microgrid-mingain
    j["delta"] = 0.5;
    j["c_init"] = 1.5;
    j["min_gain_clamp"] = true;
    return j;
}

ScenarioResult run_microgrid_scenario(const json& config) {
    ScenarioResult out;
    const std::string name = config["scenario"].get<std::string>();
    const auto bands = to_bands(config);
    const double w0 = config["omega0"].get<double>();
    const auto n = config["inverters"].get<std::size_t>();

    json runs = json::object();
    std::optional<double> dapi_overall, radapi_overall;
    for (const auto& scheme_name : config["schemes"]) {
        const std::string s = scheme_name.get<std::string>();
        const Scheme scheme = s == "DAPI" ? Scheme::dapi
                              : s == "RADAPI" ? Scheme::radapi
                                              : Scheme::droop_only;
        auto cfg = to_config(config, scheme);
        auto run = simulate_microgrid(cfg, bands);

        json jr;
        jr["metrics"] = metrics_json(run.metrics);
        jr["frequency_regulated"] = run.frequency_regulated;
        jr["diverged"] = run.series.diverged_at.has_value();
        if (scheme == Scheme::radapi && !run.final_c.empty()) {
            jr["final_c"] = run.final_c;
        }
        // proportional sharing at the final sample
        double mp_lo = 1e300, mp_hi = -1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const double mp =
                cfg.inverters[i].m_p * run.series.channel("P_" + std::to_string(i)).back();
            mp_lo = std::min(mp_lo, mp);
            mp_hi = std::max(mp_hi, mp);
        }
        jr["sharing_disagreement_rel"] =
            std::abs(mp_hi - mp_lo) / std::max(std::abs(0.5 * (mp_hi + mp_lo)), 1e-12);
        // recovery after the fault window (when a fault is configured)
        if (cfg.fault.kind != FaultKind::none) {
            auto sup = sup_frequency_deviation(run.series, n, w0);
            auto rec = settling_time(run.series.times(), sup, 0.0,
                                     bands.frequency_band_rel * w0, cfg.fault.t_end);
            jr["recovery_after_fault_s"] =
                rec ? json(*rec - cfg.fault.t_end) : json();
        }
        if (run.metrics.overall()) {
            if (scheme == Scheme::dapi) dapi_overall = run.metrics.overall();
            if (scheme == Scheme::radapi) radapi_overall = run.metrics.overall();
        }
        runs[s] = jr;
        out.series[s == "DAPI" ? "trajectory_dapi" : "trajectory_radapi"] = run.series;

        if (name == "microgrid-passivity" && scheme == Scheme::radapi) {
            PassivityConfig pc;
            pc.gamma = cfg.control.gamma;
            pc.excluded_windows = {{0.0, 0.0}, {45.0, 45.0}};
            pc.guard = 5.0;
            auto rep = passivity_diagnostics(run.series, n, pc);
            json jp;
            jp["z_nonincreasing"] = rep.z_nonincreasing;
            jp["max_zdot_outside_windows"] = rep.max_zdot_outside;
            jp["fitted_c_decay_rate"] = rep.fitted_c_decay_rate;
            jp["terminal_c"] = rep.terminal_c;
            jp["min_incremental_product"] = rep.min_incremental_product;
            out.summary["passivity"] = jp;

            // Delta = 0 variant: adaptive gains must be non-decreasing.
            auto cfg0 = cfg;
            cfg0.control.delta = 0.0;
            auto run0 = simulate_microgrid(cfg0, bands);
            bool nondecreasing = true;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t jdx = i + 1; jdx < n; ++jdx) {
                    const auto& c = run0.series.channel("c_" + std::to_string(i) + "_" +
                                                        std::to_string(jdx));
                    for (std::size_t k = 1; k < c.size(); ++k)
                        if (c[k] < c[k - 1] - 1e-12) nondecreasing = false;
                }
            out.summary["delta_zero_gains_nondecreasing"] = nondecreasing;
            out.series["trajectory_radapi_delta0"] = run0.series;
        }
    }
    out.summary["runs"] = runs;
    if (dapi_overall && radapi_overall) {
        out.summary["net_gain_percent"] = net_gain(*dapi_overall, *radapi_overall);
        out.summary["radapi_strictly_faster"] = *radapi_overall < *dapi_overall;
    }
    return out;
}

}  // namespace oscnet::scenario::detail
