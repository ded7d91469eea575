#include <cmath>
#include <sstream>

#include "oscnet/analysis/spectrum.hpp"
#include "oscnet/powergrid/sweep.hpp"
#include "oscnet/simcore/rng.hpp"
#include "scenario_detail.hpp"

namespace oscnet::scenario::detail {

namespace {

using namespace oscnet::powergrid;

constexpr double kPi = 3.14159265358979323846;

const char* kNames[] = {
    "powergrid-case1",    "powergrid-case2",   "powergrid-sweep-r1",
    "powergrid-sweep-r2", "powergrid-chimera", "powergrid-pi-state-n500",
};

json case_json(int case_id) {
    json j;
    j["seed"] = 3;
    j["case"] = case_id;
    j["t_end_s"] = 300.0;
    j["dt_s"] = 0.01;
    // start at the anti-phase interarea operating geometry
    j["delta0"] = json::array({0.02, -0.01, kPi + 0.03, kPi - 0.02});
    j["time_unit"] = "seconds";
    return j;
}

// The islanding sweep template: a tightly meshed three-generator area plus
// one tie-line unit whose mechanical loading is swept.
CcSystem islanding_template() {
    CcSystem sys;
    sys.omega = {7.0, 7.0, 7.0, 7.0};
    sys.alpha.assign(4, 0.125);
    sys.area = {1, 1, 1, 2};
    sys.conformist = true;
    sys.k = Matrix(4, 4);
    auto link = [&](std::size_t i, std::size_t j, double v) {
        sys.k(i, j) = sys.k(j, i) = v;
    };
    link(0, 1, 1.95);
    link(0, 2, 1.95);
    link(1, 2, 1.95);
    link(0, 3, 0.2);
    link(1, 3, 0.2);
    link(2, 3, 0.2);
    return sys;
}

json sweep_points_json(const std::vector<SweepPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) {
        json jp;
        jp["value"] = p.value;
        jp["regime"] = to_string(p.regime);
        jp["r_global"] = p.r_global;
        jp["r_area"] = p.r_area;
        jp["equilibria"] = p.equilibria;
        jp["diverged"] = p.diverged;
        arr.push_back(jp);
    }
    return arr;
}

std::string sweep_points_csv(const std::vector<SweepPoint>& pts) {
    std::ostringstream os;
    os << "parameter,regime,steady_r_global,r_area_min,r_area_max,equilibria\n";
    char buf[160];
    for (const auto& p : pts) {
        double lo = 1.0, hi = 0.0;
        for (double r : p.r_area) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%.17g,%.17g,%zu\n", p.value,
                      to_string(p.regime).c_str(), p.r_global, lo, hi, p.equilibria);
        os << buf;
    }
    return os.str();
}

std::string compass_csv(const std::vector<CompassVector>& vecs) {
    std::ostringstream os;
    os << "generator,magnitude,angle_rad\n";
    char buf[120];
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, vecs[i].magnitude,
                      vecs[i].angle);
        os << buf;
    }
    return os.str();
}

std::string circle_csv(std::span<const double> phases) {
    auto pts = circle_snapshot(phases);
    std::ostringstream os;
    os << "generator,x,y,phase_wrapped\n";
    char buf[160];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i, pts[i].x, pts[i].y,
                      pts[i].phase_wrapped);
        os << buf;
    }
    return os.str();
}

}  // namespace

bool is_powergrid_scenario(const std::string& name) {
    for (const char* n : kNames)
        if (name == n) return true;
    return false;
}

std::vector<std::pair<std::string, std::string>> powergrid_list() {
    return {
        {"powergrid-case1", "two-area four-machine system, no tie-line transfer"},
        {"powergrid-case2", "two-area four-machine system, 400 MW area-1 to area-2 transfer"},
        {"powergrid-sweep-r1", "inter-area coupling sweep with regime labels per value"},
        {"powergrid-sweep-r2", "tie-line unit frequency sweep: lock, chimera, islanding"},
        {"powergrid-chimera", "single islanding run with circle and order-parameter exports"},
        {"powergrid-pi-state-n500", "five hundred generators settling into the pi-state"},
    };
}

json powergrid_builtin(const std::string& name) {
    json j;
    if (name == "powergrid-case1") j = case_json(1);
    else if (name == "powergrid-case2") j = case_json(2);
    else if (name == "powergrid-sweep-r1") {
        j["seed"] = 5;
        j["from"] = -1.0;
        j["to"] = 1.0;
        j["resolution"] = 0.05;
        j["sim_time_s"] = 200.0;
        j["dt_s"] = 0.01;
        j["time_unit"] = "seconds";
    } else if (name == "powergrid-sweep-r2") {
        j["seed"] = 5;
        j["from"] = 5.0;
        j["to"] = 12.0;
        j["resolution"] = 0.5;
        j["sim_time_s"] = 300.0;
        j["dt_s"] = 0.01;
        j["time_unit"] = "seconds";
    } else if (name == "powergrid-chimera") {
        j["seed"] = 5;
        j["r2"] = 10.0;
        j["sim_time_s"] = 400.0;
        j["dt_s"] = 0.01;
        j["time_unit"] = "seconds";
    } else if (name == "powergrid-pi-state-n500") {
        j["seed"] = 11;
        j["n"] = 500;
        j["sim_time_s"] = 60.0;
        j["dt_s"] = 0.02;
        j["k_intra"] = 1.95;
        j["k_cross"] = 0.35;
        j["omega_mean"] = 7.0;
        j["omega_std"] = 0.05;
        j["time_unit"] = "seconds";
    } else {
        throw std::invalid_argument("unknown powergrid scenario: " + name);
    }
    j["scenario"] = name;
    return j;
}

namespace {

ScenarioResult run_case(const json& config) {
    ScenarioResult out;
    auto sys = two_area_scenario(config["case"].get<int>());
    const double dt = config["dt_s"].get<double>();
    TimeGrid grid(0.0, dt,
                  static_cast<std::size_t>(std::lround(config["t_end_s"].get<double>() / dt)));
    CcRunOptions opts;
    opts.seed = get_seed(config);
    std::vector<double> d0;
    for (const auto& v : config["delta0"]) d0.push_back(v.get<double>());
    if (!d0.empty()) opts.delta0 = d0;
    auto ts = simulate_cc(sys, grid, opts);

    const auto& gap = ts.channel("interarea_gap");
    const std::size_t k0 = ts.size() * 8 / 10;
    double cs = 0.0, sn = 0.0;
    for (std::size_t k = k0; k < ts.size(); ++k) {
        cs += std::cos(gap[k]);
        sn += std::sin(gap[k]);
    }
    out.summary["interarea_gap_rad"] = std::atan2(sn, cs);
    const auto& d1 = ts.channel("delta_1");
    const auto& d0c = ts.channel("delta_0");
    const auto& d3 = ts.channel("delta_3");
    const auto& d2 = ts.channel("delta_2");
    out.summary["intraarea_gap_area1_rad"] = wrap_angle(d1.back() - d0c.back());
    out.summary["intraarea_gap_area2_rad"] = wrap_angle(d3.back() - d2.back());
    out.summary["r_area_1"] = ts.channel("r_area_1").back();
    out.summary["r_area_2"] = ts.channel("r_area_2").back();
    out.summary["diverged"] = ts.diverged_at.has_value();

    auto compass = compass_vectors(ts, sys);
    out.tables["compass"] = compass_csv(compass);
    bool opposed = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) {
            const double sep = std::abs(wrap_angle(compass[i].angle - compass[j].angle));
            opposed &= sep > kPi / 2.0;
        }
    out.summary["compass_areas_opposed"] = opposed;

    std::vector<double> final_phases;
    for (int i = 0; i < 4; ++i)
        final_phases.push_back(ts.channel("delta_" + std::to_string(i)).back());
    out.tables["circle"] = circle_csv({final_phases.data(), final_phases.size()});
    out.series["trajectory"] = ts;
    return out;
}

ScenarioResult run_sweep_r1(const json& config) {
    ScenarioResult out;
    auto base = two_area_scenario(1);
    const double wmean = (17.5290 + 17.7923 + 17.5640 + 17.8285) / 4.0;
    for (auto& w : base.omega) w = wmean;  // homogeneous frequencies
    SweepSpec spec;
    spec.parameter = SweepParameter::interarea_coupling;
    spec.from = config["from"].get<double>();
    spec.to = config["to"].get<double>();
    spec.resolution = config["resolution"].get<double>();
    spec.sim_time = config["sim_time_s"].get<double>();
    spec.dt = config["dt_s"].get<double>();
    spec.seed = get_seed(config);
    auto pts = bifurcation_sweep(base, spec);
    out.summary["points"] = sweep_points_json(pts);
    out.tables["sweep"] = sweep_points_csv(pts);
    return out;
}

ScenarioResult run_sweep_r2(const json& config) {
    ScenarioResult out;
    auto base = islanding_template();
    SweepSpec spec;
    spec.parameter = SweepParameter::natural_frequency;
    spec.generator = 3;
    spec.from = config["from"].get<double>();
    spec.to = config["to"].get<double>();
    spec.resolution = config["resolution"].get<double>();
    spec.sim_time = config["sim_time_s"].get<double>();
    spec.dt = config["dt_s"].get<double>();
    spec.seed = get_seed(config);
    auto pts = bifurcation_sweep(base, spec);
    out.summary["points"] = sweep_points_json(pts);
    out.tables["sweep"] = sweep_points_csv(pts);
    return out;
}

ScenarioResult run_chimera(const json& config) {
    ScenarioResult out;
    auto sys = islanding_template();
    sys.omega[3] = config["r2"].get<double>();
    const double dt = config["dt_s"].get<double>();
    TimeGrid grid(0.0, dt,
                  static_cast<std::size_t>(std::lround(config["sim_time_s"].get<double>() / dt)));
    CcRunOptions opts;
    opts.seed = get_seed(config);
    auto ts = simulate_cc(sys, grid, opts);
    out.summary["regime"] = to_string(chimera_detect(ts, sys));
    out.summary["diverged"] = ts.diverged_at.has_value();
    std::vector<double> final_phases;
    for (std::size_t i = 0; i < sys.size(); ++i)
        final_phases.push_back(ts.channel("delta_" + std::to_string(i)).back());
    out.tables["circle"] = circle_csv({final_phases.data(), final_phases.size()});
    out.series["trajectory"] = ts;
    return out;
}

ScenarioResult run_pi_state(const json& config) {
    ScenarioResult out;
    const auto n = config["n"].get<std::size_t>();
    CcSystem sys;
    sys.omega.resize(n);
    sys.alpha.assign(n, 0.125);
    sys.area.resize(n);
    sys.k = Matrix(n, n);
    const double k_intra = config["k_intra"].get<double>();
    const double k_cross = config["k_cross"].get<double>();
    // Equal-size populations; couplings scaled by group size so the total
    // restoring torque matches the two-area template scale.
    const std::size_t half = n / 2;
    RngStream rng(get_seed(config));
    for (std::size_t i = 0; i < n; ++i) {
        sys.area[i] = i < half ? 1 : 2;
        sys.omega[i] = sample_gaussian(rng, config["omega_mean"].get<double>(),
                                       config["omega_std"].get<double>());
    }
    const double scale = static_cast<double>(half);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = (sys.area[i] == sys.area[j] ? k_intra : k_cross) / scale;
            sys.k(i, j) = sys.k(j, i) = v;
        }
    const double dt = config["dt_s"].get<double>();
    TimeGrid grid(0.0, dt,
                  static_cast<std::size_t>(std::lround(config["sim_time_s"].get<double>() / dt)));
    CcRunOptions opts;
    opts.seed = get_seed(config);
    // start the populations near their pi-state geometry
    std::vector<double> d0(n);
    for (std::size_t i = 0; i < n; ++i)
        d0[i] = (sys.area[i] == 2 ? kPi : 0.0) + rng.uniform(-0.5, 0.5);
    opts.delta0 = d0;
    opts.trace_limit = 100;
    auto ts = simulate_cc(sys, grid, opts);

    const std::size_t k0 = ts.size() * 8 / 10;
    auto window_avg = [&](const std::string& name) {
        const auto& c = ts.channel(name);
        double mean = 0.0;
        for (std::size_t k = k0; k < ts.size(); ++k) mean += c[k];
        return mean / static_cast<double>(ts.size() - k0);
    };
    out.summary["r_area_1"] = window_avg("r_area_1");
    out.summary["r_area_2"] = window_avg("r_area_2");
    const auto& gap = ts.channel("interarea_gap");
    double cs = 0.0, sn = 0.0;
    for (std::size_t k = k0; k < ts.size(); ++k) {
        cs += std::cos(gap[k]);
        sn += std::sin(gap[k]);
    }
    out.summary["interarea_gap_rad"] = std::atan2(sn, cs);
    out.summary["diverged"] = ts.diverged_at.has_value();
    out.series["trajectory"] = ts;
    return out;
}

}  // namespace

ScenarioResult run_powergrid_scenario(const json& config) {
    const std::string name = config["scenario"].get<std::string>();
    if (name == "powergrid-case1" || name == "powergrid-case2") return run_case(config);
    if (name == "powergrid-sweep-r1") return run_sweep_r1(config);
    if (name == "powergrid-sweep-r2") return run_sweep_r2(config);
    if (name == "powergrid-chimera") return run_chimera(config);
    if (name == "powergrid-pi-state-n500") return run_pi_state(config);
    throw std::invalid_argument("unknown powergrid scenario: " + name);
}

}  // namespace oscnet::scenario::detail
