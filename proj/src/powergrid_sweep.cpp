#include "oscnet/powergrid/sweep.hpp"

#include <cmath>
#include <future>

#include "oscnet/simcore/rng.hpp"

namespace oscnet::powergrid {

CcSystem apply_sweep_value(const CcSystem& base, const SweepSpec& spec, double value) {
    CcSystem sys = base;
    if (spec.parameter == SweepParameter::interarea_coupling) {
        // Replace the cross-area magnitudes; negative values flip the sign
        // back to attractive, matching the signed sweep range.
        // Cross-area magnitudes replaced by |value|; a negative parameter
        // turns the repulsion into attraction through the gain sign.
        const double mag = std::abs(value);
        for (std::size_t i = 0; i < sys.size(); ++i)
            for (std::size_t j = 0; j < sys.size(); ++j)
                if (i != j && sys.area[i] != sys.area[j]) sys.k(i, j) = mag;
        sys.cross_gain = value >= 0.0 ? base.cross_gain : -base.cross_gain;
    } else {
        if (spec.generator >= sys.size())
            throw std::invalid_argument("apply_sweep_value: generator index");
        sys.omega[spec.generator] = value;
    }
    return sys;
}

namespace {

SweepPoint run_point(const CcSystem& base, const SweepSpec& spec, double value,
                     std::uint64_t point_seed) {
    SweepPoint out;
    out.value = value;
    auto sys = apply_sweep_value(base, spec, value);

    // Equilibria from a handful of structured guesses.
    const std::size_t n = sys.size();
    std::vector<std::vector<double>> guesses;
    guesses.push_back(std::vector<double>(n, 0.0));
    std::vector<double> anti(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (sys.area[i] != sys.area[0]) anti[i] = 3.14159265358979323846;
    guesses.push_back(anti);
    RngStream grng(point_seed ^ 0xabcdefULL);
    for (int g = 0; g < 4; ++g) {
        std::vector<double> random(n);
        for (auto& v : random) v = grng.uniform(-3.0, 3.0);
        guesses.push_back(std::move(random));
    }
    for (const auto& eq : equilibrium_solve(sys, guesses))
        if (eq.converged) ++out.equilibria;

    TimeGrid grid(0.0, spec.dt, static_cast<std::size_t>(spec.sim_time / spec.dt));
    CcRunOptions opts;
    opts.seed = point_seed;
    auto ts = simulate_cc(sys, grid, opts);
    out.diverged = ts.diverged_at.has_value();
    out.regime = chimera_detect(ts, sys, spec.thresholds);

    const std::size_t m = ts.size();
    const auto k0 = static_cast<std::size_t>(
        static_cast<double>(m) * (1.0 - spec.thresholds.window_fraction));
    auto window_avg = [&](const std::string& name) {
        const auto& c = ts.channel(name);
        double mean = 0.0;
        for (std::size_t k = k0; k < m; ++k) mean += c[k];
        return mean / static_cast<double>(m - k0);
    };
    out.r_global = window_avg("r_global");
    std::vector<int> labels = sys.area;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (int a : labels) out.r_area.push_back(window_avg("r_area_" + std::to_string(a)));
    return out;
}

}  // namespace

std::vector<SweepPoint> bifurcation_sweep(const CcSystem& base, const SweepSpec& spec) {
    base.validate();
    if (!(spec.resolution > 0.0)) throw std::invalid_argument("bifurcation_sweep: resolution");
    std::vector<double> values;
    for (double v = spec.from; v <= spec.to + 1e-12; v += spec.resolution) values.push_back(v);

    std::vector<SweepPoint> points(values.size());
    if (spec.parallel) {
        std::vector<std::future<SweepPoint>> futures;
        futures.reserve(values.size());
        for (std::size_t idx = 0; idx < values.size(); ++idx) {
            futures.push_back(std::async(std::launch::async, [&, idx] {
                return run_point(base, spec, values[idx],
                                 RngStream::derive(spec.seed, idx).seed());
            }));
        }
        for (std::size_t idx = 0; idx < values.size(); ++idx) points[idx] = futures[idx].get();
    } else {
        for (std::size_t idx = 0; idx < values.size(); ++idx)
            points[idx] = run_point(base, spec, values[idx],
                                    RngStream::derive(spec.seed, idx).seed());
    }
    return points;
}

}  // namespace oscnet::powergrid
