#include "oscnet/simcore/integrate.hpp"

#include <cmath>

namespace oscnet {

void rk4_step(const Rhs& rhs, double t, double dt, std::vector<double>& x,
              std::vector<double>& work) {
    const std::size_t n = x.size();
    work.resize(5 * n);
    double* k1 = work.data();
    double* k2 = k1 + n;
    double* k3 = k2 + n;
    double* k4 = k3 + n;
    double* xt = k4 + n;

    rhs(t, {x.data(), n}, {k1, n});
    for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, {xt, n}, {k2, n});
    for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, {xt, n}, {k3, n});
    for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + dt * k3[i];
    rhs(t + dt, {xt, n}, {k4, n});
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) x[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

namespace {

bool state_ok(const std::vector<double>& x, double limit) {
    for (double v : x) {
        if (!std::isfinite(v) || std::abs(v) > limit) return false;
    }
    return true;
}

}  // namespace

bool integrate_rk4_observe(const Rhs& rhs, std::vector<double> x0, const TimeGrid& grid,
                           const StepObserver& observer, double* diverged_at,
                           const IntegrateOptions& opts) {
    std::vector<double> work;
    observer(0, grid.at(0), {x0.data(), x0.size()});
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.at(k);
        rk4_step(rhs, t, grid.dt, x0, work);
        if (!state_ok(x0, opts.divergence_limit)) {
            if (diverged_at) *diverged_at = grid.at(k + 1);
            return false;
        }
        observer(k + 1, grid.at(k + 1), {x0.data(), x0.size()});
    }
    return true;
}

TimeSeries integrate_rk4(const Rhs& rhs, const std::vector<double>& x0, const TimeGrid& grid,
                         const std::vector<std::string>& channel_names,
                         const IntegrateOptions& opts) {
    TimeSeries out;
    for (std::size_t i = 0; i < x0.size(); ++i) {
        out.add_channel(channel_names.size() == x0.size() ? channel_names[i]
                                                          : "x" + std::to_string(i));
    }
    out.reserve(grid.samples());
    std::vector<double> row(x0.size());
    double died = 0.0;
    bool ok = integrate_rk4_observe(
        rhs, x0, grid,
        [&](std::size_t, double t, std::span<const double> x) {
            row.assign(x.begin(), x.end());
            out.append(t, row);
        },
        &died, opts);
    if (!ok) out.diverged_at = died;
    return out;
}

bool step_hybrid_observe(
    const HybridRhs& rhs, const DiscreteUpdate& update, std::vector<double> x0,
    std::vector<double> discrete0, const TimeGrid& grid,
    const std::function<void(std::size_t, double, std::span<const double>, std::span<const double>)>&
        observer,
    double* diverged_at, const IntegrateOptions& opts) {
    std::vector<double> work;
    std::vector<double> prev = discrete0;
    std::vector<int> flip_run(discrete0.size(), 0);

    Rhs frozen = [&](double t, std::span<const double> x, std::span<double> dxdt) {
        rhs(t, x, {discrete0.data(), discrete0.size()}, dxdt);
    };

    observer(0, grid.at(0), {x0.data(), x0.size()}, {discrete0.data(), discrete0.size()});
    for (std::size_t k = 0; k < grid.steps; ++k) {
        rk4_step(frozen, grid.at(k), grid.dt, x0, work);
        if (!state_ok(x0, opts.divergence_limit)) {
            if (diverged_at) *diverged_at = grid.at(k + 1);
            return false;
        }
        prev = discrete0;
        update(grid.at(k + 1), {x0.data(), x0.size()}, {discrete0.data(), discrete0.size()});
        for (std::size_t i = 0; i < discrete0.size(); ++i) {
            if (discrete0[i] != prev[i]) {
                if (++flip_run[i] > opts.max_consecutive_flips)
                    throw ChatteringError(
                        "discrete variable " + std::to_string(i) + " flipped on " +
                        std::to_string(flip_run[i]) + " consecutive steps (dt too large or "
                        "zero switching band)");
            } else {
                flip_run[i] = 0;
            }
        }
        observer(k + 1, grid.at(k + 1), {x0.data(), x0.size()},
                 {discrete0.data(), discrete0.size()});
    }
    return true;
}

TimeSeries step_hybrid(const HybridRhs& rhs, const DiscreteUpdate& update,
                       const std::vector<double>& x0, const std::vector<double>& discrete0,
                       const TimeGrid& grid, const std::vector<std::string>& state_names,
                       const std::vector<std::string>& discrete_names,
                       const IntegrateOptions& opts) {
    TimeSeries out;
    for (std::size_t i = 0; i < x0.size(); ++i)
        out.add_channel(state_names.size() == x0.size() ? state_names[i]
                                                        : "x" + std::to_string(i));
    for (std::size_t i = 0; i < discrete0.size(); ++i)
        out.add_channel(discrete_names.size() == discrete0.size() ? discrete_names[i]
                                                                  : "s" + std::to_string(i));
    out.reserve(grid.samples());
    std::vector<double> row(x0.size() + discrete0.size());
    double died = 0.0;
    bool ok = step_hybrid_observe(
        rhs, update, x0, discrete0, grid,
        [&](std::size_t, double t, std::span<const double> x, std::span<const double> d) {
            std::size_t j = 0;
            for (double v : x) row[j++] = v;
            for (double v : d) row[j++] = v;
            out.append(t, row);
        },
        &died, opts);
    if (!ok) out.diverged_at = died;
    return out;
}

std::vector<double> finite_difference_jacobian(const Rhs& rhs, double t,
                                               const std::vector<double>& x, double eps) {
    const std::size_t n = x.size();
    std::vector<double> jac(n * n, 0.0);
    std::vector<double> xp = x, xm = x, fp(n), fm(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double h = eps * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        rhs(t, {xp.data(), n}, {fp.data(), n});
        rhs(t, {xm.data(), n}, {fm.data(), n});
        for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return jac;
}

}  // namespace oscnet
