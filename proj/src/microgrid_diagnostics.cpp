#include "oscnet/microgrid/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace oscnet::microgrid {

namespace {

bool in_excluded(double t, const PassivityConfig& cfg) {
    for (const auto& [a, b] : cfg.excluded_windows)
        if (t >= a && t <= b + cfg.guard) return true;
    return false;
}

}  // namespace

PassivityReport passivity_diagnostics(const TimeSeries& series, std::size_t n,
                                      const PassivityConfig& cfg) {
    const std::size_t m = series.size();
    if (m < 3) throw std::invalid_argument("passivity_diagnostics: series too short");
    PassivityReport rep;
    rep.t = series.times();
    rep.v.resize(m);
    rep.w.resize(m);
    rep.u.resize(m);
    rep.z.resize(m);
    rep.zdot.assign(m, 0.0);

    std::vector<const std::vector<double>*> delta(n), omega(n), u_in(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta[i] = &series.channel("delta_" + std::to_string(i));
        omega[i] = &series.channel("omega_" + std::to_string(i));
        u_in[i] = &series.channel("Omega_" + std::to_string(i));
    }
    std::vector<const std::vector<double>*> c_ch;
    std::size_t c_count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::string name = "c_" + std::to_string(i) + "_" + std::to_string(j);
            if (series.has_channel(name)) {
                c_ch.push_back(&series.channel(name));
                ++c_count;
            }
        }

    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k < m; ++k) {
        double v = 0.0, u = 0.0, w = 0.0;
        double mean_d = 0.0, mean_w = 0.0, mean_u = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean_d += (*delta[i])[k];
            mean_w += (*omega[i])[k];
            mean_u += (*u_in[i])[k];
        }
        mean_d /= nn;
        mean_w /= nn;
        mean_u /= nn;
        for (std::size_t i = 0; i < n; ++i) {
            // xi_i = sum_j (x_i - x_j) = n (x_i - mean x)
            const double xd = nn * ((*delta[i])[k] - mean_d);
            const double xw = nn * ((*omega[i])[k] - mean_w);
            const double du = nn * ((*u_in[i])[k] - mean_u);
            v += 0.25 * (xd * xd + xw * xw);
            u += 0.25 * du * du;
        }
        for (std::size_t l = 0; l < c_count; ++l) {
            const double chat = (*c_ch[l])[k] - cfg.c_star;
            w += 0.25 * chat * chat / cfg.gamma;
        }
        rep.v[k] = v;
        rep.w[k] = w;
        rep.u[k] = u;
        rep.z[k] = v + w + u;
    }

    const double dt = series.dt();
    for (std::size_t k = 1; k + 1 < m; ++k)
        rep.zdot[k] = (rep.z[k + 1] - rep.z[k - 1]) / (2.0 * dt);

    rep.z_nonincreasing = true;
    rep.max_zdot_outside = -std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, rep.z.front());
    for (std::size_t k = 1; k + 1 < m; ++k) {
        if (in_excluded(rep.t[k], cfg)) continue;
        rep.max_zdot_outside = std::max(rep.max_zdot_outside, rep.zdot[k]);
        if (rep.zdot[k] > cfg.tolerance * scale) rep.z_nonincreasing = false;
    }
    if (!std::isfinite(rep.max_zdot_outside)) rep.max_zdot_outside = 0.0;

    // Mean coupling gain decay after the final excluded window.
    if (c_count > 0) {
        std::vector<double> mean_c(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < c_count; ++l) mean_c[k] += (*c_ch[l])[k];
            mean_c[k] /= static_cast<double>(c_count);
        }
        rep.terminal_c = mean_c.back();
        double t_last = rep.t.front();
        for (const auto& [a, b] : cfg.excluded_windows) t_last = std::max(t_last, b + cfg.guard);
        // log-linear fit of (c - c_end_estimate) over the free tail, using a
        // floor to keep the log finite
        std::size_t k0 = 0;
        while (k0 < m && rep.t[k0] < t_last) ++k0;
        if (k0 + 10 < m) {
            const double c_floor = 0.0;
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            std::size_t cnt = 0;
            for (std::size_t k = k0; k < m; ++k) {
                const double val = mean_c[k] - c_floor;
                if (val <= 1e-12) continue;
                const double x = rep.t[k], y = std::log(val);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++cnt;
            }
            if (cnt > 10) {
                const double denom = static_cast<double>(cnt) * sxx - sx * sx;
                if (std::abs(denom) > 1e-12)
                    rep.fitted_c_decay_rate = -((static_cast<double>(cnt) * sxy - sx * sy) / denom);
            }
        }
    }

    // Incremental-passivity sample product on each inverter's
    // (angle-deviation, droop-signal) pairs: y = delta_i - mean(delta),
    // phi = omega-droop component = -(omega_i - Omega_i - mean(...)).
    // Consecutive-sample products of matched monotone channels.
    double min_prod = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 1; k < m; ++k) {
            if (in_excluded(rep.t[k], cfg) || in_excluded(rep.t[k - 1], cfg)) continue;
            double mean_d0 = 0.0, mean_d1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                mean_d0 += (*delta[j])[k - 1];
                mean_d1 += (*delta[j])[k];
            }
            mean_d0 /= nn;
            mean_d1 /= nn;
            const double y0 = (*delta[i])[k - 1] - mean_d0;
            const double y1 = (*delta[i])[k] - mean_d1;
            // phi recovered from the algebraic frequency relation:
            // omega = w0 - phi + Omega  =>  phi-like = Omega - omega + w0;
            // the additive constant cancels in differences.
            const double f0 = (*u_in[i])[k - 1] - (*omega[i])[k - 1];
            const double f1 = (*u_in[i])[k] - (*omega[i])[k];
            const double prod = (y1 - y0) * (f1 - f0);
            if (first || prod < min_prod) {
                min_prod = prod;
                first = false;
            }
        }
    }
    rep.min_incremental_product = min_prod;
    return rep;
}

}  // namespace oscnet::microgrid
