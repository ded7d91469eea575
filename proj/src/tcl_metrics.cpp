#include "oscnet/tcl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscnet::tcl {

double rms(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("rms: empty");
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / static_cast<double>(x.size()));
}

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double peak_to_peak(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("peak_to_peak: empty");
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
}

std::span<const double> final_window(std::span<const double> x, double fraction) {
    if (x.empty()) throw std::invalid_argument("final_window: empty");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("final_window: fraction in (0, 1]");
    std::size_t count = static_cast<std::size_t>(std::ceil(fraction * x.size()));
    count = std::max<std::size_t>(1, std::min(count, x.size()));
    return x.subspan(x.size() - count);
}

double metric_p_norm(double p_rms_agg, double p_rms_alpha) {
    if (p_rms_agg <= 0.0) throw std::invalid_argument("metric_p_norm: P_rms_agg must be > 0");
    return (p_rms_agg - p_rms_alpha) / p_rms_agg * 100.0;
}

double metric_p_red(double p_random_ripple, double p_desync_ripple) {
    if (p_random_ripple <= 0.0) throw std::invalid_argument("metric_p_red: ripple must be > 0");
    return (p_random_ripple - p_desync_ripple) / p_random_ripple * 100.0;
}

double metric_rmse(std::span<const double> p_ref, std::span<const double> p_agg, double dt,
                   double p_base) {
    if (p_ref.size() != p_agg.size() || p_ref.size() < 2)
        throw std::invalid_argument("metric_rmse: bad series");
    if (p_base <= 0.0) throw std::invalid_argument("metric_rmse: P_base must be > 0");
    // Trapezoidal integral of the squared error.
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < p_ref.size(); ++k) {
        const double e0 = p_ref[k] - p_agg[k];
        const double e1 = p_ref[k + 1] - p_agg[k + 1];
        integral += 0.5 * (e0 * e0 + e1 * e1) * dt;
    }
    const double total_t = dt * static_cast<double>(p_ref.size() - 1);
    return std::sqrt(integral / total_t / (p_base * p_base)) * 100.0;
}

std::vector<double> metric_relative_error(std::span<const double> p_ref,
                                          std::span<const double> p_agg) {
    if (p_ref.size() != p_agg.size()) throw std::invalid_argument("relative_error: size mismatch");
    std::vector<double> out(p_ref.size());
    for (std::size_t k = 0; k < p_ref.size(); ++k) {
        if (p_ref[k] == 0.0) throw std::invalid_argument("relative_error: zero reference sample");
        out[k] = (p_ref[k] - p_agg[k]) / p_ref[k] * 100.0;
    }
    return out;
}

double steady_state_relative_error(std::span<const double> p_ref,
                                   std::span<const double> p_agg) {
    auto err = metric_relative_error(p_ref, p_agg);
    auto tail = final_window({err.data(), err.size()}, 0.10);
    double worst = 0.0;
    for (double v : tail) worst = std::max(worst, std::abs(v));
    return worst;
}

double fluctuation_band_percent(std::span<const double> x) {
    const double m = mean(x);
    if (m == 0.0) throw std::invalid_argument("fluctuation_band_percent: zero mean");
    double dev = 0.0;
    for (double v : x) dev = std::max(dev, std::abs(v - m));
    return dev / std::abs(m) * 100.0;
}

std::vector<double> cycle_average(std::span<const double> x, double dt, double period) {
    if (!(dt > 0.0) || !(period > 0.0))
        throw std::invalid_argument("cycle_average: dt and period must be > 0");
    const std::size_t w =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(period / dt)));
    std::vector<double> out(x.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += x[k];
        if (k >= w) acc -= x[k - w];
        out[k] = acc / static_cast<double>(std::min(k + 1, w));
    }
    return out;
}

}  // namespace oscnet::tcl
