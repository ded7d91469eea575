#include "oscnet/tcl/dispatch.hpp"

#include <algorithm>
#include <cmath>

#include "oscnet/tcl/metrics.hpp"

namespace oscnet::tcl {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double UtilitySignal::at(double t) const {
    double v = 100.0;
    for (const auto& s : steps) {
        if (s.t <= t) v = s.percent;
        else break;
    }
    return v;
}

void UtilitySignal::validate() const {
    for (const auto& s : steps)
        if (s.percent < 0.0 || s.percent > 100.0)
            throw std::invalid_argument("UtilitySignal: percent in [0, 100]");
    for (std::size_t k = 1; k < steps.size(); ++k)
        if (steps[k].t < steps[k - 1].t)
            throw std::invalid_argument("UtilitySignal: steps must be time-ordered");
}

DelayCalculator delayc_build(const TclFleet& fleet, double alpha_step) {
    if (fleet.config.n < 2) throw std::invalid_argument("delayc_build: need >= 2 units");
    if (!(alpha_step > 0.0)) throw std::invalid_argument("delayc_build: alpha_step must be > 0");

    const std::size_t n = fleet.config.n;
    const double f_mean = fleet.mean_omega() / kTwoPi;  // cycles per time unit
    if (!(f_mean > 0.0)) throw std::invalid_argument("delayc_build: fleet omega must be > 0");
    const double cycle = 1.0 / f_mean;

    // Steady state of the locked fleet at per-unit offsets (i-1)*alpha:
    // synthesize the switching signals directly over the rms window
    // (10 settling cycles, rms over the final 3).
    const int samples_per_cycle = 512;
    const double t0 = 10.0 * cycle;
    const double t1 = 13.0 * cycle;
    const std::size_t m = 3 * samples_per_cycle;
    std::vector<double> p(m);

    DelayCalculator out;
    for (double alpha = 0.0; alpha <= kPi + 1e-12; alpha += alpha_step) {
        for (std::size_t k = 0; k < m; ++k) {
            const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(m);
            double agg = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double phase = kTwoPi * f_mean * t + static_cast<double>(i) * alpha;
                const double s = heaviside(std::sin(phase) - fleet.s0_bias[i]);
                agg += fleet.units[i].P * fleet.units[i].eta * s;
            }
            p[k] = agg;
        }
        out.alphas.push_back(alpha);
        out.rms_kw.push_back(rms({p.data(), p.size()}));
    }

    out.argmin = static_cast<std::size_t>(
        std::min_element(out.rms_kw.begin(), out.rms_kw.end()) - out.rms_kw.begin());
    // Monotone (non-increasing, plateaus allowed) up to the minimum. The
    // tolerance absorbs synthesis sampling jitter; a genuine re-rise past
    // the minimum flags the sweep for nearest-achievable lookup.
    const double tol = 1e-3 * std::max(out.max_rms(), 1.0);
    double running_min = out.rms_kw.empty() ? 0.0 : out.rms_kw.front();
    for (std::size_t k = 1; k <= out.argmin; ++k) {
        if (out.rms_kw[k] > running_min + tol) {
            out.monotone = false;
            break;
        }
        running_min = std::min(running_min, out.rms_kw[k]);
    }
    return out;
}

double DelayCalculator::lookup(double demand_kw, bool* clamped) const {
    if (alphas.empty()) throw std::logic_error("DelayCalculator: empty");
    if (clamped) *clamped = false;
    if (demand_kw >= max_rms()) {
        if (clamped && demand_kw > max_rms()) *clamped = true;
        return alphas.front();
    }
    if (demand_kw <= min_rms()) {
        if (clamped && demand_kw < min_rms()) *clamped = true;
        return alphas[argmin];
    }
    // Nearest achievable power on the branch up to the minimum.
    std::size_t best = 0;
    double best_err = std::abs(rms_kw[0] - demand_kw);
    for (std::size_t k = 1; k <= argmin; ++k) {
        const double e = std::abs(rms_kw[k] - demand_kw);
        if (e < best_err) {
            best_err = e;
            best = k;
        }
    }
    return alphas[best];
}

std::vector<double> LoadFollower::step(double demand_kw, double measured_kw, std::size_t n,
                                       bool utility_alive) {
    if (!utility_alive) {
        // Loss of the utility signal: keep grid loading at its minimum.
        alpha = kTwoPi / static_cast<double>(n);
        clamped = false;
        return equispaced_offsets(n, alpha);
    }
    const double error = demand_kw - measured_kw;
    trim_kw += feedback_gain * error;
    // Keep the integral trim from winding past the achievable range.
    const double span = delayc.max_rms() - delayc.min_rms();
    trim_kw = std::clamp(trim_kw, -span, span);
    alpha = delayc.lookup(demand_kw + trim_kw, &clamped);
    return equispaced_offsets(n, alpha);
}

}  // namespace oscnet::tcl
