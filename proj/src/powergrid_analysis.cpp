#include "oscnet/powergrid/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "oscnet/analysis/spectrum.hpp"

namespace oscnet::powergrid {

std::complex<double> order_parameter(std::span<const double> deltas) {
    if (deltas.empty()) throw std::invalid_argument("order_parameter: empty");
    std::complex<double> r(0.0, 0.0);
    for (double d : deltas) r += std::complex<double>(std::cos(d), std::sin(d));
    return r / static_cast<double>(deltas.size());
}

GroupOrder group_order_parameters(std::span<const double> deltas, std::span<const int> areas) {
    if (deltas.size() != areas.size() || deltas.empty())
        throw std::invalid_argument("group_order_parameters: size mismatch");
    GroupOrder out;
    out.labels.assign(areas.begin(), areas.end());
    std::sort(out.labels.begin(), out.labels.end());
    out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());
    out.r.resize(out.labels.size());
    for (std::size_t a = 0; a < out.labels.size(); ++a) {
        std::complex<double> sum(0.0, 0.0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            if (areas[i] != out.labels[a]) continue;
            sum += std::complex<double>(std::cos(deltas[i]), std::sin(deltas[i]));
            ++count;
        }
        if (count == 0) throw std::invalid_argument("group_order_parameters: empty area");
        out.r[a] = sum / static_cast<double>(count);
    }
    if (out.labels.size() == 2) out.gap = wrap_angle(std::arg(out.r[0]) - std::arg(out.r[1]));
    return out;
}

namespace {

// Residuals f_i = omega_i - alpha_i v + coupling_i(theta), theta[0] = 0.
void equilibrium_residual(const CcSystem& sys, const std::vector<double>& theta, double v,
                          std::vector<double>& f) {
    const std::size_t n = sys.size();
    f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = sys.omega[i] - sys.alpha[i] * v;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || sys.k(i, j) == 0.0) continue;
            acc += sys.sign(i, j) * sys.k(i, j) * std::sin(theta[j] - theta[i]);
        }
        f[i] = acc;
    }
}

// Dense Gaussian elimination with partial pivoting; returns false when
// singular.
bool solve_linear(Matrix a, std::vector<double>& b) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-14) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t c = col + 1; c < n; ++c) b[col] -= a(col, c) * b[c];
        b[col] /= a(col, col);
    }
    return true;
}

}  // namespace

Equilibrium solve_equilibrium(const CcSystem& sys, std::span<const double> theta_guess,
                              const EquilibriumOptions& opts) {
    sys.validate();
    const std::size_t n = sys.size();
    if (theta_guess.size() != n) throw std::invalid_argument("solve_equilibrium: guess size");

    Equilibrium eq;
    eq.theta.assign(theta_guess.begin(), theta_guess.end());
    const double gauge = eq.theta[0];
    for (auto& th : eq.theta) th -= gauge;  // gauge: theta_1 = 0

    // Initial drift estimate from the damping-weighted balance.
    if (opts.solve_drift) {
        double wsum = 0.0, asum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            wsum += sys.omega[i];
            asum += sys.alpha[i];
        }
        eq.drift = asum > 0.0 ? wsum / asum : 0.0;
    }

    std::vector<double> f;
    // Unknowns: theta[1..n-1] (+ v when solve_drift).
    const std::size_t dim = opts.solve_drift ? n : n - 1;
    for (int it = 0; it < opts.max_iterations; ++it) {
        equilibrium_residual(sys, eq.theta, eq.drift, f);
        double rnorm = 0.0;
        for (double v : f) rnorm = std::max(rnorm, std::abs(v));
        eq.residual = rnorm;
        if (rnorm < opts.tolerance) break;

        // Jacobian wrt [theta_2..theta_n, v]: rows are the n residuals.
        Matrix jac(dim, dim);
        std::vector<double> rhs(dim);
        if (!opts.solve_drift) {
            // least-squares-free variant: drop the first residual row
            for (std::size_t r = 1; r < n; ++r) rhs[r - 1] = -f[r];
        } else {
            for (std::size_t r = 0; r < n; ++r) rhs[r] = -f[r];
        }
        auto dcoupling = [&](std::size_t i, std::size_t j) {
            return sys.sign(i, j) * sys.k(i, j) * std::cos(eq.theta[j] - eq.theta[i]);
        };
        const std::size_t row0 = opts.solve_drift ? 0 : 1;
        for (std::size_t r = row0; r < n; ++r) {
            double diag = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == r || sys.k(r, j) == 0.0) continue;
                const double g = dcoupling(r, j);
                diag -= g;
                if (j >= 1) jac(r - row0, j - 1) = g;
            }
            if (r >= 1) jac(r - row0, r - 1) = diag;
            if (opts.solve_drift) jac(r - row0, n - 1) = -sys.alpha[r];
        }
        if (!solve_linear(jac, rhs)) break;
        double step = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            eq.theta[j] += rhs[j - 1];
            step = std::max(step, std::abs(rhs[j - 1]));
        }
        if (opts.solve_drift) {
            eq.drift += rhs[n - 1];
            step = std::max(step, std::abs(rhs[n - 1]));
        }
        if (step < opts.tolerance) {
            equilibrium_residual(sys, eq.theta, eq.drift, f);
            eq.residual = 0.0;
            for (double v : f) eq.residual = std::max(eq.residual, std::abs(v));
            break;
        }
    }
    for (std::size_t j = 1; j < n; ++j) eq.theta[j] = wrap_angle(eq.theta[j]);
    eq.converged = eq.residual < opts.accept_residual;
    return eq;
}

std::vector<Equilibrium> equilibrium_solve(const CcSystem& sys,
                                           const std::vector<std::vector<double>>& guesses,
                                           const EquilibriumOptions& opts) {
    std::vector<Equilibrium> found;
    for (const auto& guess : guesses) {
        auto eq = solve_equilibrium(sys, {guess.data(), guess.size()}, opts);
        if (!eq.converged) {
            found.push_back(eq);  // reported per guess, flagged unconverged
            continue;
        }
        bool duplicate = false;
        for (const auto& other : found) {
            if (!other.converged) continue;
            bool same = true;
            for (std::size_t j = 0; j < eq.theta.size(); ++j) {
                if (std::abs(wrap_angle(eq.theta[j] - other.theta[j])) > 1e-6) {
                    same = false;
                    break;
                }
            }
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) found.push_back(eq);
    }
    return found;
}

Classification classify_fixed_point(const CcSystem& sys, const Equilibrium& eq,
                                    double threshold) {
    const std::size_t n = sys.size();
    std::vector<double> state(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        state[i] = eq.theta[i];
        state[n + i] = eq.drift;
    }
    auto jac = cc_kuramoto_jacobian({state.data(), state.size()}, sys);
    Classification out;
    out.eigenvalues = eigenvalues(jac);
    // Drop the single zero mode from rotational symmetry: the eigenvalue of
    // smallest magnitude.
    std::size_t zero_idx = 0;
    double zero_mag = std::abs(out.eigenvalues[0]);
    for (std::size_t i = 1; i < out.eigenvalues.size(); ++i) {
        const double m = std::abs(out.eigenvalues[i]);
        if (m < zero_mag) {
            zero_mag = m;
            zero_idx = i;
        }
    }
    double max_re = -1e300;
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
        if (i == zero_idx) continue;
        max_re = std::max(max_re, out.eigenvalues[i].real());
    }
    out.max_real_part = max_re;
    if (max_re > threshold) out.verdict = Stability::unstable;
    else if (max_re < -threshold) out.verdict = Stability::stable;
    else out.verdict = Stability::marginal;
    return out;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::phase_locked: return "phase-locked";
        case Regime::chimera: return "chimera";
        case Regime::incoherent: return "incoherent";
    }
    return "?";
}

Regime chimera_detect(const TimeSeries& series, const CcSystem& sys,
                      const ChimeraThresholds& th) {
    if (series.diverged_at) return Regime::incoherent;
    const std::size_t m = series.size();
    const auto k0 = static_cast<std::size_t>(
        static_cast<double>(m) * (1.0 - th.window_fraction));
    const std::size_t n = sys.size();

    // Mean frequency per generator over the window.
    double f_lo = 1e300, f_hi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& y = series.channel("y_" + std::to_string(i));
        double mean = 0.0;
        for (std::size_t k = k0; k < m; ++k) mean += y[k];
        mean /= static_cast<double>(m - k0);
        f_lo = std::min(f_lo, mean);
        f_hi = std::max(f_hi, mean);
    }
    const bool freq_tight = (f_hi - f_lo) < th.freq_spread;

    // Time-averaged instantaneous coherence (locked-state test)...
    auto avg_channel = [&](const std::string& name) {
        const auto& c = series.channel(name);
        double mean = 0.0;
        for (std::size_t k = k0; k < m; ++k) mean += c[k];
        return mean / static_cast<double>(m - k0);
    };
    const double r_global = avg_channel("r_global");
    std::vector<int> labels = sys.area;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<double> r_area;
    for (int a : labels) r_area.push_back(avg_channel("r_area_" + std::to_string(a)));

    bool all_areas_locked = true;
    for (double r : r_area) all_areas_locked &= r > th.r_locked;
    if (freq_tight && (r_global > th.r_locked || all_areas_locked))
        return Regime::phase_locked;

    // ...and frame-referenced coherence for the chimera split: the complex
    // per-area mean of e^{i(delta - psi)} averaged over the window, with
    // psi the instantaneous global order-parameter phase. An area whose
    // members hold station relative to the locked bulk scores ~1; an area
    // with a drifting member scores well below 1/n_area-weighted unity.
    std::vector<const std::vector<double>*> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = &series.channel("delta_" + std::to_string(i));
    std::vector<std::complex<double>> frame_sum(labels.size(), {0.0, 0.0});
    std::vector<std::size_t> counts(labels.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), sys.area[i]) - labels.begin());
        ++counts[a];
    }
    for (std::size_t k = k0; k < m; ++k) {
        std::complex<double> global(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            global += std::complex<double>(std::cos((*d[i])[k]), std::sin((*d[i])[k]));
        const double psi = std::arg(global);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(
                std::find(labels.begin(), labels.end(), sys.area[i]) - labels.begin());
            const double rel = (*d[i])[k] - psi;
            frame_sum[a] += std::complex<double>(std::cos(rel), std::sin(rel));
        }
    }
    std::size_t coherent = 0, incoherent = 0;
    for (std::size_t a = 0; a < labels.size(); ++a) {
        const double r = std::abs(frame_sum[a]) /
                         static_cast<double>(counts[a] * (m - k0));
        if (r > th.r_coherent) ++coherent;
        if (r < th.r_incoherent) ++incoherent;
    }
    if (coherent == 1 && incoherent >= 1) return Regime::chimera;
    return Regime::incoherent;
}

std::vector<double> accel_power(std::span<const double> delta, std::span<const double> y,
                                const CcSystem& sys) {
    const std::size_t n = sys.size();
    if (delta.size() != n || y.size() != n)
        throw std::invalid_argument("accel_power: size mismatch");
    std::vector<double> state(2 * n), dstate(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        state[i] = delta[i];
        state[n + i] = y[i];
    }
    cc_kuramoto_rhs({state.data(), 2 * n}, sys, {dstate.data(), 2 * n});
    return std::vector<double>(dstate.begin() + static_cast<long>(n), dstate.end());
}

EqualAreaRoots equal_area_roots(double p_m, double p_max) {
    if (!(p_max > 0.0) || p_m < 0.0 || p_m >= p_max)
        throw std::invalid_argument("equal_area_roots: need 0 <= p_m < p_max");
    // Bisection on drive(d) = p_m - p_max sin(d); sink on [0, pi/2],
    // source on [pi/2, pi].
    auto bisect = [&](double lo, double hi) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f_lo = p_m - p_max * std::sin(lo);
            const double f_mid = p_m - p_max * std::sin(mid);
            if ((f_lo <= 0.0) == (f_mid <= 0.0)) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    EqualAreaRoots out;
    constexpr double half_pi = 1.57079632679489661923;
    out.sink = bisect(0.0, half_pi);
    out.source = bisect(half_pi, 2.0 * half_pi);
    // classification by the drive derivative: negative slope = sink
    const double slope_sink = -p_max * std::cos(out.sink);
    if (slope_sink > 0.0) std::swap(out.sink, out.source);
    return out;
}

std::vector<CompassVector> compass_vectors(const TimeSeries& series, const CcSystem& sys,
                                           double window_fraction) {
    const std::size_t n = sys.size();
    const std::size_t m = series.size();
    const auto k0 =
        static_cast<std::size_t>(static_cast<double>(m) * (1.0 - window_fraction));
    std::vector<const std::vector<double>*> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = &series.channel("delta_" + std::to_string(i));

    std::vector<CompassVector> out(n);
    // reference phase: global mean angle at the final sample
    std::vector<double> final_delta(n);
    for (std::size_t i = 0; i < n; ++i) final_delta[i] = d[i]->back();
    const double ref = std::arg(order_parameter({final_delta.data(), n}));
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t k = k0; k < m; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double gap = wrap_angle((*d[j])[k] - (*d[i])[k]);
                acc += gap * gap;
                ++count;
            }
        }
        out[i].magnitude = std::sqrt(acc / static_cast<double>(count));
        out[i].angle = wrap_angle(final_delta[i] - ref);
    }
    return out;
}

double pair_mode_curvature(double coupling, double phi, bool contrarian) {
    const double base = -2.0 * coupling * std::cos(phi);
    return contrarian ? -base : base;
}

}  // namespace oscnet::powergrid
