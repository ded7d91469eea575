#include "oscnet/powergrid/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "oscnet/analysis/spectrum.hpp"
#include "oscnet/simcore/integrate.hpp"
#include "oscnet/simcore/rng.hpp"

namespace oscnet::powergrid {

KuramotoMapping swing_to_kuramoto(const std::vector<GeneratorParams>& gens, const Matrix& y_abs,
                                  double grid_frequency) {
    const std::size_t n = gens.size();
    if (n == 0 || y_abs.rows() != n || y_abs.cols() != n)
        throw std::invalid_argument("swing_to_kuramoto: size mismatch");
    if (!(grid_frequency > 0.0))
        throw std::invalid_argument("swing_to_kuramoto: grid frequency must be > 0");
    KuramotoMapping out;
    out.omega.resize(n);
    out.alpha.resize(n);
    out.k = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gens[i].inertia <= 0.0)
            throw std::invalid_argument("swing_to_kuramoto: inertia must be > 0");
        const double jw = gens[i].inertia * grid_frequency;
        out.alpha[i] = gens[i].damping();
        out.omega[i] =
            (gens[i].p_mech - gens[i].voltage * gens[i].voltage * y_abs(i, i)) / jw;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            out.k(i, j) = gens[i].voltage * gens[j].voltage * y_abs(i, j) / jw;
        }
    }
    const double w_max = *std::max_element(out.omega.begin(), out.omega.end());
    const double w_min = *std::min_element(out.omega.begin(), out.omega.end());
    const double critical =
        (w_max - w_min) * static_cast<double>(n) / (2.0 * static_cast<double>(n - 1));
    double margin = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (out.k(i, j) == 0.0) continue;
            const double m = out.k(i, j) - critical;
            if (first || m < margin) {
                margin = m;
                first = false;
            }
        }
    out.critical_coupling_margin = margin;
    return out;
}

void CcSystem::validate() const {
    const std::size_t n = size();
    if (n == 0) throw std::invalid_argument("CcSystem: empty");
    if (alpha.size() != n || area.size() != n || k.rows() != n || k.cols() != n)
        throw std::invalid_argument("CcSystem: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (k(i, i) != 0.0) throw std::invalid_argument("CcSystem: k diagonal must be 0");
        for (std::size_t j = 0; j < n; ++j) {
            if (k(i, j) < 0.0) throw std::invalid_argument("CcSystem: k must be >= 0");
            if (k(i, j) != k(j, i)) throw std::invalid_argument("CcSystem: k not symmetric");
        }
    }
}

void cc_kuramoto_rhs(std::span<const double> state, const CcSystem& sys,
                     std::span<double> dstate) {
    const std::size_t n = sys.size();
    for (std::size_t i = 0; i < n; ++i) {
        dstate[i] = state[n + i];
        double accel = sys.omega[i] - sys.alpha[i] * state[n + i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double kij = sys.k(i, j);
            if (kij == 0.0) continue;
            accel += sys.sign(i, j) * kij * std::sin(state[j] - state[i]);
        }
        dstate[n + i] = accel;
    }
}

Matrix cc_kuramoto_jacobian(std::span<const double> state, const CcSystem& sys) {
    const std::size_t n = sys.size();
    Matrix jac(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        jac(i, n + i) = 1.0;
        jac(n + i, n + i) = -sys.alpha[i];
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double kij = sys.k(i, j);
            if (kij == 0.0) continue;
            const double g = sys.sign(i, j) * kij * std::cos(state[j] - state[i]);
            jac(n + i, j) = g;
            diag -= g;
        }
        jac(n + i, i) = diag;
    }
    return jac;
}

namespace {

// Reference coupling magnitudes of the two-area four-machine benchmark.
Matrix case1_matrix() {
    return Matrix{{0.0, 1.9689, 0.1766, 0.1782},
                  {1.9689, 0.0, 0.1782, 0.1801},
                  {0.1766, 0.1782, 0.0, 1.9363},
                  {0.1782, 0.1801, 1.9363, 0.0}};
}

Matrix case2_matrix() {
    return Matrix{{0.0, 2.5960, 0.2130, 0.2151},
                  {2.5960, 0.0, 0.2151, 0.2171},
                  {0.2130, 0.2151, 0.0, 1.7214},
                  {0.2151, 0.2171, 1.7214, 0.0}};
}

}  // namespace

CcSystem two_area_scenario(int case_id) {
    CcSystem sys;
    sys.area = {1, 1, 2, 2};
    sys.alpha.assign(4, 0.125);
    sys.cross_gain = 2.0;  // reproduces the benchmark steady gaps
    if (case_id == 1) {
        sys.k = case1_matrix();
        sys.omega = {17.5290, 17.7923, 17.5640, 17.8285};
    } else if (case_id == 2) {
        sys.k = case2_matrix();
        sys.omega = {16.8882, 17.1532, 17.7931, 18.0629};
    } else {
        throw std::invalid_argument("two_area_scenario: case must be 1 or 2");
    }
    sys.validate();
    return sys;
}

TimeSeries simulate_cc(const CcSystem& sys, const TimeGrid& grid, const CcRunOptions& opts) {
    sys.validate();
    const std::size_t n = sys.size();

    std::vector<double> x(2 * n, 0.0);
    if (opts.delta0) {
        if (opts.delta0->size() != n) throw std::invalid_argument("simulate_cc: delta0 size");
        std::copy(opts.delta0->begin(), opts.delta0->end(), x.begin());
    } else {
        RngStream rng(opts.seed);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = rng.uniform(-opts.perturbation, opts.perturbation);
    }
    if (opts.y0) {
        if (opts.y0->size() != n) throw std::invalid_argument("simulate_cc: y0 size");
        std::copy(opts.y0->begin(), opts.y0->end(), x.begin() + static_cast<long>(n));
    }

    // Distinct sorted area labels for the per-area channels.
    std::vector<int> labels = sys.area;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    TimeSeries ts;
    const std::size_t traced = std::min(n, opts.trace_limit);
    for (std::size_t i = 0; i < traced; ++i) ts.add_channel("delta_" + std::to_string(i));
    for (std::size_t i = 0; i < traced; ++i) ts.add_channel("y_" + std::to_string(i));
    ts.add_channel("r_global");
    for (int a : labels) ts.add_channel("r_area_" + std::to_string(a));
    if (labels.size() == 2) ts.add_channel("interarea_gap");
    ts.seed = opts.seed;
    ts.unit = TimeUnit::seconds;
    ts.reserve(grid.samples());

    Rhs rhs = [&sys](double, std::span<const double> s, std::span<double> d) {
        cc_kuramoto_rhs(s, sys, d);
    };

    std::vector<double> row;
    auto record = [&](double t, const std::vector<double>& s) {
        row.clear();
        for (std::size_t i = 0; i < traced; ++i) row.push_back(s[i]);
        for (std::size_t i = 0; i < traced; ++i) row.push_back(s[n + i]);
        std::complex<double> r_global(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            r_global += std::complex<double>(std::cos(s[i]), std::sin(s[i]));
        r_global /= static_cast<double>(n);
        row.push_back(std::abs(r_global));
        std::vector<std::complex<double>> r_area(labels.size(), {0.0, 0.0});
        std::vector<std::size_t> count(labels.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(
                std::find(labels.begin(), labels.end(), sys.area[i]) - labels.begin());
            r_area[a] += std::complex<double>(std::cos(s[i]), std::sin(s[i]));
            ++count[a];
        }
        for (std::size_t a = 0; a < labels.size(); ++a) {
            r_area[a] /= static_cast<double>(count[a]);
            row.push_back(std::abs(r_area[a]));
        }
        if (labels.size() == 2)
            row.push_back(wrap_angle(std::arg(r_area[1]) - std::arg(r_area[0])));
        ts.append(t, row);
    };

    record(grid.at(0), x);
    std::vector<double> work;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        rk4_step(rhs, grid.at(k), grid.dt, x, work);
        bool ok = true;
        for (double v : x)
            if (!std::isfinite(v) || std::abs(v) > 1e12) ok = false;
        if (!ok) {
            ts.diverged_at = grid.at(k + 1);
            break;
        }
        record(grid.at(k + 1), x);
    }
    return ts;
}

double p_accumulated(double inertia, double theta_dot, double theta_ddot) {
    return inertia * theta_dot * theta_ddot;  // 1/2 J d/dt(theta_dot^2)
}

double p_dissipated(double k_d, double theta_dot) { return k_d * theta_dot * theta_dot; }

double p_transmitted(double p_max, double phase_gap) { return -p_max * std::sin(phase_gap); }

double p_source_balance(double inertia, double k_d, double p_max, double theta_dot,
                        double theta_ddot, double phase_gap) {
    return p_accumulated(inertia, theta_dot, theta_ddot) + p_dissipated(k_d, theta_dot) +
           p_transmitted(p_max, phase_gap);
}

}  // namespace oscnet::powergrid
