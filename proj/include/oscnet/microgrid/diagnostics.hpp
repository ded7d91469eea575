#pragma once

#include <optional>
#include <vector>

#include "oscnet/microgrid/sim.hpp"

namespace oscnet::microgrid {

/// Storage-function decomposition evaluated along a recorded secondary-
/// control trajectory:
///   V = 1/4 sum_i xi_i' xi_i          (P = I),  xi_i = sum_j (x_i - x_j),
///                                      x_i = [delta_i; omega_i]
///   W = 1/4 sum_pairs chat_ij^2 / Gamma,  chat = c - c_star
///   U = 1/4 sum_i (du_i)^2,            du_i = sum_j (Omega_i - Omega_j)
///   Z = V + W + U, Zdot by central differences.
struct PassivityConfig {
    double gamma = 1.0;
    /// chat reference. The limit gain is not observable from the update law
    /// alone, so 0 is used for the monotonicity check and the fitted decay
    /// is reported separately.
    double c_star = 0.0;
    /// Windows to exclude from the non-increase verdict (load steps, fault
    /// intervals), each [t0, t1].
    std::vector<std::pair<double, double>> excluded_windows;
    double guard = 1.0;        // extra seconds excluded after each window
    double tolerance = 1e-6;   // finite-difference noise allowance on Zdot
};

struct PassivityReport {
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> w;
    std::vector<double> u;
    std::vector<double> z;
    std::vector<double> zdot;           // central differences
    bool z_nonincreasing = false;       // outside excluded windows
    double max_zdot_outside = 0.0;
    /// Exponential fit of the mean coupling gain after the last excluded
    /// window: c(t) ~ c_end + (c0 - c_end) exp(-rate t).
    double fitted_c_decay_rate = 0.0;
    double terminal_c = 0.0;
    /// Incremental-passivity sample check min over pairs of
    /// (y_b - y_a)(phi_b - phi_a) along the trajectory.
    double min_incremental_product = 0.0;
};

/// Evaluate the storage functions on a simulated run. The series must carry
/// delta_i / omega_i / Omega_i channels (and c_ij for adaptive runs).
PassivityReport passivity_diagnostics(const TimeSeries& series, std::size_t n_inverters,
                                      const PassivityConfig& cfg);

}  // namespace oscnet::microgrid
