#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oscnet/netgraph/matrix.hpp"
#include "oscnet/simcore/time_grid.hpp"
#include "oscnet/simcore/time_series.hpp"

namespace oscnet::powergrid {

/// Generator constants of the swing model.
struct GeneratorParams {
    double inertia = 0.4;      // J, kg m^2
    double dissipation = 0.0;  // K_D, W s^2/rad^2
    double p_mech = 0.0;       // mechanical power input
    double voltage = 1.0;      // internal voltage E
    int area = 0;

    double damping() const { return 2.0 * dissipation / inertia; }  // alpha
};

/// Swing-to-Kuramoto mapping: alpha = 2 K_D / J, k_ij = E_i E_j |Y_ij| /
/// (J Omega), omega_i = (P_m,i - E_i^2 Re Y_ii) / (J Omega). `y_abs` holds
/// |Y_ij| off-diagonal and Re(Y_ii) on the diagonal.
struct KuramotoMapping {
    std::vector<double> omega;
    std::vector<double> alpha;
    Matrix k;
    /// min over connected pairs of k_ij - (w_max - w_min) n / (2 (n-1));
    /// nonnegative means every line clears the critical-coupling gate.
    double critical_coupling_margin = 0.0;
};
KuramotoMapping swing_to_kuramoto(const std::vector<GeneratorParams>& gens, const Matrix& y_abs,
                                  double grid_frequency);

/// Conformist-contrarian oscillator system: attractive coupling within an
/// area, repulsive across areas, applied to the magnitude matrix at
/// assembly.
struct CcSystem {
    std::vector<double> omega;  // natural frequencies, rad/s
    std::vector<double> alpha;  // damping per generator
    Matrix k;                   // coupling magnitudes, symmetric, zero diagonal
    std::vector<int> area;      // area labels
    bool conformist = false;    // true: ignore areas, all coupling attractive
    /// Extra factor on the repulsive cross-area terms. The benchmark
    /// two-area steady gaps are reproduced with 2 (the pair-gap reduction
    /// doubles the restoring term); 1 is the plain signed sum.
    double cross_gain = 1.0;

    std::size_t size() const { return omega.size(); }
    void validate() const;
    double sign(std::size_t i, std::size_t j) const {
        return (conformist || area[i] == area[j]) ? 1.0 : -cross_gain;
    }
};

/// ddot(delta)_i = omega_i - alpha_i ydot_i
///   + sum_{same area} k_ij sin(d_j - d_i) - sum_{other area} k_ij sin(d_j - d_i).
/// State layout [delta..., y...], y = delta rates.
void cc_kuramoto_rhs(std::span<const double> state, const CcSystem& sys,
                     std::span<double> dstate);

/// Analytic Jacobian of the full first-order system at `state`, 2n x 2n
/// row-major: [[0, I], [G, -diag(alpha)]].
Matrix cc_kuramoto_jacobian(std::span<const double> state, const CcSystem& sys);

/// Published two-area four-machine configurations. Case 1: no tie-line
/// transfer; Case 2: 400 MW transferred from area 1 to area 2.
CcSystem two_area_scenario(int case_id);

struct CcRunOptions {
    /// Initial angles: uniform perturbation of +-perturbation around 0 under
    /// the seed; rates start at 0.
    double perturbation = 0.1;
    std::uint64_t seed = 1;
    std::optional<std::vector<double>> delta0;
    std::optional<std::vector<double>> y0;
    std::size_t trace_limit = 100;
};

/// Integrate the CC system; channels delta_i, y_i (traced), r_global, plus
/// r_area_<label> and the wrapped inter-area gap for two-area systems.
TimeSeries simulate_cc(const CcSystem& sys, const TimeGrid& grid, const CcRunOptions& opts = {});

/// Energy bookkeeping of the pre-approximation swing balance.
double p_accumulated(double inertia, double theta_dot, double theta_ddot);
double p_dissipated(double k_d, double theta_dot);
double p_transmitted(double p_max, double phase_gap);
/// P_source from the balance (the pre-approximation identity).
double p_source_balance(double inertia, double k_d, double p_max, double theta_dot,
                        double theta_ddot, double phase_gap);

}  // namespace oscnet::powergrid
