#include "oscnet/tcl/model.hpp"

namespace oscnet::tcl {

double natural_frequency(const TclParams& p) {
    p.validate();
    constexpr double pi = 3.14159265358979323846;
    const double off_num = p.T_a - p.t_min();
    const double off_den = p.T_a - p.t_max();
    const double on_num = p.t_max() - p.T_a + p.P * p.R;
    const double on_den = p.t_min() - p.T_a + p.P * p.R;
    if (off_num <= 0.0 || off_den <= 0.0)
        throw std::domain_error("natural_frequency: ambient must lie above the band");
    if (on_num <= 0.0 || on_den <= 0.0)
        throw std::domain_error("natural_frequency: P*R too small, unit cannot cool below band");
    const double ratio = (off_num * on_num) / (off_den * on_den);
    if (ratio <= 1.0) throw std::domain_error("natural_frequency: degenerate thermal regime");
    return 2.0 * pi / (p.R * p.C * std::log(ratio));
}

double omega_backsolve(double target_fft_omega, double coupling, std::span<const double> phis,
                       std::span<const double> alpha, std::size_t unit) {
    if (unit >= phis.size()) throw std::out_of_range("omega_backsolve: unit index");
    double interactions = 0.0;
    const double a_i = alpha.empty() ? 0.0 : alpha[unit];
    const double own = heaviside_sin(phis[unit] + a_i);
    for (std::size_t j = 0; j < phis.size(); ++j) {
        if (j == unit) continue;
        interactions += std::abs(heaviside_sin(phis[j]) - own);
    }
    return target_fft_omega - coupling * interactions;
}

Matrix averaging_weight_matrix(std::size_t n, double w) {
    if (n == 0) throw std::invalid_argument("averaging_weight_matrix: n must be >= 1");
    if (w < 0.0) throw std::invalid_argument("averaging_weight_matrix: w must be >= 0");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : w;
    return out;
}

double aggregate_power(std::span<const double> s, std::span<const TclParams> units) {
    if (s.size() != units.size()) throw std::invalid_argument("aggregate_power: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += units[i].P * units[i].eta * s[i];
    return sum;
}

}  // namespace oscnet::tcl
