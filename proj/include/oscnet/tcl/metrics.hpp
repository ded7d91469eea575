#pragma once

#include <span>
#include <vector>

namespace oscnet::tcl {

double rms(std::span<const double> x);
double mean(std::span<const double> x);
double peak_to_peak(std::span<const double> x);

/// View of the final `fraction` of a series (at least one sample).
std::span<const double> final_window(std::span<const double> x, double fraction);

/// Normalized power reduction (percent):
///   (P_rms_agg - P_rms_alpha) / P_rms_agg * 100.
double metric_p_norm(double p_rms_agg, double p_rms_alpha);

/// Fluctuation reduction (percent) on peak-to-peak ripple:
///   (P_random - P_desync) / P_random * 100.
double metric_p_red(double p_random_ripple, double p_desync_ripple);

/// Tracking error (percent) via trapezoidal quadrature:
///   sqrt( (1/T) int (P_ref - P_agg)^2 dt / P_base^2 ) * 100.
double metric_rmse(std::span<const double> p_ref, std::span<const double> p_agg, double dt,
                   double p_base);

/// Per-sample relative error (P_ref - P_agg) / P_ref * 100.
std::vector<double> metric_relative_error(std::span<const double> p_ref,
                                          std::span<const double> p_agg);

/// Steady-state summary of the relative error: max |value| over the final
/// 10% of the run.
double steady_state_relative_error(std::span<const double> p_ref,
                                   std::span<const double> p_agg);

/// Max deviation from the window mean as a percentage of that mean
/// (the "+/- x%" fluctuation band figure).
double fluctuation_band_percent(std::span<const double> x);

/// Trailing moving average over one switching period (window = period/dt
/// samples). Aggregate power seen by the grid at the cycle scale; switch-edge
/// flicker from near-simultaneous edges averages out. First window-1 samples
/// use the partial prefix.
std::vector<double> cycle_average(std::span<const double> x, double dt, double period);

}  // namespace oscnet::tcl
