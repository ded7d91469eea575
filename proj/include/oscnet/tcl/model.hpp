#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "oscnet/netgraph/matrix.hpp"

namespace oscnet::tcl {

/// Thermal and switching parameters of one thermostatically controlled load
/// (a cooling unit: ON drives the internal temperature toward T_a - P*R).
struct TclParams {
    double T_a = 32.0;      // ambient temperature, degC
    double deadband = 0.5;  // thermostat dead band, degC
    double R = 2.0;         // thermal resistance, degC/kW
    double C = 10.0;        // thermal capacitance, kWh/degC
    double P = 14.0;        // ON-state energy transfer rate, kW
    double eta = 1.0;       // performance ratio in (0, 1]
    double T_s = 20.0;      // set point, degC
    double duty = 0.43;     // commanded duty cycle in (0, 1)
    double omega = 0.0;     // switching frequency, rad per time unit (phase model)
                            // or cycles per time unit (averaging model)

    double t_min() const { return T_s - 0.5 * deadband; }
    double t_max() const { return T_s + 0.5 * deadband; }

    void validate() const {
        if (R <= 0.0 || C <= 0.0 || P <= 0.0)
            throw std::invalid_argument("TclParams: R, C, P must be > 0");
        if (deadband < 0.0) throw std::invalid_argument("TclParams: deadband must be >= 0");
        if (!(duty > 0.0 && duty < 1.0))
            throw std::invalid_argument("TclParams: duty must be in (0, 1)");
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::invalid_argument("TclParams: eta must be in (0, 1]");
    }
};

/// dT/dt of the hybrid model: -(1/RC) [T - T_a + s P R]. Time unit is hours
/// when C is in kWh/degC and the run is in hours.
inline double hybrid_temperature_rate(double T, double s, const TclParams& p) {
    return -(1.0 / (p.R * p.C)) * (T - p.T_a + s * p.P * p.R);
}

/// Thermostat rule: OFF below T_min, ON above T_max, hold inside the band.
inline double hybrid_switch(double T, double s, const TclParams& p) {
    if (T < p.t_min()) return 0.0;
    if (T > p.t_max()) return 1.0;
    return s;
}

/// Unit step: 1 if x >= 0 else 0.
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

/// Theta[sin(x)]: the Boolean square wave the phase models switch on.
inline double heaviside_sin(double x) { return heaviside(std::sin(x)); }

/// Heaviside bias that makes the fraction of a cycle with sin(phi) >= s0
/// equal the requested duty: s0 = sin[(pi - T_on)/2], T_on = 2*pi*duty.
/// The bias sets the duty cycle; it is not a control input.
inline double duty_bias(double duty) {
    if (!(duty > 0.0 && duty < 1.0)) {
        if (duty == 1.0) return -1.0;  // limit case: always ON
        if (duty == 0.0) return 1.0;
        throw std::invalid_argument("duty_bias: duty must be in (0, 1)");
    }
    constexpr double pi = 3.14159265358979323846;
    const double t_on = 2.0 * pi * duty;
    return std::sin(0.5 * (pi - t_on));
}

/// Natural switching frequency of the hybrid model (rad per time unit),
///   omega = 2*pi / ( R C ln[ (T_a-T_min)(T_max-T_a+PR) /
///                            ((T_a-T_max)(T_min-T_a+PR)) ] ).
/// Throws when the thermal regime cannot cycle (log argument <= 0, e.g.
/// P R too small to cool below the band).
double natural_frequency(const TclParams& p);

/// Switching-frequency backsolve, omega_i = omega_fft - K * sum_j |Theta[
/// sin(phi_j)] - Theta[sin(phi_i + alpha_i)]|, evaluated on a phase
/// snapshot. No correction for the interaction nonlinearity at large fleet
/// sizes is applied; callers should compare the achieved FFT peak against
/// the target to observe the discrepancy.
double omega_backsolve(double target_fft_omega, double coupling, std::span<const double> phis,
                       std::span<const double> alpha, std::size_t unit);

/// All-to-all averaging communication matrix W = w * (ones - I).
Matrix averaging_weight_matrix(std::size_t n, double w);

/// Aggregate power sum_j P_j eta_j s_j over binary switch states.
double aggregate_power(std::span<const double> s, std::span<const TclParams> units);

}  // namespace oscnet::tcl
