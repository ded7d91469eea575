#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "oscnet/netgraph/matrix.hpp"

namespace oscnet::microgrid {

/// Per-inverter droop and secondary-control parameters. Everything is per
/// unit unless a scenario says otherwise; omega0 = 1 pu nominal frequency.
struct InverterParams {
    double omega0 = 1.0;  // nominal frequency
    double V0 = 1.0;      // nominal voltage
    double m_p = 0.02;    // active-power droop coefficient
    double m_q = 0.05;    // reactive-power droop coefficient
    double P_star = 0.0;  // active-power setpoint
    double Q_star = 0.0;  // reactive-power setpoint
    double tau_p = 0.1;   // frequency droop/filter time constant
    double tau_q = 0.1;   // voltage droop/filter time constant
    double k_i = 1.0;     // secondary controller time constant
    double capacity = 1.0;

    void validate() const {
        if (m_p <= 0.0 || m_q <= 0.0)
            throw std::invalid_argument("InverterParams: droop gains must be > 0");
        if (tau_p <= 0.0 || tau_q <= 0.0)
            throw std::invalid_argument("InverterParams: time constants must be > 0");
        if (k_i <= 0.0) throw std::invalid_argument("InverterParams: k_i must be > 0");
    }
};

/// Line network between inverter buses: per-node voltage magnitudes and the
/// symmetric reactance matrix. X(i,j) == 0 means unconnected.
class LineNetwork {
  public:
    LineNetwork(std::vector<double> voltages, Matrix reactance);

    std::size_t size() const { return e_.size(); }
    double voltage(std::size_t i) const { return e_[i]; }
    double reactance(std::size_t i, std::size_t j) const { return x_(i, j); }
    bool connected(std::size_t i, std::size_t j) const { return x_(i, j) > 0.0; }

    /// X_i = 1 / sum_j X_ij^{-1} over connected neighbours.
    double shunt_reactance(std::size_t i) const;

    /// Two-bus network with common voltage magnitude.
    static LineNetwork two_bus(double x12, double e = 1.0);

  private:
    std::vector<double> e_;
    Matrix x_;
};

/// Network active/reactive power injections,
///   P_i = sum_j (E_i E_j / X_ij) sin(d_i - d_j)
///   Q_i = E_i^2 / X_i - sum_j (E_i E_j / X_ij) cos(d_i - d_j).
struct PowerFlow {
    std::vector<double> p;
    std::vector<double> q;
};
PowerFlow power_flow(std::span<const double> delta, const LineNetwork& net);

/// Active-power part only (cheaper inner loop for the frequency dynamics).
void power_flow_p(std::span<const double> delta, const LineNetwork& net, std::span<double> p_out);

/// Reduced droop dynamics, one inverter:
///   tau_p wdot = w0 - w - m_p (P - P*)
///   tau_q Vdot = V0 - V - m_q (Q - Q*)
double droop_omega_rate(double omega, double p_total, const InverterParams& inv);
double droop_voltage_rate(double v, double q_total, const InverterParams& inv);

/// Lure decomposition of the frequency-synchronization dynamics: the
/// normalized linear blocks (A with zero/identity blocks and a -I
/// frequency block, B = [0; I], C = [0 I]) plus the sector nonlinearity
/// phi_i(y) = m_p,i (P_i - P_i*).
struct LureForm {
    Matrix a;  // 2N x 2N
    Matrix b;  // 2N x N
    Matrix c;  // N x 2N
    /// phi evaluated from angles and per-node local loads.
    std::function<std::vector<double>(std::span<const double> delta,
                                      std::span<const double> local_load)>
        phi;
};
LureForm lure_decompose(const std::vector<InverterParams>& inverters, const LineNetwork& net);

/// Empirical sector of a scalar nonlinearity from trajectory samples:
/// min/max of the difference quotient over all sample pairs with distinct
/// inputs. For the microgrid sector the lower bound must be >= 0.
struct SectorBounds {
    double q = 0.0;
    double r = 0.0;
};
SectorBounds sector_bound_check(std::span<const double> y, std::span<const double> phi);

/// Fastness comparison of two controllers (percent):
///   (dapi - radapi) / dapi * 100. Rejects dapi <= 0.
double net_gain(double dapi_metric, double radapi_metric);

}  // namespace oscnet::microgrid
