#include "oscnet/microgrid/model.hpp"

#include <cmath>

namespace oscnet::microgrid {

LineNetwork::LineNetwork(std::vector<double> voltages, Matrix reactance)
    : e_(std::move(voltages)), x_(std::move(reactance)) {
    if (e_.empty()) throw std::invalid_argument("LineNetwork: empty");
    if (x_.rows() != e_.size() || x_.cols() != e_.size())
        throw std::invalid_argument("LineNetwork: reactance shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] <= 0.0) throw std::invalid_argument("LineNetwork: voltages must be > 0");
        if (x_(i, i) != 0.0) throw std::invalid_argument("LineNetwork: diagonal must be 0");
        for (std::size_t j = 0; j < e_.size(); ++j) {
            if (x_(i, j) < 0.0) throw std::invalid_argument("LineNetwork: X must be >= 0");
            if (x_(i, j) != x_(j, i)) throw std::invalid_argument("LineNetwork: X not symmetric");
        }
    }
}

double LineNetwork::shunt_reactance(std::size_t i) const {
    double inv_sum = 0.0;
    for (std::size_t j = 0; j < e_.size(); ++j)
        if (j != i && connected(i, j)) inv_sum += 1.0 / x_(i, j);
    if (inv_sum == 0.0) return 0.0;  // isolated bus: no shunt term
    return 1.0 / inv_sum;
}

LineNetwork LineNetwork::two_bus(double x12, double e) {
    Matrix x(2, 2);
    x(0, 1) = x(1, 0) = x12;
    return LineNetwork({e, e}, x);
}

void power_flow_p(std::span<const double> delta, const LineNetwork& net,
                  std::span<double> p_out) {
    const std::size_t n = net.size();
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !net.connected(i, j)) continue;
            p += net.voltage(i) * net.voltage(j) / net.reactance(i, j) *
                 std::sin(delta[i] - delta[j]);
        }
        p_out[i] = p;
    }
}

PowerFlow power_flow(std::span<const double> delta, const LineNetwork& net) {
    const std::size_t n = net.size();
    if (delta.size() != n) throw std::invalid_argument("power_flow: angle count mismatch");
    PowerFlow out;
    out.p.resize(n);
    out.q.resize(n);
    power_flow_p(delta, net, {out.p.data(), n});
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = net.shunt_reactance(i);
        double q = xi > 0.0 ? net.voltage(i) * net.voltage(i) / xi : 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !net.connected(i, j)) continue;
            q -= net.voltage(i) * net.voltage(j) / net.reactance(i, j) *
                 std::cos(delta[i] - delta[j]);
        }
        out.q[i] = q;
    }
    return out;
}

double droop_omega_rate(double omega, double p_total, const InverterParams& inv) {
    return (inv.omega0 - omega - inv.m_p * (p_total - inv.P_star)) / inv.tau_p;
}

double droop_voltage_rate(double v, double q_total, const InverterParams& inv) {
    return (inv.V0 - v - inv.m_q * (q_total - inv.Q_star)) / inv.tau_q;
}

LureForm lure_decompose(const std::vector<InverterParams>& inverters, const LineNetwork& net) {
    const std::size_t n = inverters.size();
    if (n == 0 || net.size() != n) throw std::invalid_argument("lure_decompose: size mismatch");
    LureForm out;
    out.a = Matrix(2 * n, 2 * n);
    out.b = Matrix(2 * n, n);
    out.c = Matrix(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.a(i, n + i) = 1.0;       // angle block feeds frequencies
        out.a(n + i, n + i) = -1.0;  // normalized frequency relaxation
        out.b(n + i, i) = 1.0;
        out.c(i, n + i) = 1.0;
    }
    std::vector<InverterParams> inv_copy = inverters;
    LineNetwork net_copy = net;
    out.phi = [inv_copy, net_copy](std::span<const double> delta,
                                   std::span<const double> local_load) {
        std::vector<double> p(delta.size());
        power_flow_p(delta, net_copy, {p.data(), p.size()});
        std::vector<double> phi(delta.size());
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const double load_i = i < local_load.size() ? local_load[i] : 0.0;
            phi[i] = inv_copy[i].m_p * (p[i] + load_i - inv_copy[i].P_star);
        }
        return phi;
    };
    return out;
}

SectorBounds sector_bound_check(std::span<const double> y, std::span<const double> phi) {
    if (y.size() != phi.size() || y.size() < 2)
        throw std::invalid_argument("sector_bound_check: need >= 2 sample pairs");
    bool any = false;
    SectorBounds out{0.0, 0.0};
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = i + 1; j < y.size(); ++j) {
            const double dy = y[j] - y[i];
            if (dy == 0.0) continue;
            const double quot = (phi[j] - phi[i]) / dy;
            if (!any) {
                out.q = out.r = quot;
                any = true;
            } else {
                out.q = std::min(out.q, quot);
                out.r = std::max(out.r, quot);
            }
        }
    }
    if (!any) throw std::invalid_argument("sector_bound_check: all sample inputs identical");
    return out;
}

double net_gain(double dapi_metric, double radapi_metric) {
    if (dapi_metric <= 0.0) throw std::invalid_argument("net_gain: dapi metric must be > 0");
    return (dapi_metric - radapi_metric) / dapi_metric * 100.0;
}

}  // namespace oscnet::microgrid
