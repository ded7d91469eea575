#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oscnet/analysis/spectrum.hpp"
#include "oscnet/powergrid/analysis.hpp"
#include "oscnet/powergrid/model.hpp"
#include "oscnet/powergrid/sweep.hpp"
#include "oscnet/simcore/integrate.hpp"
#include "oscnet/simcore/rng.hpp"

using namespace oscnet;
using namespace oscnet::powergrid;

namespace {
constexpr double kPi = 3.14159265358979323846;

CcSystem contrarian_pair(double k, double alpha = 0.2, double w = 1.0) {
    CcSystem sys;
    sys.omega = {w, w};
    sys.alpha = {alpha, alpha};
    sys.area = {1, 2};
    sys.k = Matrix(2, 2);
    sys.k(0, 1) = sys.k(1, 0) = k;
    return sys;
}

CcSystem conformist_pair(double k, double alpha = 0.2, double w = 1.0) {
    auto sys = contrarian_pair(k, alpha, w);
    sys.area = {1, 1};
    return sys;
}

}  // namespace

TEST_CASE("swing to kuramoto mapping formulas") {
    std::vector<GeneratorParams> gens(2);
    gens[0].inertia = gens[1].inertia = 0.4;
    gens[0].dissipation = gens[1].dissipation = 0.025;  // alpha = 0.125
    gens[0].p_mech = 8.0;
    gens[1].p_mech = 7.0;
    gens[0].voltage = 1.0;
    gens[1].voltage = 1.1;
    Matrix y(2, 2);
    y(0, 0) = 0.5;  // Re(Y_ii)
    y(1, 1) = 0.4;
    y(0, 1) = y(1, 0) = 2.0;  // |Y_12|
    const double grid_w = 1.0;
    auto map = swing_to_kuramoto(gens, y, grid_w);
    CHECK(map.alpha[0] == doctest::Approx(0.125));
    CHECK(map.omega[0] == doctest::Approx((8.0 - 1.0 * 0.5) / 0.4));
    CHECK(map.omega[1] == doctest::Approx((7.0 - 1.21 * 0.4) / 0.4));
    CHECK(map.k(0, 1) == doctest::Approx(1.0 * 1.1 * 2.0 / 0.4));
    CHECK(map.k(0, 1) == map.k(1, 0));

    Matrix y0(2, 2);
    auto map0 = swing_to_kuramoto(gens, y0, grid_w);
    CHECK(map0.k.max_abs() == 0.0);

    const double spread = std::abs(map.omega[0] - map.omega[1]);
    const double critical = spread * 2.0 / 2.0;
    CHECK(map.critical_coupling_margin == doctest::Approx(map.k(0, 1) - critical));

    gens[0].inertia = 0.0;
    CHECK_THROWS(swing_to_kuramoto(gens, y, grid_w));
}

TEST_CASE("cc kuramoto rhs: in-phase same-area fleet keeps zero relative drift") {
    CcSystem sys;
    sys.omega = {2.0, 2.0, 2.0};
    sys.alpha = {0.1, 0.1, 0.1};
    sys.area = {1, 1, 1};
    sys.k = Matrix(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) sys.k(i, j) = 1.0;
    std::vector<double> state{0.4, 0.4, 0.4, 1.0, 1.0, 1.0}, d(6);
    cc_kuramoto_rhs({state.data(), 6}, sys, {d.data(), 6});
    CHECK(d[0] == 1.0);
    for (int i = 3; i < 6; ++i) CHECK(d[i] == doctest::Approx(d[3]));
}

TEST_CASE("contrarian pair settles at the anti-phase gap") {
    auto sys = contrarian_pair(1.0, 0.3);
    TimeGrid grid(0.0, 0.01, 20000);
    CcRunOptions opts;
    opts.seed = 4;
    auto ts = simulate_cc(sys, grid, opts);
    const double gap =
        wrap_angle(ts.channel("delta_1").back() - ts.channel("delta_0").back());
    CHECK(std::abs(std::abs(gap) - kPi) < 1e-3);

    CHECK(pair_mode_curvature(1.0, kPi, true) < 0.0);
    CHECK(pair_mode_curvature(1.0, 0.0, true) > 0.0);
}

TEST_CASE("two-area scenarios carry the benchmark constants") {
    auto c1 = two_area_scenario(1);
    CHECK(c1.k(0, 1) == doctest::Approx(1.9689));
    CHECK(c1.k(2, 3) == doctest::Approx(1.9363));
    CHECK(c1.omega[0] == doctest::Approx(17.5290));
    auto c2 = two_area_scenario(2);
    CHECK(c2.omega[0] == doctest::Approx(16.8882));
    CHECK(c2.k(0, 1) == doctest::Approx(2.5960));
    for (auto sys : {c1, c2}) {
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(sys.k(i, i) == 0.0);
            for (std::size_t j = 0; j < 4; ++j) CHECK(sys.k(i, j) == sys.k(j, i));
        }
        CHECK(sys.alpha[0] == doctest::Approx(0.125));
    }
    CHECK_THROWS(two_area_scenario(3));
}

TEST_CASE("case 1 steady gaps match the benchmark interarea and intraarea values") {
    auto sys = two_area_scenario(1);
    TimeGrid grid(0.0, 0.01, 25000);
    CcRunOptions opts;
    opts.seed = 3;
    opts.delta0 = std::vector<double>{0.02, -0.01, kPi + 0.03, kPi - 0.02};
    auto ts = simulate_cc(sys, grid, opts);
    const auto& gap = ts.channel("interarea_gap");
    CHECK(std::abs(wrap_angle(gap.back() - (-3.12))) < 0.1);
    CHECK(std::abs(wrap_angle(ts.channel("delta_1").back() - ts.channel("delta_0").back()) -
                   0.06) < 0.1);
}

TEST_CASE("order parameter: bounds, degenerate cases, rotation invariance") {
    std::vector<double> same{0.7, 0.7, 0.7};
    CHECK(std::abs(order_parameter({same.data(), 3})) == doctest::Approx(1.0));

    std::vector<double> opposite{0.0, kPi};
    CHECK(std::abs(order_parameter({opposite.data(), 2})) < 1e-15);

    std::vector<double> uniform(8);
    for (int i = 0; i < 8; ++i) uniform[i] = 2.0 * kPi * i / 8.0;
    CHECK(std::abs(order_parameter({uniform.data(), 8})) < 1e-10);

    RngStream rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> phases(5);
        for (auto& p : phases) p = rng.uniform(-10.0, 10.0);
        const double r0 = std::abs(order_parameter({phases.data(), 5}));
        CHECK(r0 <= 1.0 + 1e-12);
        CHECK(r0 >= 0.0);
        const double shift = rng.uniform(0.0, 6.0);
        auto shifted = phases;
        for (auto& p : shifted) p += shift;
        CHECK(std::abs(order_parameter({shifted.data(), 5})) ==
              doctest::Approx(r0).epsilon(1e-12));
    }
}

TEST_CASE("group order parameters: pi-state, travelling wave, single area") {
    std::vector<double> phases{0.01, -0.02, 0.0, kPi + 0.015, kPi - 0.01, kPi};
    std::vector<int> areas{1, 1, 1, 2, 2, 2};
    auto g = group_order_parameters({phases.data(), 6}, {areas.data(), 6});
    REQUIRE(g.r.size() == 2);
    CHECK(std::abs(g.r[0]) > 0.99);
    CHECK(std::abs(g.r[1]) > 0.99);
    REQUIRE(g.gap.has_value());
    CHECK(std::abs(std::abs(*g.gap) - kPi) < 0.05);

    for (std::size_t i = 3; i < 6; ++i) phases[i] -= 1.2;
    g = group_order_parameters({phases.data(), 6}, {areas.data(), 6});
    CHECK(std::abs(*g.gap) < kPi - 0.5);
    CHECK(std::abs(g.r[1]) > 0.99);

    std::vector<int> one(6, 1);
    auto g1 = group_order_parameters({phases.data(), 6}, {one.data(), 6});
    CHECK(std::abs(g1.r[0]) ==
          doctest::Approx(std::abs(order_parameter({phases.data(), 6}))));
    CHECK_FALSE(g1.gap.has_value());
}

TEST_CASE("equilibrium solve: conformist pair family, residual contract, dedup") {
    auto sys = conformist_pair(1.5, 0.25, 2.0);
    std::vector<std::vector<double>> guesses{{0.0, 0.1}, {0.0, 3.0}, {0.0, 0.05}};
    auto eqs = equilibrium_solve(sys, guesses);
    std::size_t converged = 0;
    for (const auto& eq : eqs) {
        if (!eq.converged) continue;
        ++converged;
        CHECK(eq.residual < 1e-10);
        const double gap = std::abs(wrap_angle(eq.theta[1] - eq.theta[0]));
        CHECK((gap < 1e-8 || std::abs(gap - kPi) < 1e-8));
        CHECK(eq.drift == doctest::Approx(2.0 / 0.25));
    }
    CHECK(converged == 2);
}

TEST_CASE("case 1 equilibrium agrees with forward simulation") {
    auto sys = two_area_scenario(1);
    std::vector<double> guess{0.0, 0.0, kPi, kPi};
    auto eq = solve_equilibrium(sys, {guess.data(), 4});
    REQUIRE(eq.converged);
    CHECK(eq.residual < 1e-10);
    const double eq_gap = wrap_angle(0.5 * (eq.theta[2] + eq.theta[3]) -
                                     0.5 * (eq.theta[0] + eq.theta[1]));
    CHECK(std::abs(wrap_angle(eq_gap - (-3.1166))) < 0.01);

    auto cls = classify_fixed_point(sys, eq);
    CHECK(cls.verdict == Stability::stable);
    TimeGrid grid(0.0, 0.01, 15000);
    CcRunOptions opts;
    std::vector<double> d0 = eq.theta;
    for (auto& v : d0) v += 0.01;
    opts.delta0 = d0;
    opts.y0 = std::vector<double>(4, eq.drift);
    auto ts = simulate_cc(sys, grid, opts);
    for (std::size_t i = 1; i < 4; ++i) {
        const double settled = wrap_angle(ts.channel("delta_" + std::to_string(i)).back() -
                                          ts.channel("delta_0").back());
        CHECK(std::abs(wrap_angle(settled - eq.theta[i])) < 1e-4);
    }
}

TEST_CASE("classification trichotomy: conformist vs contrarian pair") {
    auto conf = conformist_pair(1.0, 0.3, 1.5);
    std::vector<double> in_phase{0.0, 0.0}, anti{0.0, kPi};
    auto eq_in = solve_equilibrium(conf, {in_phase.data(), 2});
    auto eq_anti = solve_equilibrium(conf, {anti.data(), 2});
    REQUIRE(eq_in.converged);
    REQUIRE(eq_anti.converged);
    CHECK(classify_fixed_point(conf, eq_in).verdict == Stability::stable);
    CHECK(classify_fixed_point(conf, eq_anti).verdict == Stability::unstable);

    auto cont = contrarian_pair(1.0, 0.3, 1.5);
    auto ceq_in = solve_equilibrium(cont, {in_phase.data(), 2});
    auto ceq_anti = solve_equilibrium(cont, {anti.data(), 2});
    REQUIRE(ceq_in.converged);
    REQUIRE(ceq_anti.converged);
    CHECK(classify_fixed_point(cont, ceq_in).verdict == Stability::unstable);
    CHECK(classify_fixed_point(cont, ceq_anti).verdict == Stability::stable);
}

TEST_CASE("pair-mode curvature trichotomy: opposite signs at 0 and pi, zero at pi/2") {
    const double k = 1.9689;
    const double at0 = pair_mode_curvature(k, 0.0);
    const double atPi = pair_mode_curvature(k, kPi);
    const double atHalf = pair_mode_curvature(k, kPi / 2.0);
    CHECK(at0 < 0.0);
    CHECK(atPi > 0.0);
    CHECK(at0 == doctest::Approx(-atPi));
    CHECK(std::abs(atHalf) < 1e-8);
}

TEST_CASE("analytic jacobian matches central finite differences") {
    auto sys = two_area_scenario(1);
    RngStream rng(17);
    Rhs rhs = [&](double, std::span<const double> s, std::span<double> d) {
        cc_kuramoto_rhs(s, sys, d);
    };
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> state(8);
        for (auto& v : state) v = rng.uniform(-2.0, 2.0);
        auto jac = cc_kuramoto_jacobian({state.data(), 8}, sys);
        auto fd = finite_difference_jacobian(rhs, 0.0, state);
        double worst = 0.0;
        for (std::size_t idx = 0; idx < fd.size(); ++idx) {
            const double a = jac.data()[idx];
            const double b = fd[idx];
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("area relabeling leaves the dynamics invariant") {
    auto sys = two_area_scenario(1);
    auto swapped = sys;
    for (auto& a : swapped.area) a = a == 1 ? 2 : 1;
    RngStream rng(23);
    std::vector<double> state(8), d1(8), d2(8);
    for (auto& v : state) v = rng.uniform(-3.0, 3.0);
    cc_kuramoto_rhs({state.data(), 8}, sys, {d1.data(), 8});
    cc_kuramoto_rhs({state.data(), 8}, swapped, {d2.data(), 8});
    for (std::size_t i = 0; i < 8; ++i) CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-15));
}

TEST_CASE("accel power: equilibrium zero, SMIB sink/source, drive sign") {
    auto sys = contrarian_pair(1.0, 0.25, 2.0);
    std::vector<double> anti{0.0, kPi};
    auto eq = solve_equilibrium(sys, {anti.data(), 2});
    REQUIRE(eq.converged);
    std::vector<double> y(2, eq.drift);
    auto drives = accel_power({eq.theta.data(), 2}, {y.data(), 2}, sys);
    for (double v : drives) CHECK(std::abs(v) < 1e-9);

    const double pm = 0.6, pmax = 1.0;
    auto roots = equal_area_roots(pm, pmax);
    CHECK(roots.sink == doctest::Approx(std::asin(pm / pmax)).epsilon(1e-8));
    CHECK(roots.source == doctest::Approx(kPi - std::asin(pm / pmax)).epsilon(1e-8));
    CHECK(pm - pmax * std::sin(roots.sink - 0.2) > 0.0);
    CHECK_THROWS(equal_area_roots(1.2, 1.0));
}

TEST_CASE("energy accounting of the pre-approximation balance") {
    const double J = 0.4, KD = 0.025, Pmax = 1.2, Psrc = 8.0;
    const double gap0 = 0.7;
    Rhs rhs = [&](double, std::span<const double> x, std::span<double> d) {
        const double tdot = x[1];
        d[0] = tdot;
        d[1] = (Psrc - KD * tdot * tdot + Pmax * std::sin(gap0)) / (J * std::max(tdot, 0.1));
    };
    TimeGrid grid(0.0, 1e-3, 5000);
    auto ts = integrate_rk4(rhs, {0.0, 5.0}, grid, {"theta", "theta_dot"});
    const auto& td = ts.channel("theta_dot");
    const double dt = grid.dt;
    for (std::size_t k = 1; k + 1 < ts.size(); k += 97) {
        const double tdot = td[k];
        const double tddot = (td[k + 1] - td[k - 1]) / (2.0 * dt);
        const double residual = p_source_balance(J, KD, Pmax, tdot, tddot, gap0) - Psrc;
        CHECK(std::abs(residual) < 1e-4);
    }
}

TEST_CASE("compass vectors: identical phases aligned, case 1 areas opposed") {
    auto sys = two_area_scenario(1);
    TimeGrid grid(0.0, 0.01, 10000);
    CcRunOptions opts;
    opts.seed = 3;
    opts.delta0 = std::vector<double>{0.02, -0.01, kPi + 0.03, kPi - 0.02};
    auto ts = simulate_cc(sys, grid, opts);
    auto vecs = compass_vectors(ts, sys);
    REQUIRE(vecs.size() == 4);
    for (const auto& v : vecs) CHECK(v.magnitude >= 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            CHECK(std::abs(wrap_angle(vecs[i].angle - vecs[j].angle)) > kPi / 2.0);

    CcSystem sync = sys;
    TimeGrid short_grid(0.0, 0.01, 100);
    CcRunOptions sync_opts;
    sync_opts.delta0 = std::vector<double>(4, 0.5);
    sync_opts.y0 = std::vector<double>(4, 0.0);
    sync.omega = {0.0, 0.0, 0.0, 0.0};
    sync.conformist = true;
    auto ts2 = simulate_cc(sync, short_grid, sync_opts);
    auto vecs2 = compass_vectors(ts2, sync);
    for (const auto& v : vecs2) {
        CHECK(v.magnitude < 1e-9);
        CHECK(std::abs(v.angle) < 1e-9);
    }
}

TEST_CASE("chimera detector: locked, chimera, incoherent branches") {
    CcSystem sys;
    sys.omega = {7.0, 7.0, 7.0, 7.0};
    sys.alpha.assign(4, 0.125);
    sys.area = {1, 1, 1, 2};
    sys.conformist = true;
    sys.k = Matrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) sys.k(i, j) = (i < 3 && j < 3) ? 1.95 : 0.2;
    TimeGrid grid(0.0, 0.01, 30000);
    CcRunOptions opts;
    opts.seed = 5;
    auto locked = simulate_cc(sys, grid, opts);
    CHECK(chimera_detect(locked, sys) == Regime::phase_locked);

    auto island = sys;
    island.omega[3] = 10.0;
    auto mid = simulate_cc(island, grid, opts);
    CHECK(chimera_detect(mid, island) == Regime::chimera);

    auto loose = sys;
    loose.omega = {3.0, 7.0, 11.0, 15.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) loose.k(i, j) = 0.05;
    auto wild = simulate_cc(loose, grid, opts);
    CHECK(chimera_detect(wild, loose) == Regime::incoherent);
}

TEST_CASE("pi-state demonstration scales to a population") {
    const std::size_t n = 120;
    CcSystem sys;
    sys.omega.resize(n);
    sys.alpha.assign(n, 0.125);
    sys.area.resize(n);
    sys.k = Matrix(n, n);
    RngStream rng(11);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        sys.area[i] = i < half ? 1 : 2;
        sys.omega[i] = sample_gaussian(rng, 7.0, 0.05);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v =
                (sys.area[i] == sys.area[j] ? 1.95 : 0.35) / static_cast<double>(half);
            sys.k(i, j) = sys.k(j, i) = v;
        }
    TimeGrid grid(0.0, 0.02, 3000);
    CcRunOptions opts;
    opts.seed = 11;
    std::vector<double> d0(n);
    for (std::size_t i = 0; i < n; ++i)
        d0[i] = (sys.area[i] == 2 ? kPi : 0.0) + rng.uniform(-0.5, 0.5);
    opts.delta0 = d0;
    opts.trace_limit = n;
    auto ts = simulate_cc(sys, grid, opts);
    REQUIRE_FALSE(ts.diverged_at.has_value());
    CHECK(ts.channel("r_area_1").back() > 0.99);
    CHECK(ts.channel("r_area_2").back() > 0.99);
    const double gap = ts.channel("interarea_gap").back();
    CHECK(std::abs(std::abs(gap) - kPi) < 0.1);
}

TEST_CASE("sweep machinery: apply value and point structure") {
    auto base = two_area_scenario(1);
    SweepSpec spec;
    spec.parameter = SweepParameter::interarea_coupling;
    auto sys = apply_sweep_value(base, spec, 0.3);
    CHECK(sys.k(0, 2) == doctest::Approx(0.3));
    CHECK(sys.k(0, 1) == doctest::Approx(1.9689));

    spec.parameter = SweepParameter::natural_frequency;
    spec.generator = 3;
    auto sys2 = apply_sweep_value(base, spec, 9.5);
    CHECK(sys2.omega[3] == doctest::Approx(9.5));
    CHECK(sys2.omega[0] == doctest::Approx(base.omega[0]));

    spec.parameter = SweepParameter::interarea_coupling;
    spec.from = 0.2;
    spec.to = 0.4;
    spec.resolution = 0.2;
    spec.sim_time = 60.0;
    spec.seed = 3;
    auto pts = bifurcation_sweep(base, spec);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK_FALSE(p.diverged);
        CHECK(p.r_area.size() == 2);
        CHECK(p.r_global >= 0.0);
        CHECK(p.r_global <= 1.0 + 1e-12);
    }
}
