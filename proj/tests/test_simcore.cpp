#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oscnet/simcore/integrate.hpp"
#include "oscnet/simcore/rng.hpp"
#include "oscnet/simcore/time_grid.hpp"
#include "oscnet/simcore/time_series.hpp"

using namespace oscnet;

namespace {

// Global RK4 error on xdot = -x over [0, 1].
double decay_error(double dt) {
    TimeGrid grid(0.0, dt, static_cast<std::size_t>(std::lround(1.0 / dt)));
    auto ts = integrate_rk4(
        [](double, std::span<const double> x, std::span<double> dx) { dx[0] = -x[0]; }, {1.0},
        grid);
    return std::abs(ts.channel(0).back() - std::exp(-1.0));
}

}  // namespace

TEST_CASE("rk4 exponential decay hits analytic solution") {
    CHECK(decay_error(0.01) < 1e-8);
}

TEST_CASE("rk4 is 4th order: halving dt cuts error ~16x and loglog slope is 4") {
    const double dts[] = {0.02, 0.01, 0.005, 0.0025};
    double err[4];
    for (int i = 0; i < 4; ++i) err[i] = decay_error(dts[i]);
    CHECK(err[0] / err[1] == doctest::Approx(16.0).epsilon(0.15));
    // slope of log(err) vs log(dt) across the whole range
    const double slope = std::log(err[0] / err[3]) / std::log(dts[0] / dts[3]);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("rk4 harmonic oscillator energy drift over one period") {
    const double w = 2.0 * 3.14159265358979323846;  // period 1
    TimeGrid grid(0.0, 1e-3, 1000);
    auto ts = integrate_rk4(
        [&](double, std::span<const double> x, std::span<double> dx) {
            dx[0] = x[1];
            dx[1] = -w * w * x[0];
        },
        {1.0, 0.0}, grid);
    const double e0 = 0.5 * w * w;  // energy of (1, 0)
    const double xe = ts.channel(0).back(), ve = ts.channel(1).back();
    const double e1 = 0.5 * ve * ve + 0.5 * w * w * xe * xe;
    CHECK(std::abs(e1 - e0) / e0 < 1e-6);
}

TEST_CASE("rk4 divergence aborts and flags the series") {
    TimeGrid grid(0.0, 0.1, 400);
    auto ts = integrate_rk4(
        [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0]; }, {1.0},
        grid);
    REQUIRE(ts.diverged_at.has_value());
    CHECK(*ts.diverged_at < 40.0);
    for (double v : ts.channel(0)) CHECK(std::isfinite(v));
}

TEST_CASE("hybrid relay switches within one step of threshold crossing") {
    // Ramp x(t) = t with a relay: s -> 1 when x > 1, s -> 0 when x < -1.
    TimeGrid grid(0.0, 0.01, 300);
    auto ts = step_hybrid(
        [](double, std::span<const double>, std::span<const double>, std::span<double> dx) {
            dx[0] = 1.0;
        },
        [](double, std::span<const double> x, std::span<double> s) {
            if (x[0] > 1.0) s[0] = 1.0;
            else if (x[0] < -1.0) s[0] = 0.0;
        },
        {0.0}, {0.0}, grid, {"x"}, {"s"});
    const auto& s = ts.channel("s");
    const auto& t = ts.times();
    std::size_t k = 0;
    while (k < s.size() && s[k] == 0.0) ++k;
    REQUIRE(k < s.size());
    CHECK(t[k] >= 1.0);
    CHECK(t[k] <= 1.0 + 2.0 * grid.dt);
}

TEST_CASE("hybrid chattering guard trips on zero-width band") {
    TimeGrid grid(0.0, 0.01, 100);
    CHECK_THROWS_AS(
        step_hybrid(
            [](double, std::span<const double>, std::span<const double> s, std::span<double> dx) {
                dx[0] = s[0] > 0.5 ? -1.0 : 1.0;
            },
            [](double, std::span<const double> x, std::span<double> s) {
                s[0] = x[0] > 0.0 ? 1.0 : 0.0;  // zero dead band
            },
            {0.0}, {0.0}, grid),
        ChatteringError);
}

TEST_CASE("gaussian sampling: degenerate sigma, determinism, CLT bound") {
    RngStream rng(42);
    CHECK(sample_gaussian(rng, 3.5, 0.0) == 3.5);

    RngStream a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(sample_gaussian(a, 0.0, 1.0) == sample_gaussian(b, 0.0, 1.0));

    // 1e6 draws from N(0, 1e-4) (variance convention): sample mean within
    // 3 * sigma / sqrt(n) = 3e-5 of zero.
    GaussianSpec spec{0.0, 1e-4, true};
    RngStream c(7);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_gaussian(c, spec);
    const double mean = sum / n;
    CHECK(std::abs(mean) < 3.0 * spec.stddev() / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("gaussian width convention flag") {
    GaussianSpec variance{0.0, 1e-4, true};
    GaussianSpec stddev{0.0, 1e-4, false};
    CHECK(variance.stddev() == doctest::Approx(1e-2));
    CHECK(stddev.stddev() == doctest::Approx(1e-4));
}

TEST_CASE("rng streams are reproducible and derivable") {
    RngStream a(123), b(123);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
    auto c = RngStream::derive(123, 0);
    auto d = RngStream::derive(123, 1);
    CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("settling time: constant, exponential decay, never settled") {
    TimeSeries ts;
    ts.add_channel("y");

    SUBCASE("constant series settles at t0") {
        for (int k = 0; k <= 10; ++k) ts.append(0.5 * k, {2.0});
        auto s = settling_time(ts, "y", 2.0, 0.1);
        REQUIRE(s.has_value());
        CHECK(*s == 0.0);
    }

    SUBCASE("exponential decay with band e^-3 settles near 3 time constants") {
        const double tau = 2.0, dt = 0.001;
        for (int k = 0; k <= 20000; ++k) {
            const double t = dt * k;
            ts.append(t, {std::exp(-t / tau)});
        }
        auto s = settling_time(ts, "y", 0.0, std::exp(-3.0));
        REQUIRE(s.has_value());
        CHECK(*s == doctest::Approx(3.0 * tau).epsilon(0.01));
    }

    SUBCASE("series ending outside band reports not settled") {
        for (int k = 0; k <= 10; ++k) ts.append(0.1 * k, {1.0});
        CHECK_FALSE(settling_time(ts, "y", 0.0, 0.5).has_value());
    }
}

TEST_CASE("time series CSV round trip is bit exact") {
    TimeSeries ts;
    ts.add_channel("a");
    ts.add_channel("b");
    RngStream rng(5);
    for (int k = 0; k < 50; ++k)
        ts.append(0.1 * k, {rng.next_double() * 1e6 - 5e5, sample_gaussian(rng, 0.0, 1.0)});
    std::ostringstream os;
    ts.write_csv(os);
    std::istringstream is(os.str());
    auto back = TimeSeries::read_csv(is);
    REQUIRE(back.size() == ts.size());
    REQUIRE(back.channel_names() == ts.channel_names());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        CHECK(back.times()[k] == ts.times()[k]);
        CHECK(back.channel("a")[k] == ts.channel("a")[k]);
        CHECK(back.channel("b")[k] == ts.channel("b")[k]);
    }
    // And the re-serialization is byte-identical.
    std::ostringstream os2;
    back.write_csv(os2);
    CHECK(os2.str() == os.str());
}

TEST_CASE("finite difference jacobian on a known system") {
    Rhs rhs = [](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = std::sin(x[1]);
        dx[1] = x[0] * x[1];
    };
    auto j = finite_difference_jacobian(rhs, 0.0, {0.7, -0.3});
    CHECK(j[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(j[1] == doctest::Approx(std::cos(-0.3)).epsilon(1e-8));
    CHECK(j[2] == doctest::Approx(-0.3).epsilon(1e-8));
    CHECK(j[3] == doctest::Approx(0.7).epsilon(1e-8));
}
