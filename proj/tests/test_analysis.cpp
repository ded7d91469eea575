#include <cmath>
#include <vector>

#include "doctest.h"
#include "oscnet/analysis/spectrum.hpp"

using namespace oscnet;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> sine(double f, double fs, std::size_t n, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * kPi * f * i / fs + phase);
    return x;
}
}  // namespace

TEST_CASE("pure sine concentrates in one bin") {
    const double fs = 32.0;
    auto x = sine(4.0, fs, 1024);
    auto s = fft_spectrum(x, 1024, fs);
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.magnitude.size(); ++k)
        if (s.magnitude[k] > s.magnitude[best]) best = k;
    CHECK(std::abs(s.freq[best] - 4.0) <= s.bin_width());
}

TEST_CASE("DC signal vanishes after mean removal") {
    std::vector<double> x(512, 3.25);
    auto s = fft_spectrum(x, 512, 1.0);
    for (double m : s.magnitude) CHECK(m < 1e-10);
}

TEST_CASE("43% duty square wave has fundamental plus odd-harmonic-rich tail") {
    // Rectangular pulse train duty d: Fourier magnitude of harmonic k is
    // proportional to |sin(pi k d)| / k (independent oracle).
    const double fs = 256.0, f0 = 2.0, d = 0.43;
    const std::size_t n = 4096;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = std::fmod(f0 * i / fs, 1.0);
        x[i] = ph < d ? 1.0 : 0.0;
    }
    auto s = fft_spectrum(x, n, fs);
    const std::size_t bin0 = static_cast<std::size_t>(f0 * n / fs);
    // fundamental dominates
    std::size_t best = 1;
    for (std::size_t k = 2; k < s.magnitude.size(); ++k)
        if (s.magnitude[k] > s.magnitude[best]) best = k;
    CHECK(best == bin0);
    // harmonic ladder matches the analytic envelope on the first 5 harmonics
    const double base = s.magnitude[bin0];
    for (int k = 2; k <= 5; ++k) {
        const double expected = std::abs(std::sin(kPi * k * d)) / k /
                                (std::abs(std::sin(kPi * d)) / 1.0);
        const double measured = s.magnitude[bin0 * k] / base;
        CHECK(measured == doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("parseval consistency") {
    auto x = sine(3.7, 64.0, 2048, 0.6);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.3 * std::sin(2.0 * kPi * 11.1 * i / 64.0);
    auto s = fft_spectrum(x, 2048, 64.0, false);
    double energy = 0.0;
    for (double v : x) energy += v * v;
    double spec = s.magnitude[0] * s.magnitude[0];
    for (std::size_t k = 1; k + 1 < s.magnitude.size(); ++k)
        spec += 2.0 * s.magnitude[k] * s.magnitude[k];
    spec += s.magnitude.back() * s.magnitude.back();  // Nyquist (even window)
    spec /= static_cast<double>(s.window);
    CHECK(spec == doctest::Approx(energy).epsilon(1e-8));
}

TEST_CASE("dominant frequency: interpolated sine, two tones, degenerate input") {
    const double fs = 16.0;
    auto x = sine(0.342 * fs / 16.0 * 16.0, fs, 4096);  // 0.342 Hz at fs=16
    auto s = fft_spectrum(sine(0.342, fs, 4096), 4096, fs);
    CHECK(dominant_frequency(s) == doctest::Approx(0.342).epsilon(0.02));

    auto two = sine(2.0, fs, 4096);
    for (std::size_t i = 0; i < two.size(); ++i) two[i] += 0.4 * std::sin(2.0 * kPi * 5.0 * i / fs);
    CHECK(dominant_frequency(fft_spectrum(two, 4096, fs)) == doctest::Approx(2.0).epsilon(0.02));

    std::vector<double> flat(128, 0.0);
    CHECK_THROWS(dominant_frequency(fft_spectrum(flat, 128, 1.0)));
}

TEST_CASE("dominant frequency exact to half bin + interpolation error") {
    const double fs = 10.0;
    // Off-bin frequency to exercise the parabolic refinement.
    const double f0 = 1.2345;
    auto s = fft_spectrum(sine(f0, fs, 2000), 2000, fs);
    CHECK(std::abs(dominant_frequency(s) - f0) < 0.02 * f0 + 0.5 * s.bin_width());
}

TEST_CASE("non-power-of-two windows work (direct DFT path)") {
    const double fs = 12.0;
    auto s = fft_spectrum(sine(3.0, fs, 600), 600, fs);
    CHECK(dominant_frequency(s) == doctest::Approx(3.0).epsilon(0.01));
    CHECK_THROWS(fft_spectrum(sine(3.0, fs, 600), 601, fs));  // window > series
}

TEST_CASE("circle snapshot: axis points, square vertices, wrapping") {
    std::vector<double> ph{0.0};
    auto p = circle_snapshot(std::span<const double>(ph.data(), 1));
    CHECK(p[0].x == doctest::Approx(1.0));
    CHECK(p[0].y == doctest::Approx(0.0));

    std::vector<double> sq{0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
    auto pts = circle_snapshot(std::span<const double>(sq.data(), 4));
    CHECK(pts[1].x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pts[1].y == doctest::Approx(1.0));
    CHECK(pts[2].x == doctest::Approx(-1.0));
    CHECK(pts[3].phase_wrapped == doctest::Approx(-kPi / 2.0));

    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.1 - 8.0 * kPi) == doctest::Approx(0.1));
}
