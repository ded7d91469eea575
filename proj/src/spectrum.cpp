#include "oscnet/analysis/spectrum.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace oscnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place.
void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

Spectrum fft_spectrum(std::span<const double> samples, std::size_t window, double sample_rate,
                      bool remove_mean) {
    if (window == 0) throw std::invalid_argument("fft_spectrum: window must be > 0");
    if (window > samples.size())
        throw std::invalid_argument("fft_spectrum: window longer than series");
    if (!(sample_rate > 0.0)) throw std::invalid_argument("fft_spectrum: bad sample rate");

    double mean = 0.0;
    if (remove_mean) {
        for (std::size_t i = 0; i < window; ++i) mean += samples[i];
        mean /= static_cast<double>(window);
    }

    Spectrum out;
    out.sample_rate = sample_rate;
    out.window = window;
    const std::size_t bins = window / 2 + 1;
    out.freq.resize(bins);
    out.magnitude.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        out.freq[k] = sample_rate * static_cast<double>(k) / static_cast<double>(window);

    if (is_pow2(window)) {
        std::vector<std::complex<double>> buf(window);
        for (std::size_t i = 0; i < window; ++i) buf[i] = samples[i] - mean;
        fft_pow2(buf);
        for (std::size_t k = 0; k < bins; ++k) out.magnitude[k] = std::abs(buf[k]);
        return out;
    }

    // Direct DFT for arbitrary window lengths; fine at the sizes used here.
    for (std::size_t k = 0; k < bins; ++k) {
        double re = 0.0, im = 0.0;
        const double w = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(window);
        for (std::size_t i = 0; i < window; ++i) {
            const double x = samples[i] - mean;
            re += x * std::cos(w * static_cast<double>(i));
            im += x * std::sin(w * static_cast<double>(i));
        }
        out.magnitude[k] = std::hypot(re, im);
    }
    return out;
}

double dominant_frequency(const Spectrum& s) {
    if (s.magnitude.size() < 2) throw std::invalid_argument("dominant_frequency: empty spectrum");
    std::size_t best = 1;
    for (std::size_t k = 2; k < s.magnitude.size(); ++k)
        if (s.magnitude[k] > s.magnitude[best]) best = k;
    if (s.magnitude[best] <= 0.0)
        throw std::invalid_argument("dominant_frequency: all-zero spectrum");

    double delta = 0.0;
    if (best > 0 && best + 1 < s.magnitude.size()) {
        const double ym = s.magnitude[best - 1];
        const double y0 = s.magnitude[best];
        const double yp = s.magnitude[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (std::abs(denom) > 1e-300) delta = 0.5 * (ym - yp) / denom;
        if (!(delta > -0.5 && delta < 0.5)) delta = 0.0;
    }
    return (static_cast<double>(best) + delta) * s.bin_width();
}

double wrap_angle(double a) {
    const double two_pi = 2.0 * kPi;
    double w = std::fmod(a, two_pi);
    if (w <= -kPi) w += two_pi;
    if (w > kPi) w -= two_pi;
    return w;
}

std::vector<CirclePoint> circle_snapshot(std::span<const double> phases) {
    std::vector<CirclePoint> pts;
    pts.reserve(phases.size());
    for (double p : phases) {
        if (!std::isfinite(p)) throw std::invalid_argument("circle_snapshot: non-finite phase");
        pts.push_back({std::cos(p), std::sin(p), wrap_angle(p)});
    }
    return pts;
}

void write_spectrum_csv(const Spectrum& s, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_spectrum_csv: cannot open " + path);
    os << "freq_hz,magnitude\n";
    char buf[80];
    for (std::size_t k = 0; k < s.freq.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.freq[k], s.magnitude[k]);
        os << buf;
    }
}

}  // namespace oscnet
