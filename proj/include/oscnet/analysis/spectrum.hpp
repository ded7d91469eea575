#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace oscnet {

/// One-sided magnitude spectrum of a real signal. Magnitudes are raw |X_k|
/// for k = 0..window/2; Parseval's relation for this convention is
///   sum_k w_k |X_k|^2 = window * sum_n x_n^2
/// with w_k = 1 at DC and (for even windows) Nyquist, 2 elsewhere.
struct Spectrum {
    std::vector<double> freq;       // bin centers, cycles per time unit
    std::vector<double> magnitude;  // |X_k|
    double sample_rate = 0.0;       // samples per time unit
    std::size_t window = 0;

    double bin_width() const { return sample_rate / static_cast<double>(window); }
};

/// Magnitude spectrum of the first `window` samples (mean removed by
/// default, rectangular window). Any window length is accepted; power-of-two
/// lengths take the fast path.
Spectrum fft_spectrum(std::span<const double> samples, std::size_t window, double sample_rate,
                      bool remove_mean = true);

inline Spectrum fft_spectrum(const std::vector<double>& samples, std::size_t window,
                             double sample_rate, bool remove_mean = true) {
    return fft_spectrum(std::span<const double>(samples.data(), samples.size()), window,
                        sample_rate, remove_mean);
}

/// Frequency of the largest non-DC bin, refined by 3-point parabolic
/// interpolation on the neighbouring magnitudes. Throws on an all-zero
/// spectrum.
double dominant_frequency(const Spectrum& s);

/// Unit-circle snapshot of a phase vector: (cos, sin) pairs plus the phase
/// wrapped to (-pi, pi].
struct CirclePoint {
    double x = 0.0;
    double y = 0.0;
    double phase_wrapped = 0.0;
};

std::vector<CirclePoint> circle_snapshot(std::span<const double> phases);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// CSV export `freq_hz,magnitude`.
void write_spectrum_csv(const Spectrum& s, const std::string& path);

}  // namespace oscnet
