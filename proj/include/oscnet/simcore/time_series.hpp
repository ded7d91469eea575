#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oscnet/simcore/time_grid.hpp"

namespace oscnet {

/// Uniformly sampled trajectory: a shared time axis plus named channels of
/// equal length, with enough metadata to reproduce the run that made it.
class TimeSeries {
  public:
    TimeSeries() = default;

    void reserve(std::size_t samples);

    /// Register a channel before any sample is appended.
    void add_channel(const std::string& name);
    bool has_channel(const std::string& name) const;

    /// Append one sample row; `values` must match the channel count and order.
    void append(double t, const std::vector<double>& values);

    const std::vector<double>& times() const { return times_; }
    const std::vector<std::string>& channel_names() const { return names_; }
    const std::vector<double>& channel(const std::string& name) const;
    const std::vector<double>& channel(std::size_t index) const { return channels_.at(index); }
    std::size_t channel_count() const { return names_.size(); }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }

    double dt() const;

    // Run provenance.
    std::uint64_t seed = 0;
    std::string scenario_id;
    TimeUnit unit = TimeUnit::seconds;

    /// Set when the integrator aborted on divergence; holds the abort time.
    std::optional<double> diverged_at;

    /// CSV with header `time,<channel>,...`, 17 significant digits, so a
    /// round trip through text reproduces every double bit-exactly.
    void write_csv(std::ostream& os) const;
    void write_csv_file(const std::string& path) const;
    static TimeSeries read_csv(std::istream& is);
    static TimeSeries read_csv_file(const std::string& path);

  private:
    std::vector<double> times_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> channels_;
    std::map<std::string, std::size_t> index_;
};

/// First time after which `channel` stays within +/-band of target for the
/// remainder of the series; nullopt when it never does ("not settled").
std::optional<double> settling_time(const TimeSeries& series, const std::string& channel,
                                    double target, double band);

/// Same test on an explicit (t, x) pair of arrays, measured from t_from.
std::optional<double> settling_time(const std::vector<double>& times,
                                    const std::vector<double>& values, double target,
                                    double band, double t_from = 0.0);

}  // namespace oscnet
