#include "oscnet/simcore/time_series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oscnet {

void TimeSeries::reserve(std::size_t samples) {
    times_.reserve(samples);
    for (auto& c : channels_) c.reserve(samples);
}

void TimeSeries::add_channel(const std::string& name) {
    if (!times_.empty()) throw std::logic_error("TimeSeries: add channels before appending");
    if (index_.count(name)) throw std::invalid_argument("TimeSeries: duplicate channel " + name);
    index_[name] = names_.size();
    names_.push_back(name);
    channels_.emplace_back();
}

bool TimeSeries::has_channel(const std::string& name) const { return index_.count(name) > 0; }

void TimeSeries::append(double t, const std::vector<double>& values) {
    if (values.size() != channels_.size())
        throw std::invalid_argument("TimeSeries: sample width mismatch");
    times_.push_back(t);
    for (std::size_t i = 0; i < values.size(); ++i) channels_[i].push_back(values[i]);
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("TimeSeries: no channel " + name);
    return channels_[it->second];
}

double TimeSeries::dt() const {
    if (times_.size() < 2) throw std::logic_error("TimeSeries: need >= 2 samples for dt");
    return times_[1] - times_[0];
}

namespace {

void print_full(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

}  // namespace

void TimeSeries::write_csv(std::ostream& os) const {
    os << "time";
    for (const auto& n : names_) os << ',' << n;
    os << '\n';
    for (std::size_t k = 0; k < times_.size(); ++k) {
        print_full(os, times_[k]);
        for (const auto& c : channels_) {
            os << ',';
            print_full(os, c[k]);
        }
        os << '\n';
    }
}

void TimeSeries::write_csv_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("TimeSeries: cannot open " + path);
    write_csv(os);
}

TimeSeries TimeSeries::read_csv(std::istream& is) {
    TimeSeries out;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("TimeSeries: empty CSV");
    std::stringstream header(line);
    std::string cell;
    bool first = true;
    while (std::getline(header, cell, ',')) {
        if (first) {
            if (cell != "time") throw std::runtime_error("TimeSeries: CSV must start with time");
            first = false;
        } else {
            out.add_channel(cell);
        }
    }
    std::vector<double> row;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        row.clear();
        double t = 0.0;
        bool have_t = false;
        while (std::getline(ss, cell, ',')) {
            double v = std::strtod(cell.c_str(), nullptr);
            if (!have_t) {
                t = v;
                have_t = true;
            } else {
                row.push_back(v);
            }
        }
        out.append(t, row);
    }
    return out;
}

TimeSeries TimeSeries::read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("TimeSeries: cannot open " + path);
    return read_csv(is);
}

std::optional<double> settling_time(const std::vector<double>& times,
                                    const std::vector<double>& values, double target,
                                    double band, double t_from) {
    if (band <= 0.0) throw std::invalid_argument("settling_time: band must be > 0");
    if (times.size() != values.size() || times.empty())
        throw std::invalid_argument("settling_time: bad series");
    // Scan backwards for the last sample outside the band; the series is
    // settled from the next sample on.
    std::size_t first_ok = 0;
    for (std::size_t k = times.size(); k-- > 0;) {
        if (times[k] < t_from) break;
        if (std::abs(values[k] - target) > band) {
            first_ok = k + 1;
            break;
        }
        first_ok = k;
    }
    if (first_ok >= times.size()) return std::nullopt;
    if (times[first_ok] < t_from) return t_from;
    return times[first_ok];
}

std::optional<double> settling_time(const TimeSeries& series, const std::string& channel,
                                    double target, double band) {
    return settling_time(series.times(), series.channel(channel), target, band,
                         series.times().empty() ? 0.0 : series.times().front());
}

}  // namespace oscnet
