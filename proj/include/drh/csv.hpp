#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drh/errors.hpp"
#include "drh/grids.hpp"

namespace drh::csv {

/// Shortest round-trip-safe decimal: 17 significant digits.
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_comment(std::ostream& out, const std::string& key, const std::string& value) {
    if (value.find('\n') != std::string::npos) throw ArgumentError("CSV comment values must be single-line");
    out << "# " << key << ": " << value << '\n';
}

/// Comma-separated table: optional "# config: ..." comment, header row, one row per entry.
inline void write_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows, const std::string& config = {}) {
    if (!config.empty()) write_comment(out, "config", config);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw ArgumentError("CSV row width differs from header");
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
}

namespace detail {

template <class Grid>
void write_sampled(std::ostream& out, const Grid& grid, const std::vector<std::complex<double>>& values,
                   const std::string& config) {
    if (!config.empty()) write_comment(out, "config", config);
    write_comment(out, "interval", format_double(grid.lo()) + "," + format_double(grid.hi()));
    out << "node,value_re,value_im,weight\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_double(grid.nodes()[i]) << ',' << format_double(values[i].real()) << ','
            << format_double(values[i].imag()) << ',' << format_double(grid.weights()[i]) << '\n';
    }
}

struct SampledColumns {
    double lo = 0.0;
    double hi = 0.0;
    bool has_interval = false;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<std::complex<double>> values;
};

inline double parse_double(const std::string& field, std::size_t line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ArgumentError("CSV line " + std::to_string(line) + ": cannot parse '" + field + "'");
    }
}

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline SampledColumns read_sampled(std::istream& in) {
    SampledColumns out;
    std::string line;
    std::size_t number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string tag = "# interval: ";
            if (line.compare(0, tag.size(), tag) == 0) {
                const auto f = split(line.substr(tag.size()));
                if (f.size() != 2) throw ArgumentError("CSV interval comment must hold two values");
                out.lo = parse_double(f[0], number);
                out.hi = parse_double(f[1], number);
                out.has_interval = true;
            }
            continue;
        }
        if (!header_seen) {
            if (line != "node,value_re,value_im,weight") throw ArgumentError("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        const auto f = split(line);
        if (f.size() != 4) throw ArgumentError("CSV line " + std::to_string(number) + " must have 4 fields");
        out.nodes.push_back(parse_double(f[0], number));
        out.values.emplace_back(parse_double(f[1], number), parse_double(f[2], number));
        out.weights.push_back(parse_double(f[3], number));
    }
    if (!header_seen) throw ArgumentError("CSV input has no header row");
    if (out.nodes.empty()) throw ArgumentError("CSV input has no data rows");
    if (!out.has_interval) {
        out.lo = 0.0;
        out.hi = out.nodes.back();
    }
    return out;
}

}  // namespace detail

inline void write_spectrum(std::ostream& out, const Spectrum& spectrum, const std::string& config = {}) {
    detail::write_sampled(out, spectrum.grid, spectrum.values, config);
}

inline void write_profile(std::ostream& out, const RadialProfile& profile, const std::string& config = {}) {
    detail::write_sampled(out, profile.grid, profile.values, config);
}

inline Spectrum read_spectrum(std::istream& in) {
    auto c = detail::read_sampled(in);
    return Spectrum(SpectralGrid(std::move(c.nodes), std::move(c.weights), c.lo, c.hi), std::move(c.values));
}

inline RadialProfile read_profile(std::istream& in) {
    auto c = detail::read_sampled(in);
    return RadialProfile(RadialGrid(std::move(c.nodes), std::move(c.weights), c.lo, c.hi), std::move(c.values));
}

}  // namespace drh::csv
