#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <chunglu/distribution.hpp>

namespace chunglu {

// Shortest round-trip decimal form, so emitted tables are byte-stable and
// re-reading them loses nothing.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

namespace detail {
inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}
}  // namespace detail

// Degree-distribution file: header "degree,count", one row per class,
// degrees strictly ascending 1..m.
inline void write_distribution_csv(std::ostream& out, const DegreeDistribution& d) {
    out << "degree,count\n";
    for (std::size_t k = 1; k <= d.max_degree(); ++k)
        out << k << ',' << format_double(d.counts[k - 1]) << '\n';
}

inline void write_distribution_csv(const std::filesystem::path& path, const DegreeDistribution& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_distribution_csv(out, d);
}

// Raw count cells in file order; lets extended-precision callers parse the
// decimal strings themselves instead of going through double.
inline std::vector<std::string> read_distribution_csv_raw(std::istream& in,
                                                          const std::string& name = "<stream>") {
    std::string line;
    if (!std::getline(in, line) || detail::strip_cr(line) != "degree,count")
        throw std::runtime_error(name + ": expected header 'degree,count'");
    std::vector<std::string> counts;
    std::size_t expected_degree = 1;
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw std::runtime_error(name + ": malformed row '" + line + "'");
        std::size_t degree = 0;
        auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), degree);
        if (ec != std::errc() || p != cells[0].data() + cells[0].size())
            throw std::runtime_error(name + ": bad degree '" + cells[0] + "'");
        if (degree != expected_degree)
            throw std::runtime_error(name + ": degrees must ascend 1..m without gaps (saw " +
                                     cells[0] + ", expected " + std::to_string(expected_degree) + ")");
        ++expected_degree;
        counts.push_back(cells[1]);
    }
    if (counts.empty()) throw std::runtime_error(name + ": no degree classes");
    return counts;
}

inline DegreeDistribution read_distribution_csv(std::istream& in,
                                                const std::string& name = "<stream>") {
    auto raw = read_distribution_csv_raw(in, name);
    std::vector<double> counts(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
            counts[i] = std::stod(raw[i]);
        } catch (const std::exception&) {
            throw std::runtime_error(name + ": bad count '" + raw[i] + "'");
        }
    }
    return DegreeDistribution(std::move(counts));
}

inline DegreeDistribution read_distribution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return read_distribution_csv(in, path.string());
}

inline std::vector<std::string> read_distribution_csv_raw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return read_distribution_csv_raw(in, path.string());
}

}  // namespace chunglu
