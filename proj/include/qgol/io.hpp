#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "qgol/grid.hpp"
#include "qgol/policy.hpp"

namespace qgol {

struct ParseError : std::runtime_error {
    int line = 0, column = 0;
    ParseError(const std::string& what, int ln, int col = 1)
        : std::runtime_error(what + " (line " + std::to_string(ln) + ", column " +
                             std::to_string(col) + ")"),
          line(ln), column(col) {}
};

struct DimensionMismatchError : std::runtime_error {
    explicit DimensionMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Full round-trip decimal rendering: 9 significant digits for binary32,
// 17 for binary64.
inline std::string format_full(float v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}
inline std::string format_full(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

template <typename T>
inline T parse_real(const std::string& s, int line_no) {
    T v{};
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b != e && (*b == ' ' || *b == '\t')) ++b;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{})
        throw ParseError("bad number '" + s + "'", line_no);
    return v;
}

// Lossless text snapshot: header "width height generation precision", then
// one liveness amplitude per line, row-major, full decimal precision.
template <typename T>
inline void save_snapshot_text(const Grid<T>& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << g.width() << ' ' << g.height() << ' ' << g.generation() << ' '
        << to_string(precision_of<T>()) << '\n';
    for (T v : g.amplitudes()) out << format_full(v) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

template <typename T>
inline Grid<T> load_snapshot_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    std::istringstream hdr(line);
    int w = 0, h = 0;
    long long gen = 0;
    std::string prec;
    if (!(hdr >> w >> h >> gen >> prec)) throw ParseError("malformed header", 1);
    if (w <= 0 || h <= 0) throw ParseError("non-positive dimensions", 1);
    if (prec != to_string(precision_of<T>()))
        throw DimensionMismatchError("snapshot precision " + prec + " does not match loader");
    Grid<T> g(w, h);
    g.set_generation(gen);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError("truncated file: expected " + std::to_string(n) + " cells, got " +
                                 std::to_string(i),
                             static_cast<int>(i) + 2);
        const T v = parse_real<T>(line, static_cast<int>(i) + 2);
        if (!(v >= T(0) && v <= T(1)))
            throw ParseError("amplitude out of [0,1]", static_cast<int>(i) + 2);
        g.amplitudes()[i] = v;
    }
    return g;
}

// PGM snapshot, maxval 65535, pixel = round((1-a)*65535): dead renders white,
// fully live black. Display format only; quantization loses precision.
template <typename T>
inline void save_pgm(const Grid<T>& g, const std::string& path, bool binary_p5 = true) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const int maxval = 65535;
    out << (binary_p5 ? "P5" : "P2") << '\n' << g.width() << ' ' << g.height() << '\n'
        << maxval << '\n';
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
            double v = (1.0 - static_cast<double>(g.cell(r, c))) * maxval;
            long px = std::lround(v);
            if (px < 0) px = 0;
            if (px > maxval) px = maxval;
            if (binary_p5) {
                const unsigned char hi = static_cast<unsigned char>((px >> 8) & 0xFF);
                const unsigned char lo = static_cast<unsigned char>(px & 0xFF);
                out.put(static_cast<char>(hi)).put(static_cast<char>(lo));
            } else {
                out << px << (c + 1 < g.width() ? ' ' : '\n');
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace qgol
