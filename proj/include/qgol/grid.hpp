#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qgol/cell.hpp"

namespace qgol {

// 2-D torus of liveness amplitudes. Only a is stored; the deadness amplitude
// is derived (deadness(a)) wherever the update needs it.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T(0))
        : width_(width), height_(height), a_(static_cast<std::size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Grid: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::int64_t generation() const { return generation_; }
    void set_generation(std::int64_t g) { generation_ = g; }

    std::size_t size() const { return a_.size(); }

    // Torus wrap for any integer index.
    int wrap_row(int r) const { r %= height_; return r < 0 ? r + height_ : r; }
    int wrap_col(int c) const { c %= width_;  return c < 0 ? c + width_  : c; }

    T& at(int r, int c) { return a_[static_cast<std::size_t>(wrap_row(r)) * width_ + wrap_col(c)]; }
    T  at(int r, int c) const {
        return a_[static_cast<std::size_t>(wrap_row(r)) * width_ + wrap_col(c)];
    }

    // Unwrapped fast path; caller guarantees 0 <= r < height, 0 <= c < width.
    T  cell(int r, int c) const { return a_[static_cast<std::size_t>(r) * width_ + c]; }
    T& cell(int r, int c) { return a_[static_cast<std::size_t>(r) * width_ + c]; }

    const std::vector<T>& amplitudes() const { return a_; }
    std::vector<T>& amplitudes() { return a_; }

    bool same_cells(const Grid& o) const {
        return width_ == o.width_ && height_ == o.height_ && a_ == o.a_;
    }

    T max_amplitude() const {
        T m = T(0);
        for (T v : a_) if (v > m) m = v;
        return m;
    }

    std::size_t support_count(T eps) const {
        std::size_t n = 0;
        for (T v : a_) if (v > eps) ++n;
        return n;
    }

    // Every cell either 0 or 1 exactly.
    bool is_binary() const {
        for (T v : a_) if (v != T(0) && v != T(1)) return false;
        return true;
    }

private:
    int width_ = 0, height_ = 0;
    std::int64_t generation_ = 0;
    std::vector<T> a_;
};

} // namespace qgol
