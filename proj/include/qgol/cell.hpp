#pragma once

#include <cmath>
#include <stdexcept>

namespace qgol {

// One qubit-valued cell: a is the liveness amplitude, b the deadness
// amplitude. Both real and nonnegative, a^2 + b^2 = 1 up to rounding.
template <typename T>
struct CellState {
    T a;
    T b;
};

struct ZeroVectorError : std::logic_error {
    ZeroVectorError() : std::logic_error("normalize: zero amplitude vector") {}
};

// Normalize raw nonnegative amplitudes onto the unit circle. Pure axis
// vectors map to exact basis states so that classical trajectories stay
// bit-exact through this path (sqrt(x*x) is not guaranteed to equal x).
template <typename T>
inline CellState<T> normalize(T x, T y) {
    if (x == T(0) && y == T(0)) throw ZeroVectorError{};
    if (x == T(0)) return {T(0), T(1)};
    if (y == T(0)) return {T(1), T(0)};
    const T n = std::sqrt(x * x + y * y);
    return {x / n, y / n};
}

// Deadness amplitude recovered from liveness; the grid stores only a.
template <typename T>
inline T deadness(T a) {
    const T one = T(1);
    if (a >= one) return T(0);
    if (a <= T(0)) return one;
    return std::sqrt(one - a * a);
}

} // namespace qgol
