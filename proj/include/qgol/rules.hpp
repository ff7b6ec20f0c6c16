#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qgol/cell.hpp"

namespace qgol {

// Piecewise operator-mixing update rule. On neighborhood liveness A the cell
// state (a,b) is transformed by a nonnegative mixture of the raw operators
//
//   B: (a,b) -> (a+b, 0)     birth
//   D: (a,b) -> (0, a+b)     death
//   S: (a,b) -> (a, b)       survival
//
// and renormalized:
//
//   A <= b1        : D
//   b1 < A <= b2   : g*(b2-A)*D + (A-b1)*S
//   b2 < A <= b3   : g*(b3-A)*S + (A-b2)*B
//   b3 < A <= b4   : g*(b4-A)*B + (A-b3)*D
//   A > b4         : D
//
// With the default boundaries (1,2,3,4), integer A on binary cells leaves a
// single operator with unit weight, which is exactly Conway's transition
// table; g only shapes behavior at fractional A. Mixing weights are
// nonnegative on every segment because the boundaries are increasing.
struct RuleSet {
    double g = 2.414213562373095; // sqrt(2) + 1
    double b1 = 1.0, b2 = 2.0, b3 = 3.0, b4 = 4.0;

    // Conway on the neighbor count: live cell keeps living on 2 or 3
    // neighbors, a dead cell ignites on exactly 3.
    static bool classical_transition(bool alive, int neighbors) {
        return neighbors == 3 || (alive && neighbors == 2);
    }

    // 0: A<=b1, 1: (b1,b2], 2: (b2,b3], 3: (b3,b4], 4: A>b4.
    // Intervals half-open on the left, closed on the right.
    int segment(double A) const {
        if (A <= b1) return 0;
        if (A <= b2) return 1;
        if (A <= b3) return 2;
        if (A <= b4) return 3;
        return 4;
    }

    void validate() const; // throws std::invalid_argument
};

// One rule application in precision T. Arithmetic is written out exactly as
// executed: weight products and the final two-term sums each round once, and
// builds must keep FP contraction off so no fused ops sneak in.
template <typename T>
inline CellState<T> apply_rule(T a, T A, const RuleSet& rules) {
    const T g  = static_cast<T>(rules.g);
    const T b1 = static_cast<T>(rules.b1);
    const T b2 = static_cast<T>(rules.b2);
    const T b3 = static_cast<T>(rules.b3);
    const T b4 = static_cast<T>(rules.b4);

    if (A <= b1 || A > b4) return {T(0), T(1)};

    const T b = deadness(a);
    const T s = a + b;
    T raw_a, raw_b;
    if (A <= b2) {
        const T wd = g * (b2 - A);
        const T ws = A - b1;
        raw_a = ws * a;
        raw_b = wd * s + ws * b;
    } else if (A <= b3) {
        const T ws = g * (b3 - A);
        const T wb = A - b2;
        raw_a = ws * a + wb * s;
        raw_b = ws * b;
    } else {
        const T wb = g * (b4 - A);
        const T wd = A - b3;
        raw_a = wb * s;
        raw_b = wd * s;
    }
    return normalize(raw_a, raw_b);
}

inline void RuleSet::validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("RuleSet: g must be > 0");
    if (!(b1 < b2 && b2 < b3 && b3 < b4))
        throw std::invalid_argument("RuleSet: boundaries must be increasing");
    for (int n = 0; n <= 8; ++n) {
        const double A = n;
        const double live = apply_rule<double>(1.0, A, *this).a;
        const double dead = apply_rule<double>(0.0, A, *this).a;
        const double want_live = classical_transition(true, n) ? 1.0 : 0.0;
        const double want_dead = classical_transition(false, n) ? 1.0 : 0.0;
        if (live != want_live || dead != want_dead)
            throw std::invalid_argument(
                "RuleSet: classical transition not reproduced at A=" + std::to_string(n));
    }
}

} // namespace qgol
