#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qgol {

enum class Precision { binary32, binary64 };

// Order in which the 8 Moore-neighbor amplitudes are accumulated. Floating
// summation is not associative, so each order is a distinct (deterministic)
// arithmetic and the source of the symmetry-breaking experiments.
//
// rot_k rotates every offset of the canonical enumeration by k*90 degrees
// while keeping the enumeration sequence, so evolving a 90-degree-rotated
// grid under rot1 reproduces the canonical trajectory bit-exactly.
// Note reversed == rot2: reversing the canonical row-major list is the same
// sequence as rotating every offset by 180 degrees.
enum class SumOrder { canonical, reversed, rot1, rot2, rot3, tree };

inline std::string to_string(Precision p) {
    return p == Precision::binary32 ? "binary32" : "binary64";
}

inline std::string to_string(SumOrder o) {
    switch (o) {
        case SumOrder::canonical: return "canonical";
        case SumOrder::reversed:  return "reversed";
        case SumOrder::rot1:      return "rot1";
        case SumOrder::rot2:      return "rot2";
        case SumOrder::rot3:      return "rot3";
        case SumOrder::tree:      return "tree";
    }
    return "canonical";
}

inline Precision parse_precision(const std::string& s) {
    if (s == "binary32" || s == "float") return Precision::binary32;
    if (s == "binary64" || s == "double") return Precision::binary64;
    throw std::invalid_argument("unknown precision: " + s);
}

inline SumOrder parse_sum_order(const std::string& s) {
    if (s == "canonical") return SumOrder::canonical;
    if (s == "reversed")  return SumOrder::reversed;
    if (s == "rot1")      return SumOrder::rot1;
    if (s == "rot2")      return SumOrder::rot2;
    if (s == "rot3")      return SumOrder::rot3;
    if (s == "tree")      return SumOrder::tree;
    throw std::invalid_argument("unknown sum order: " + s);
}

struct NumericPolicy {
    Precision precision = Precision::binary32;
    SumOrder  sum_order = SumOrder::canonical;
};

template <typename T> constexpr Precision precision_of();
template <> constexpr Precision precision_of<float>() { return Precision::binary32; }
template <> constexpr Precision precision_of<double>() { return Precision::binary64; }

// Canonical Moore enumeration: row-major scan of the 3x3 block, center skipped.
inline constexpr std::array<std::array<int, 2>, 8> kCanonicalOffsets = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

constexpr std::array<int, 2> rotate_offset_ccw(std::array<int, 2> o, int k) {
    for (int i = 0; i < (k & 3); ++i) o = {-o[1], o[0]};
    return o;
}

// Accumulate the neighbor values fetched at canonical positions
// (nw,n,ne,w,e,sw,s,se) in the order the policy prescribes. tree is the
// balanced pairwise reduction over the canonical enumeration.
template <typename T>
inline T ordered_sum(SumOrder order, T nw, T n, T ne, T w, T e, T sw, T s, T se) {
    switch (order) {
        case SumOrder::canonical:
            return ((((((nw + n) + ne) + w) + e) + sw) + s) + se;
        case SumOrder::reversed:
        case SumOrder::rot2:
            return ((((((se + s) + sw) + e) + w) + ne) + n) + nw;
        case SumOrder::rot1:
            return ((((((sw + w) + nw) + s) + n) + se) + e) + ne;
        case SumOrder::rot3:
            return ((((((ne + e) + se) + n) + s) + nw) + w) + sw;
        case SumOrder::tree:
            return ((nw + n) + (ne + w)) + ((e + sw) + (s + se));
    }
    return T(0);
}

} // namespace qgol
