#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qgol/grid.hpp"
#include "qgol/pattern.hpp"

namespace qgol {

// The 8 dihedral transforms as offset maps.
inline std::pair<int, int> dihedral_offset(int k, int dr, int dc) {
    switch (k & 7) {
        case 0: return {dr, dc};
        case 1: return {-dc, dr};   // rot90
        case 2: return {-dr, -dc};  // rot180
        case 3: return {dc, -dr};   // rot270
        case 4: return {dr, -dc};   // mirror cols
        case 5: return {-dr, dc};   // mirror rows
        case 6: return {dc, dr};    // transpose
        case 7: return {-dc, -dr};  // anti-transpose
    }
    return {dr, dc};
}

// Distinct symmetry variants of a pattern (symmetric patterns collapse).
inline std::vector<std::vector<PatternCell>> pattern_variants(const Pattern& p) {
    std::vector<std::vector<PatternCell>> out;
    std::set<std::vector<std::int64_t>> seen;
    for (int k = 0; k < 8; ++k) {
        std::vector<PatternCell> v;
        v.reserve(p.cells.size());
        for (const auto& c : p.cells) {
            auto [dr, dc] = dihedral_offset(k, c.dr, c.dc);
            v.push_back({dr, dc, c.a});
        }
        std::sort(v.begin(), v.end(), [](const PatternCell& x, const PatternCell& y) {
            return std::make_pair(x.dr, x.dc) < std::make_pair(y.dr, y.dc);
        });
        std::vector<std::int64_t> key;
        for (const auto& c : v) {
            key.push_back(c.dr);
            key.push_back(c.dc);
            key.push_back(c.wildcard() ? -1 : static_cast<std::int64_t>(std::llround(c.a * 1e9)));
        }
        if (seen.insert(key).second) out.push_back(std::move(v));
    }
    return out;
}

struct PatternMatch {
    int row = 0, col = 0;     // anchor
    double deviation = 0.0;   // max abs deviation over fixed-amplitude cells
};

namespace detail {

// Moore ring around the pattern's support, minus the pattern cells themselves.
inline std::vector<std::pair<int, int>> ring_offsets(const std::vector<PatternCell>& cells) {
    std::set<std::pair<int, int>> body, ring;
    for (const auto& c : cells) body.insert({c.dr, c.dc});
    for (const auto& c : cells)
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                std::pair<int, int> o{c.dr + dr, c.dc + dc};
                if (!body.count(o)) ring.insert(o);
            }
    return {ring.begin(), ring.end()};
}

template <typename T>
inline bool match_at(const Grid<T>& g, const std::vector<PatternCell>& cells,
                     const std::vector<std::pair<int, int>>& ring, int r, int c,
                     double tol, double& deviation) {
    double dev = 0.0;
    for (const auto& pc : cells) {
        const double v = static_cast<double>(g.at(r + pc.dr, c + pc.dc));
        if (pc.wildcard()) {
            if (v <= tol) return false;
        } else {
            const double d = std::abs(v - pc.a);
            if (d > tol) return false;
            if (d > dev) dev = d;
        }
    }
    for (const auto& o : ring)
        if (static_cast<double>(g.at(r + o.first, c + o.second)) > tol) return false;
    deviation = dev;
    return true;
}

} // namespace detail

// All anchors where the pattern (in any of its 8 orientations) matches within
// tolerance and is bordered by dead cells. One entry per anchor.
template <typename T>
inline std::vector<PatternMatch> match_pattern(const Grid<T>& g, const Pattern& p,
                                               Precision prec = Precision::binary64) {
    std::vector<PatternMatch> out;
    if (p.empty()) return out;
    const double tol = p.tolerance_for(prec);
    const auto variants = pattern_variants(p);
    std::vector<std::vector<std::pair<int, int>>> rings;
    rings.reserve(variants.size());
    for (const auto& v : variants) rings.push_back(detail::ring_offsets(v));

    for (int r = 0; r < g.height(); ++r)
        for (int c = 0; c < g.width(); ++c) {
            bool hit = false;
            double best = 0.0;
            for (std::size_t k = 0; k < variants.size(); ++k) {
                double dev;
                if (detail::match_at(g, variants[k], rings[k], r, c, tol, dev)) {
                    if (!hit || dev < best) best = dev;
                    hit = true;
                }
            }
            if (hit) out.push_back({r, c, best});
        }
    return out;
}

struct Component {
    std::vector<std::pair<int, int>> cells;
    std::vector<double> amplitudes;
    int r0 = 0, r1 = 0, c0 = 0, c1 = 0; // bounding box (unwrapped walk coords)
};

// 8-connected components of cells with a > live_epsilon, torus connectivity.
template <typename T>
inline std::vector<Component> connected_components(const Grid<T>& g, double live_epsilon) {
    if (live_epsilon <= 0.0) throw std::invalid_argument("connected_components: eps must be > 0");
    const int w = g.width(), h = g.height();
    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<Component> out;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            if (seen[i] || static_cast<double>(g.cell(r, c)) <= live_epsilon) continue;
            Component comp;
            comp.r0 = comp.r1 = r;
            comp.c0 = comp.c1 = c;
            std::vector<std::pair<int, int>> stack{{r, c}};
            seen[i] = 1;
            while (!stack.empty()) {
                auto [cr, cc] = stack.back();
                stack.pop_back();
                comp.cells.emplace_back(cr, cc);
                comp.amplitudes.push_back(static_cast<double>(g.at(cr, cc)));
                comp.r0 = std::min(comp.r0, cr); comp.r1 = std::max(comp.r1, cr);
                comp.c0 = std::min(comp.c0, cc); comp.c1 = std::max(comp.c1, cc);
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (!dr && !dc) continue;
                        // walk in unwrapped coordinates so boxes stay contiguous
                        const int nr = cr + dr, nc = cc + dc;
                        const std::size_t j =
                            static_cast<std::size_t>(g.wrap_row(nr)) * w + g.wrap_col(nc);
                        if (!seen[j] && static_cast<double>(g.amplitudes()[j]) > live_epsilon) {
                            seen[j] = 1;
                            stack.emplace_back(nr, nc);
                        }
                    }
            }
            out.push_back(std::move(comp));
        }
    return out;
}

struct Inventory {
    std::map<std::string, int> counts;
    int unknown = 0;

    bool operator==(const Inventory& o) const {
        return counts == o.counts && unknown == o.unknown;
    }
    bool has_catalog_match() const { return !counts.empty(); }
    int total() const {
        int t = unknown;
        for (const auto& [k, v] : counts) t += v;
        return t;
    }
    std::string brief() const {
        std::string s;
        for (const auto& [k, v] : counts) {
            if (!s.empty()) s += ";";
            s += k + ":" + std::to_string(v);
        }
        if (unknown) {
            if (!s.empty()) s += ";";
            s += "unknown:" + std::to_string(unknown);
        }
        return s.empty() ? "-" : s;
    }
};

// Match one component against the catalog; first hit claims, so exact
// classical shapes take precedence over the wildcard qutub. Empty string
// means no catalog pattern fits.
template <typename T>
inline std::string component_name(const Grid<T>& g, const Component& comp,
                                  const std::vector<Pattern>& catalog, Precision prec) {
    for (const auto& p : catalog) {
        const double tol = p.tolerance_for(prec);
        std::size_t live_cells = 0;
        for (const auto& c : p.cells)
            if (c.wildcard() || c.a > 0.0) ++live_cells;
        if (live_cells != comp.cells.size()) continue;
        const auto variants = pattern_variants(p);
        for (const auto& v : variants) {
            // anchor the variant so its live bounding box lands on the component's
            int vr0 = comp.r1, vc0 = comp.c1;
            bool first = true;
            for (const auto& c : v) {
                if (!c.wildcard() && c.a == 0.0) continue;
                if (first) { vr0 = c.dr; vc0 = c.dc; first = false; }
                vr0 = std::min(vr0, c.dr);
                vc0 = std::min(vc0, c.dc);
            }
            const int r = comp.r0 - vr0, c = comp.c0 - vc0;
            double dev;
            if (detail::match_at(g, v, detail::ring_offsets(v), r, c, tol, dev)) return p.name;
        }
    }
    return {};
}

// Catalog inventory over all connected components.
template <typename T>
inline Inventory take_inventory(const Grid<T>& g, const std::vector<Pattern>& catalog,
                                double live_epsilon, Precision prec) {
    Inventory inv;
    for (const auto& comp : connected_components(g, live_epsilon)) {
        const std::string nm = component_name(g, comp, catalog, prec);
        if (nm.empty()) inv.unknown += 1;
        else inv.counts[nm] += 1;
    }
    return inv;
}

} // namespace qgol
