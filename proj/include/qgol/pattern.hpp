#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgol/cell.hpp"
#include "qgol/grid.hpp"
#include "qgol/policy.hpp"

namespace qgol {

// One pattern cell relative to the anchor. a < 0 marks a wildcard: the cell
// must be live (above the matching epsilon) but its amplitude is free. a == 0
// cells assert deadness inside the pattern hull (e.g. the tub center).
struct PatternCell {
    int dr = 0, dc = 0;
    double a = 1.0;

    bool wildcard() const { return a < 0.0; }
};

struct Pattern {
    std::string name;
    std::vector<PatternCell> cells;
    double match_tolerance = -1.0; // < 0: per-precision default

    double tolerance_for(Precision p) const {
        if (match_tolerance >= 0.0) return match_tolerance;
        return p == Precision::binary32 ? 1e-5 : 1e-10;
    }

    bool empty() const { return cells.empty(); }

    void validate() const {
        std::vector<std::pair<int, int>> seen;
        for (const auto& c : cells) {
            if (!c.wildcard() && (c.a < 0.0 || c.a > 1.0))
                throw std::invalid_argument("Pattern " + name + ": amplitude out of [0,1]");
            seen.emplace_back(c.dr, c.dc);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("Pattern " + name + ": duplicate cell offsets");
    }
};

// The four part-live cells of a qutub in the tub layout: a1 north, a2 west,
// a3 east, a4 south around a dead center.
struct QutubSpec {
    double a1 = 0.5, a2 = 0.5, a3 = 0.5, a4 = 0.5;
};

inline Pattern make_qutub(const QutubSpec& q) {
    for (double v : {q.a1, q.a2, q.a3, q.a4})
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("make_qutub: amplitude out of [0,1]");
    Pattern p;
    p.name = "qutub";
    p.cells = {{-1, 0, q.a1}, {0, -1, q.a2}, {0, 1, q.a3}, {1, 0, q.a4}, {0, 0, 0.0}};
    return p;
}

// Overwrites exactly the listed cells (torus wrap applies); a==0 entries
// force the cell dead.
template <typename T>
inline void stamp(Grid<T>& g, const Pattern& p, int row, int col) {
    for (const auto& c : p.cells) {
        if (c.wildcard())
            throw std::invalid_argument("stamp: pattern has wildcard amplitudes");
        g.at(row + c.dr, col + c.dc) = static_cast<T>(c.a);
    }
}

// Built-in catalog. Order matters for inventories: exact classical shapes
// are claimed before the wildcard qutub template.
inline std::vector<Pattern> builtin_catalog() {
    std::vector<Pattern> cat;
    cat.push_back({"block", {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}, -1.0});
    cat.push_back({"tub", {{-1, 0, 1}, {0, -1, 1}, {0, 1, 1}, {1, 0, 1}, {0, 0, 0}}, -1.0});
    cat.push_back({"blinker", {{0, -1, 1}, {0, 0, 1}, {0, 1, 1}}, -1.0});
    cat.push_back({"qutub", {{-1, 0, -1}, {0, -1, -1}, {0, 1, -1}, {1, 0, -1}, {0, 0, 0}}, -1.0});
    return cat;
}

inline nlohmann::json pattern_to_json(const Pattern& p) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : p.cells) {
        nlohmann::json amp;
        if (c.wildcard()) amp = nullptr;
        else amp = c.a;
        cells.push_back(nlohmann::json::array({c.dr, c.dc, amp}));
    }
    nlohmann::json j{{"name", p.name}, {"cells", cells}};
    if (p.match_tolerance >= 0.0) j["tolerance"] = p.match_tolerance;
    return j;
}

inline Pattern pattern_from_json(const nlohmann::json& j) {
    Pattern p;
    p.name = j.at("name").get<std::string>();
    if (j.contains("tolerance")) p.match_tolerance = j.at("tolerance").get<double>();
    for (const auto& e : j.at("cells")) {
        PatternCell c;
        c.dr = e.at(0).get<int>();
        c.dc = e.at(1).get<int>();
        c.a = e.at(2).is_null() ? -1.0 : e.at(2).get<double>();
        p.cells.push_back(c);
    }
    p.validate();
    return p;
}

} // namespace qgol
