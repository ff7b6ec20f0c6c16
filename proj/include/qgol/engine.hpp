#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qgol/grid.hpp"
#include "qgol/policy.hpp"
#include "qgol/rng.hpp"
#include "qgol/rules.hpp"

namespace qgol {

struct NonBinaryInputError : std::invalid_argument {
    NonBinaryInputError() : std::invalid_argument("classical_step: grid is not binary") {}
};

// Sum of the 8 Moore-neighbor amplitudes, accumulated in the exact order the
// policy prescribes. Result is in [0, 8].
template <typename T>
inline T neighborhood_liveness(const Grid<T>& g, int r, int c, SumOrder order) {
    const int rm = g.wrap_row(r - 1), rp = g.wrap_row(r + 1), rr = g.wrap_row(r);
    const int cm = g.wrap_col(c - 1), cp = g.wrap_col(c + 1), cc = g.wrap_col(c);
    return ordered_sum(order,
                       g.cell(rm, cm), g.cell(rm, cc), g.cell(rm, cp),
                       g.cell(rr, cm), g.cell(rr, cp),
                       g.cell(rp, cm), g.cell(rp, cc), g.cell(rp, cp));
}

// Per-step observables, gathered during the write loop so classification
// does not need extra full-grid passes. Cells outside the recomputed region
// are exactly dead and unchanged, so region totals are grid totals.
template <typename T>
struct StepStats {
    double mean_sum = 0.0;     // sum of new amplitudes
    T max_a = T(0);            // max new amplitude
    T max_delta = T(0);        // max |new - old|
    std::size_t support = 0;   // cells with a > analysis_epsilon
};

// Synchronous stepper with reusable scratch buffer. All reads target the
// previous generation, so row-partitioned threads produce bit-identical
// results to the serial loop.
//
// Cells whose whole neighborhood is dead map to the death operator and stay
// exactly (0,1); the stepper therefore only recomputes the bounding box of
// the live support expanded by one ring, which is what makes point-seeded
// sweep runs cheap. The box collapses to the full grid as soon as the
// support touches the torus seam.
template <typename T>
class Engine {
public:
    explicit Engine(RuleSet rules = {}, SumOrder order = SumOrder::canonical, int threads = 1)
        : rules_(rules), order_(order), threads_(threads < 1 ? 1 : threads) {}

    const RuleSet& rules() const { return rules_; }
    SumOrder order() const { return order_; }

    void set_analysis_epsilon(double eps) { analysis_eps_ = eps; }

    void step(Grid<T>& g, StepStats<T>* stats = nullptr) {
        const int w = g.width(), h = g.height();
        scratch_.assign(g.amplitudes().begin(), g.amplitudes().end());

        int r0 = 0, r1 = h - 1, c0 = 0, c1 = w - 1;
        bool any_support = support_box(g, r0, r1, c0, c1);
        if (!any_support) {
            g.set_generation(g.generation() + 1);
            if (stats) *stats = {};
            return; // dead universe is a fixed point
        }
        // expand by one ring; fall back to full span at the seam
        if (r0 == 0 || r1 == h - 1) { r0 = 0; r1 = h - 1; } else { --r0; ++r1; }
        if (c0 == 0 || c1 == w - 1) { c0 = 0; c1 = w - 1; } else { --c0; ++c1; }

        const int rows = r1 - r0 + 1;
        const int nt = std::min(threads_, rows);
        StepStats<T> total;
        if (nt <= 1) {
            total = update_rows(g, r0, r1, c0, c1);
        } else {
            std::vector<std::thread> pool;
            std::vector<StepStats<T>> parts(static_cast<std::size_t>(nt));
            pool.reserve(nt);
            for (int t = 0; t < nt; ++t) {
                const int a = r0 + static_cast<int>(static_cast<long long>(rows) * t / nt);
                const int b = r0 + static_cast<int>(static_cast<long long>(rows) * (t + 1) / nt) - 1;
                StepStats<T>* part = &parts[static_cast<std::size_t>(t)];
                pool.emplace_back([this, &g, a, b, c0, c1, part] {
                    *part = update_rows(g, a, b, c0, c1);
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& p : parts) {
                total.mean_sum += p.mean_sum;
                total.support += p.support;
                total.max_a = std::max(total.max_a, p.max_a);
                total.max_delta = std::max(total.max_delta, p.max_delta);
            }
        }

        g.amplitudes().swap(scratch_);
        g.set_generation(g.generation() + 1);
        if (stats) *stats = total;
    }

private:
    StepStats<T> update_rows(const Grid<T>& g, int r0, int r1, int c0, int c1) {
        StepStats<T> st;
        const int w = g.width();
        const T eps = static_cast<T>(analysis_eps_);
        const T* base = g.amplitudes().data();
        for (int r = r0; r <= r1; ++r) {
            const T* up  = base + static_cast<std::size_t>(g.wrap_row(r - 1)) * w;
            const T* mid = base + static_cast<std::size_t>(r) * w;
            const T* dn  = base + static_cast<std::size_t>(g.wrap_row(r + 1)) * w;
            T* out = scratch_.data() + static_cast<std::size_t>(r) * w;
            for (int c = c0; c <= c1; ++c) {
                const int cm = (c == 0) ? w - 1 : c - 1;
                const int cp = (c == w - 1) ? 0 : c + 1;
                const T A = ordered_sum(order_, up[cm], up[c], up[cp],
                                        mid[cm], mid[cp], dn[cm], dn[c], dn[cp]);
                const T v = apply_rule(mid[c], A, rules_).a;
                out[c] = v;
                st.mean_sum += static_cast<double>(v);
                if (v > st.max_a) st.max_a = v;
                if (v > eps) ++st.support;
                const T d = v > mid[c] ? v - mid[c] : mid[c] - v;
                if (d > st.max_delta) st.max_delta = d;
            }
        }
        return st;
    }

    static bool support_box(const Grid<T>& g, int& r0, int& r1, int& c0, int& c1) {
        const int w = g.width(), h = g.height();
        r0 = h; r1 = -1; c0 = w; c1 = -1;
        for (int r = 0; r < h; ++r) {
            const T* row = g.amplitudes().data() + static_cast<std::size_t>(r) * w;
            for (int c = 0; c < w; ++c) {
                if (row[c] > T(0)) {
                    if (r < r0) r0 = r;
                    r1 = r;
                    if (c < c0) c0 = c;
                    if (c > c1) c1 = c;
                }
            }
        }
        return r1 >= 0;
    }

    RuleSet rules_;
    SumOrder order_;
    int threads_;
    double analysis_eps_ = 1e-6;
    std::vector<T> scratch_;
};

// Functional one-shot step.
template <typename T>
inline Grid<T> step(const Grid<T>& g, const RuleSet& rules = {},
                    SumOrder order = SumOrder::canonical, int threads = 1) {
    Grid<T> out = g;
    Engine<T> eng(rules, order, threads);
    eng.step(out);
    return out;
}

// Integer-arithmetic Conway oracle. Input must be exactly binary.
template <typename T>
inline Grid<T> classical_step(const Grid<T>& g) {
    if (!g.is_binary()) throw NonBinaryInputError{};
    const int w = g.width(), h = g.height();
    Grid<T> out(w, h);
    for (int r = 0; r < h; ++r) {
        const int rm = g.wrap_row(r - 1), rp = g.wrap_row(r + 1);
        for (int c = 0; c < w; ++c) {
            const int cm = g.wrap_col(c - 1), cp = g.wrap_col(c + 1);
            const int n = (g.cell(rm, cm) == T(1)) + (g.cell(rm, c) == T(1)) +
                          (g.cell(rm, cp) == T(1)) + (g.cell(r, cm) == T(1)) +
                          (g.cell(r, cp) == T(1)) + (g.cell(rp, cm) == T(1)) +
                          (g.cell(rp, c) == T(1)) + (g.cell(rp, cp) == T(1));
            out.cell(r, c) = RuleSet::classical_transition(g.cell(r, c) == T(1), n) ? T(1) : T(0);
        }
    }
    out.set_generation(g.generation() + 1);
    return out;
}

// Random seeding: floor(f*N) distinct cells drawn without replacement get a
// liveness uniform in [0,1); everything else stays dead. Identical seed,
// identical grid, on any platform.
template <typename T>
inline Grid<T> seed_random(int width, int height, double f, std::uint64_t rng_seed) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("seed_random: f must be in [0,1]");
    Grid<T> g(width, height);
    const std::uint64_t n = static_cast<std::uint64_t>(width) * height;
    const std::uint64_t k = static_cast<std::uint64_t>(std::floor(f * static_cast<double>(n)));
    SplitMix64 rng(rng_seed);
    const std::vector<std::uint64_t> cells = rng.sample_without_replacement(n, k);
    for (std::uint64_t idx : cells) g.amplitudes()[idx] = rng.real<T>();
    return g;
}

} // namespace qgol
