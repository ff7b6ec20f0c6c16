#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgol/engine.hpp"
#include "qgol/grid.hpp"
#include "qgol/match.hpp"
#include "qgol/pattern.hpp"

namespace qgol {

// Spatial mean of the liveness field, accumulated in double, row-major.
template <typename T>
inline double mean_liveness(const Grid<T>& g) {
    double s = 0.0;
    for (T v : g.amplitudes()) s += static_cast<double>(v);
    return s / static_cast<double>(g.size());
}

// First index g such that the least-squares slope of series[g, g+window) is
// within slope_tol. The plateau detector for "reached dynamic equilibrium".
inline std::optional<std::size_t> detect_equilibrium(const std::vector<double>& series,
                                                     std::size_t window, double slope_tol) {
    if (window < 10) throw std::invalid_argument("detect_equilibrium: window must be >= 10");
    if (series.size() < window) return std::nullopt;
    const double n = static_cast<double>(window);
    const double sx = n * (n - 1.0) / 2.0;
    const double sxx = (n - 1.0) * n * (2.0 * n - 1.0) / 6.0;
    const double denom = n * sxx - sx * sx;
    for (std::size_t g = 0; g + window <= series.size(); ++g) {
        double sy = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < window; ++i) {
            sy += series[g + i];
            sxy += static_cast<double>(i) * series[g + i];
        }
        const double slope = (n * sxy - sx * sy) / denom;
        if (std::isfinite(slope) && std::abs(slope) <= slope_tol) return g;
    }
    return std::nullopt;
}

struct TooFewSamplesError : std::invalid_argument {
    TooFewSamplesError() : std::invalid_argument("gaussian_fit: need at least 30 samples") {}
};

struct GaussianFit {
    double mu = 0.0;
    double sigma = 0.0;
    double max_cdf_deviation = 0.0; // empirical CDF vs fitted normal
};

inline double normal_cdf(double x, double mu, double sigma) {
    if (sigma <= 0.0) return x < mu ? 0.0 : 1.0;
    return 0.5 * (1.0 + std::erf((x - mu) / (sigma * std::sqrt(2.0))));
}

inline GaussianFit gaussian_fit(std::vector<double> samples) {
    if (samples.size() < 30) throw TooFewSamplesError{};
    const double n = static_cast<double>(samples.size());
    double mu = 0.0;
    for (double v : samples) mu += v;
    mu /= n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mu) * (v - mu);
    const double sigma = std::sqrt(ss / (n - 1.0));
    std::sort(samples.begin(), samples.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf(samples[i], mu, sigma);
        dev = std::max(dev, std::abs(f - static_cast<double>(i) / n));
        dev = std::max(dev, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return {mu, sigma, dev};
}

struct EquilibriumStats {
    double mean_liveness = 0.0;
    double std_liveness = 0.0;
    std::size_t n_generations = 0;
    double max_cdf_deviation = 0.0;
    std::vector<double> histogram_edges;
    std::vector<std::size_t> histogram_counts;
};

inline EquilibriumStats equilibrium_stats(const std::vector<double>& window_means, int bins = 40) {
    EquilibriumStats st;
    st.n_generations = window_means.size();
    if (window_means.empty()) return st;
    const GaussianFit fit = window_means.size() >= 30
                                ? gaussian_fit(window_means)
                                : GaussianFit{window_means[0], 0.0, 0.0};
    st.mean_liveness = fit.mu;
    st.std_liveness = fit.sigma;
    st.max_cdf_deviation = fit.max_cdf_deviation;
    const auto [lo_it, hi_it] = std::minmax_element(window_means.begin(), window_means.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi <= lo) hi = lo + 1e-12;
    st.histogram_counts.assign(bins, 0);
    for (int i = 0; i <= bins; ++i)
        st.histogram_edges.push_back(lo + (hi - lo) * i / bins);
    for (double v : window_means) {
        int k = static_cast<int>((v - lo) / (hi - lo) * bins);
        if (k == bins) k = bins - 1;
        st.histogram_counts[static_cast<std::size_t>(k)]++;
    }
    return st;
}

// Support-box digest of the amplitude field quantized at `resolution`.
// Cells outside the support box are exactly dead, so two grids of equal
// dimensions with equal digests agree everywhere (up to quantization).
template <typename T>
inline std::uint64_t grid_digest(const Grid<T>& g, double resolution = 1e-6) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    int r0 = g.height(), r1 = -1, c0 = g.width(), c1 = -1;
    for (int r = 0; r < g.height(); ++r)
        for (int c = 0; c < g.width(); ++c)
            if (g.cell(r, c) > T(0)) {
                r0 = std::min(r0, r); r1 = std::max(r1, r);
                c0 = std::min(c0, c); c1 = std::max(c1, c);
            }
    if (r1 < 0) return h; // empty grid: fixed digest
    mix(static_cast<std::uint64_t>(r0));
    mix(static_cast<std::uint64_t>(c0));
    mix(static_cast<std::uint64_t>(r1 - r0 + 1));
    mix(static_cast<std::uint64_t>(c1 - c0 + 1));
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) {
            const double q = std::nearbyint(static_cast<double>(g.cell(r, c)) / resolution);
            mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(q)));
        }
    return h;
}

// Smallest period 2 <= p <= cap such that the last 3p digests are p-periodic.
// A 1-periodic (constant) tail is a still life, not an oscillator.
inline std::optional<int> detect_period(const std::vector<std::uint64_t>& digests, int cap) {
    const std::size_t n = digests.size();
    for (int p = 2; p <= cap; ++p) {
        const std::size_t need = 3 * static_cast<std::size_t>(p);
        if (n < need) break;
        bool ok = true;
        for (std::size_t k = 0; k < 2 * static_cast<std::size_t>(p) && ok; ++k)
            if (digests[n - 1 - k] != digests[n - 1 - k - p]) ok = false;
        if (!ok) continue;
        bool constant = true;
        for (std::size_t k = 1; k < need && constant; ++k)
            if (digests[n - 1] != digests[n - 1 - k]) constant = false;
        if (constant) return std::nullopt;
        return p;
    }
    return std::nullopt;
}

enum class OutcomeTag { Dead, StillLife, Oscillator, LivenessCloud, Lifeforms, Unresolved };

inline std::string to_string(OutcomeTag t) {
    switch (t) {
        case OutcomeTag::Dead:          return "Dead";
        case OutcomeTag::StillLife:     return "StillLife";
        case OutcomeTag::Oscillator:    return "Oscillator";
        case OutcomeTag::LivenessCloud: return "LivenessCloud";
        case OutcomeTag::Lifeforms:     return "Lifeforms";
        case OutcomeTag::Unresolved:    return "Unresolved";
    }
    return "Unresolved";
}

struct Transient {
    std::string name;
    std::int64_t first_generation = 0;
    std::int64_t generations = 0;
};

// Terminal classification of a run. `transients` lists catalog structures
// that persisted for at least transient_min_gens and vanished again before
// the run resolved; when nonempty the record reads as TransientThen(final).
struct Outcome {
    OutcomeTag tag = OutcomeTag::Unresolved;
    std::int64_t generations = 0;
    int period = 0;
    Inventory inventory;
    EquilibriumStats cloud_stats;
    std::string reason;
    std::vector<Transient> transients;

    bool is_transient_then() const { return !transients.empty(); }
};

inline nlohmann::json inventory_to_json(const Inventory& inv) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : inv.counts) j[k] = v;
    if (inv.unknown) j["unknown"] = inv.unknown;
    return j;
}

inline nlohmann::json outcome_to_json(const Outcome& o) {
    nlohmann::json fin{{"tag", to_string(o.tag)}, {"generations", o.generations}};
    switch (o.tag) {
        case OutcomeTag::Oscillator:
            fin["period"] = o.period;
            fin["inventory"] = inventory_to_json(o.inventory);
            break;
        case OutcomeTag::StillLife:
        case OutcomeTag::Lifeforms:
            fin["inventory"] = inventory_to_json(o.inventory);
            break;
        case OutcomeTag::LivenessCloud:
            fin["stats"] = {{"mean", o.cloud_stats.mean_liveness},
                            {"sigma", o.cloud_stats.std_liveness},
                            {"window", o.cloud_stats.n_generations},
                            {"max_cdf_deviation", o.cloud_stats.max_cdf_deviation}};
            break;
        case OutcomeTag::Unresolved:
            fin["reason"] = o.reason;
            break;
        default: break;
    }
    if (!o.is_transient_then()) return fin;
    nlohmann::json tr = nlohmann::json::array();
    for (const auto& t : o.transients)
        tr.push_back({{"name", t.name},
                      {"first_generation", t.first_generation},
                      {"generations", t.generations}});
    return nlohmann::json{{"tag", "TransientThen"}, {"transients", tr}, {"final", fin}};
}

struct ClassifyLimits {
    std::int64_t max_generations = 2000;
    double dead_epsilon = 1e-6;
    double still_tol = -1.0; // < 0: 1e-6 binary32, 1e-12 binary64
    int confirm_window = 32;
    int history_period_cap = 64;
    double cloud_fraction = 0.30;
    int cloud_window = 256;
    double cloud_mean = 0.3480;     // universal constants for the default rules
    double cloud_sigma100 = 0.0071; // sigma of spatial means on a 100x100 grid
    double cloud_band_k = 3.0;
    double live_epsilon = 1e-6;
    int transient_min_gens = 5;
    std::size_t transient_support_cap = 256;
    std::size_t digest_support_cap = 4096;

    double still_tol_for(Precision p) const {
        if (still_tol >= 0.0) return still_tol;
        return p == Precision::binary32 ? 1e-6 : 1e-12;
    }
    // Spatial-mean fluctuations shrink like 1/sqrt(cells).
    double sigma_scaled(int w, int h) const {
        return cloud_sigma100 * std::sqrt(10000.0 / (static_cast<double>(w) * h));
    }
};

// Evolve and classify. Priority per generation: Dead, then confirmed fixed
// point (StillLife, or Lifeforms when the grid changed and the residue
// matches the catalog), then quantized-digest oscillation, then a liveness
// cloud holding the universal-constant bands for a full window, else
// Unresolved at the budget.
template <typename T>
inline Outcome classify_run(const Grid<T>& initial, const RuleSet& rules, SumOrder order,
                            const ClassifyLimits& lim,
                            const std::vector<Pattern>& catalog = builtin_catalog(),
                            int threads = 1) {
    const Precision prec = precision_of<T>();
    const double still_tol = lim.still_tol_for(prec);
    const double cells = static_cast<double>(initial.size());
    const double sigma_sc = lim.sigma_scaled(initial.width(), initial.height());

    Grid<T> g = initial;
    Engine<T> eng(rules, order, threads);
    eng.set_analysis_epsilon(lim.live_epsilon);

    std::vector<std::uint64_t> digests;
    std::vector<double> means;
    int still_streak = 0;
    std::int64_t cloud_streak = 0;

    struct Streak {
        std::int64_t first = 0;
        std::int64_t len = 0;
        bool seen = false;
    };
    std::map<std::string, Streak> streaks; // key: name@cr,cc
    std::vector<Transient> transients;

    auto end_streaks = [&](std::int64_t gen, bool all) {
        for (auto it = streaks.begin(); it != streaks.end();) {
            if (all || !it->second.seen) {
                if (it->second.len >= lim.transient_min_gens) {
                    const auto amp = it->first.find('@');
                    transients.push_back(
                        {it->first.substr(0, amp), it->second.first, it->second.len});
                }
                it = streaks.erase(it);
            } else {
                ++it;
            }
        }
        (void)gen;
    };

    Outcome out;
    for (std::int64_t gen = 1; gen <= lim.max_generations; ++gen) {
        StepStats<T> st;
        eng.step(g, &st);
        means.push_back(st.mean_sum / cells);

        // transient bookkeeping on small-support states
        if (st.support > 0 && st.support <= lim.transient_support_cap) {
            for (auto& [k, v] : streaks) v.seen = false;
            const auto comps = connected_components(g, lim.live_epsilon);
            for (const auto& comp : comps) {
                const std::string nm =
                    component_name(g, comp, catalog, prec);
                if (nm.empty()) continue;
                const std::string key = nm + "@" + std::to_string((comp.r0 + comp.r1) / 2) + "," +
                                        std::to_string((comp.c0 + comp.c1) / 2);
                auto& s = streaks[key];
                if (s.len == 0) s.first = gen;
                s.len++;
                s.seen = true;
            }
            end_streaks(gen, false);
        } else if (!streaks.empty()) {
            end_streaks(gen, true);
        }

        if (static_cast<double>(st.max_a) <= lim.dead_epsilon) {
            out.tag = OutcomeTag::Dead;
            out.generations = gen;
            out.transients = transients;
            return out;
        }

        if (static_cast<double>(st.max_delta) <= still_tol) {
            if (++still_streak >= lim.confirm_window) {
                bool changed = false;
                for (std::size_t i = 0; i < g.size() && !changed; ++i)
                    if (std::abs(static_cast<double>(g.amplitudes()[i]) -
                                 static_cast<double>(initial.amplitudes()[i])) > still_tol)
                        changed = true;
                out.inventory = take_inventory(g, catalog, lim.live_epsilon, prec);
                out.tag = (changed && out.inventory.has_catalog_match()) ? OutcomeTag::Lifeforms
                                                                         : OutcomeTag::StillLife;
                out.generations = gen;
                out.transients = transients;
                return out;
            }
        } else {
            still_streak = 0;
        }

        if (st.support <= lim.digest_support_cap) {
            digests.push_back(grid_digest(g));
            if (auto p = detect_period(digests, lim.history_period_cap)) {
                out.tag = OutcomeTag::Oscillator;
                out.period = *p;
                out.generations = gen;
                out.inventory = take_inventory(g, catalog, lim.live_epsilon, prec);
                out.transients = transients;
                return out;
            }
        } else {
            digests.clear(); // digest stream broken; restart when support shrinks
        }

        if (static_cast<double>(st.support) > lim.cloud_fraction * cells) {
            ++cloud_streak;
            if (cloud_streak >= lim.cloud_window) {
                std::vector<double> window(means.end() - lim.cloud_window, means.end());
                const auto stats = equilibrium_stats(window);
                const bool mean_ok =
                    std::abs(stats.mean_liveness - lim.cloud_mean) <= lim.cloud_band_k * sigma_sc;
                const bool sigma_ok = stats.std_liveness > sigma_sc / lim.cloud_band_k &&
                                      stats.std_liveness < sigma_sc * lim.cloud_band_k;
                if (mean_ok && sigma_ok) {
                    out.tag = OutcomeTag::LivenessCloud;
                    out.generations = gen;
                    out.cloud_stats = stats;
                    out.transients = transients;
                    return out;
                }
            }
        } else {
            cloud_streak = 0;
        }
    }
    out.tag = OutcomeTag::Unresolved;
    out.reason = "max generations reached";
    out.generations = lim.max_generations;
    out.transients = transients;
    return out;
}

} // namespace qgol
