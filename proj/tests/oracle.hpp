#pragma once

// Independent reference computations used only by tests. Nothing here calls the
// preimage builder, branch inverses or the library's composition routine.

#include <algorithm>
#include <map>
#include <vector>

#include "kneading/map_sequence.hpp"

namespace kneading::oracle {

using Graph = std::vector<std::pair<Rational, Rational>>;

inline Rational eval_graph(const Graph& g, const Rational& x) {
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const auto& [x0, y0] = g[i];
        const auto& [x1, y1] = g[i + 1];
        if (x0 <= x && x <= x1) return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    throw std::logic_error("oracle: x outside graph");
}

inline Graph graph_of(const PAMap& f) {
    Graph g;
    for (const auto& v : f.vertices()) g.emplace_back(v.x, v.y);
    return g;
}

/// Graph of f ∘ F where F is given by vertices: refine F at every x where F(x) is a vertex x of f.
inline Graph push_forward(const Graph& F, const PAMap& f) {
    std::vector<Rational> xs;
    for (std::size_t i = 0; i + 1 < F.size(); ++i) {
        const auto& [x0, y0] = F[i];
        const auto& [x1, y1] = F[i + 1];
        xs.push_back(x0);
        Rational lo = min(y0, y1), hi = max(y0, y1);
        for (const auto& v : f.vertices())
            if (lo < v.x && v.x < hi) xs.push_back(x0 + (v.x - y0) * (x1 - x0) / (y1 - y0));
    }
    xs.push_back(F.back().first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Graph out;
    for (const auto& x : xs) out.emplace_back(x, f(eval_graph(F, x)));
    return out;
}

/// Every x with F(x) = t on a PL graph.
inline std::vector<Rational> solve_all(const Graph& F, const Rational& t) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < F.size(); ++i) {
        const auto& [x0, y0] = F[i];
        const auto& [x1, y1] = F[i + 1];
        if (y0 == t) out.push_back(x0);
        if (y1 == t) out.push_back(x1);
        if ((y0 < t && t < y1) || (y1 < t && t < y0)) out.push_back(x0 + (t - y0) * (x1 - x0) / (y1 - y0));
    }
    return out;
}

struct OraclePoint {
    Rational x;
    int steps;   // minimal m with f_n^m(x) a turning point of level n+m
    int target;
    std::vector<int> word;  // pieces visited before the hit
};

/// C_n^k by solving f_n^m(x) = c_{n+m}(j) on the full composition, m = 0..k-1.
inline std::vector<OraclePoint> brute_force_critical_set(const MapSequence& seq, long n, int k) {
    std::map<Rational, OraclePoint> found;
    const Interval& d = seq.domain();
    Graph F{{d.lo, d.lo}, {d.hi, d.hi}};  // identity = f_n^0
    for (int m = 0; m < k; ++m) {
        PAMap lvl = seq.level_map(n + m);
        const auto& turning = lvl.turning_points();
        for (std::size_t j = 0; j < turning.size(); ++j)
            for (const auto& x : solve_all(F, turning[j]))
                if (!found.count(x)) found.emplace(x, OraclePoint{x, m, static_cast<int>(j) + 1, {}});
        F = push_forward(F, lvl);
    }
    std::vector<OraclePoint> out;
    for (auto& [x, p] : found) {
        // word: piece index of each orbit point, counted as 1 + #turning points below it
        Rational y = x;
        for (int s = 0; s < p.steps; ++s) {
            PAMap lvl = seq.level_map(n + s);
            const auto& t = lvl.turning_points();
            p.word.push_back(1 + static_cast<int>(std::count_if(t.begin(), t.end(), [&](const Rational& c) { return c < y; })));
            y = lvl(y);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace kneading::oracle
