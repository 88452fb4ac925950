#pragma once

/**
 * @file conjugacy.hpp
 * @brief Finite-depth conjugacy candidates and the diagnostics that measure them.
 *
 * A successful match h_n^k is extended to a strictly increasing PL homeomorphism
 * by interpolating through the matched pairs and the endpoint anchors. The
 * conjugacy equation h_{n+1} ∘ f_n = g_n ∘ h_n is then measured exactly; all
 * maps involved are PL, so evaluating at the union of their breakpoints gives
 * the exact sup.
 *
 * Everything reported about limits, density and periodicity is evidence up to
 * the stated bounds (n_max, k_max, P), never a proof.
 */

#include <optional>
#include <vector>

#include "kneading/combinatorics.hpp"

namespace kneading {

/// Strictly increasing PL map of J^F onto J^G.
struct ConjugacyApprox {
    long level = 1;
    int depth = 0;
    Interval domain;
    Interval codomain;
    PiecewiseLinear map;

    Rational operator()(const Rational& x) const { return map(x); }

    Rational max_slope() const {
        Rational best = map.slope(0);
        for (std::size_t s = 1; s < map.segment_count(); ++s) best = max(best, map.slope(s));
        return best;
    }
};

inline ConjugacyApprox extend_match(const MatchMap& match, const Interval& jf, const Interval& jg) {
    if (match.pairs.empty()) throw NonMonotoneInput("cannot extend an empty match");
    std::vector<Vertex> v;
    v.reserve(match.pairs.size() + 2);
    v.push_back({jf.lo, jg.lo});
    for (const auto& [pf, pg] : match.pairs) {
        if (!(v.back().x < pf.x) || !(v.back().y < pg.x))
            throw NonMonotoneInput("matched pairs are not strictly increasing inside the domains at x = " + pf.x.str());
        v.push_back({pf.x, pg.x});
    }
    if (!(v.back().x < jf.hi) || !(v.back().y < jg.hi))
        throw NonMonotoneInput("matched pairs reach the right endpoint");
    v.push_back({jf.hi, jg.hi});
    return {match.level, match.depth, jf, jg, PiecewiseLinear(std::move(v))};
}

struct DefectReport {
    long level = 1;
    int depth = 2;
    Rational defect;        // sup |h_{n+1}(f_n(x)) - g_n(h_n(x))|
    Rational argmax;        // a point attaining the sup
    Rational bound;         // max over partition intervals of the hull of both composite images
    Rational marked_defect; // sup over marked points only; zero when the match is correct
    bool common_images = true;  // both composites map every partition interval onto the same interval
    std::size_t evaluation_set_size = 0;
};

/// Measures the conjugacy equation for the PL extensions of h_n^k and h_{n+1}^{k-1}.
///
/// On every interval I of P_n^k(F) both composites are monotone. When they agree at
/// I's endpoints they map I onto g_n(h_n(I)) and the bound is the largest such length;
/// otherwise (possible at the interval next to a turning point when f_n(c_n) is not yet
/// marked) the bound uses the hull of the two images, which still dominates the defect.
inline DefectReport defect(const MapSequence& F, const MapSequence& G, long n, int k, int grid_refinement = 0) {
    if (k < 2) throw DomainError("defect needs depth >= 2 (h_{n+1} is taken at depth k-1)");
    MatchResult here = match_construct(F, G, n, k);
    if (auto* r = std::get_if<MismatchReport>(&here)) throw MissingMatch("no match at level " + std::to_string(n) + ": " + r->detail);
    MatchResult next = match_construct(F, G, n + 1, k - 1);
    if (auto* r = std::get_if<MismatchReport>(&next)) throw MissingMatch("no match at level " + std::to_string(n + 1) + ": " + r->detail);
    const MatchMap& mn = std::get<MatchMap>(here);
    ConjugacyApprox h = extend_match(mn, F.domain(), G.domain());
    ConjugacyApprox h1 = extend_match(std::get<MatchMap>(next), F.domain(), G.domain());
    const PAMap f = F.level_map(n);
    const PAMap g = G.level_map(n);
    const PiecewiseLinear lhs = compose(h1.map, f.graph());
    const PiecewiseLinear rhs = compose(g.graph(), h.map);
    auto diff = [&](const Rational& x) { return (lhs(x) - rhs(x)).abs(); };

    DefectReport rep;
    rep.level = n;
    rep.depth = k;
    rep.argmax = F.domain().lo;

    std::vector<Rational> xs;
    for (const auto& v : lhs.vertices()) xs.push_back(v.x);
    for (const auto& v : rhs.vertices()) xs.push_back(v.x);
    for (const auto& [pf, pg] : mn.pairs) {
        xs.push_back(pf.x);
        rep.marked_defect = max(rep.marked_defect, pf.word.empty() ? Rational(0) : diff(pf.x));
    }
    Partition part = partition(F, n, k);
    for (const auto& iv : part.intervals) {
        for (int i = 1; i <= grid_refinement; ++i)
            xs.push_back(iv.span.lo + iv.span.length() * Rational(i, grid_refinement + 1));
        Rational l0 = lhs(iv.span.lo), l1 = lhs(iv.span.hi);
        Rational r0 = rhs(iv.span.lo), r1 = rhs(iv.span.hi);
        if (l0 != r0 || l1 != r1) rep.common_images = false;
        Rational lo = min(min(l0, l1), min(r0, r1));
        Rational hi = max(max(l0, l1), max(r0, r1));
        rep.bound = max(rep.bound, hi - lo);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    rep.evaluation_set_size = xs.size();
    for (const auto& x : xs) {
        Rational d = diff(x);
        if (d > rep.defect) {
            rep.defect = d;
            rep.argmax = x;
        }
    }
    return rep;
}

struct ModulusReport {
    std::vector<Rational> deltas;
    std::vector<Rational> epsilons;  // epsilons[i] = max over the family of sup_{|x-y|<=delta_i} |h(x)-h(y)|
    std::size_t family_size = 0;
};

/// Exact modulus of continuity of one increasing PL map: max of h(x+δ) - h(x),
/// attained at x in {a, b-δ} or where x or x+δ is a vertex.
inline Rational modulus(const ConjugacyApprox& h, const Rational& delta) {
    const Rational& a = h.domain.lo;
    const Rational& b = h.domain.hi;
    if (delta >= b - a) return h(b) - h(a);
    if (delta.sign() <= 0) return 0;
    const Rational last = b - delta;
    std::vector<Rational> xs{a, last};
    for (const auto& v : h.map.vertices()) {
        if (v.x <= last) xs.push_back(v.x);
        Rational left = v.x - delta;
        if (a <= left && left <= last) xs.push_back(left);
    }
    Rational best = 0;
    for (const auto& x : xs) best = max(best, h(x + delta) - h(x));
    return best;
}

inline ModulusReport modulus_of_continuity(const std::vector<ConjugacyApprox>& family, const std::vector<Rational>& deltas) {
    if (family.empty()) throw DomainError("modulus of continuity needs a nonempty family");
    ModulusReport rep{deltas, {}, family.size()};
    for (const auto& d : deltas) {
        Rational eps = 0;
        for (const auto& h : family) eps = max(eps, modulus(h, d));
        rep.epsilons.push_back(eps);
    }
    return rep;
}

struct TurningOrbitVerdict {
    int index = 1;           // c(index) of the limit map
    int steps_checked = 0;   // P
    std::optional<int> hit_step;    // first m in 1..P with f^m(c(index)) a turning point
    std::optional<int> hit_target;
};

struct MeshRow {
    long n = 0;  // 0 for the limit map
    int k = 1;
    Rational mesh;
};

struct LimitPropertyReport {
    long n_max = 0;
    int k_max = 0;
    int period_bound = 0;
    std::vector<Rational> sup_distances;  // index n-1
    std::vector<MeshRow> meshes;          // per (n, k), then the limit map with n = 0
    std::vector<TurningOrbitVerdict> turning_orbits;
    std::vector<Rational> min_slopes;     // per level, index n-1
    Rational limit_min_slope;

    // Evidence flags, valid only up to (n_max, k_max, period_bound).
    bool uniform_distance_decreasing = false;
    bool meshes_shrink = false;
    bool turning_points_not_periodic = false;
    bool expanding = false;
};

/// Exact checks of the limit-property hypotheses up to the given bounds.
/// Meshes are computed for levels 1..mesh_n_max (defaults to n_max).
inline LimitPropertyReport limit_property_check(const MapSequence& seq, long n_max, int k_max, int period_bound,
                                                std::optional<long> mesh_n_max = std::nullopt) {
    if (!seq.declared_limit()) throw NoDeclaredLimit("sequence has no declared limit map");
    if (n_max < 1 || k_max < 1 || period_bound < 1) throw DomainError("bounds must be positive");
    const PAMap& lim = *seq.declared_limit();
    LimitPropertyReport rep;
    rep.n_max = n_max;
    rep.k_max = k_max;
    rep.period_bound = period_bound;

    rep.uniform_distance_decreasing = true;
    rep.expanding = lim.min_abs_slope() > 1;
    rep.limit_min_slope = lim.min_abs_slope();
    for (long n = 1; n <= n_max; ++n) {
        PAMap f = seq.level_map(n);
        rep.sup_distances.push_back(sup_distance(f, lim));
        const Rational& d = rep.sup_distances.back();
        // strictly decreasing until the distance reaches 0
        if (n > 1 && d != 0 && !(d < rep.sup_distances[static_cast<std::size_t>(n - 2)])) rep.uniform_distance_decreasing = false;
        rep.min_slopes.push_back(f.min_abs_slope());
        if (!(rep.min_slopes.back() > 1)) rep.expanding = false;
    }

    rep.meshes_shrink = true;
    auto mesh_rows = [&](const MapSequence& s, long n, long label) {
        PreimageBuilder b(s, n);
        Rational first;
        for (int k = 1; k <= k_max; ++k) {
            if (k > 1) b.advance();
            Rational m = mesh(b.critical_set(), s.domain());
            if (k == 1) first = m;
            rep.meshes.push_back({label, k, m});
            if (k == k_max && k_max > 1 && !(m < first)) rep.meshes_shrink = false;
        }
    };
    const long mesh_levels = mesh_n_max.value_or(n_max);
    for (long n = 1; n <= mesh_levels; ++n) mesh_rows(seq, n, n);
    MapSequence autonomous = MapSequence::constant(lim, seq.modality(), seq.endpoint_pattern());
    mesh_rows(autonomous, 1, 0);

    rep.turning_points_not_periodic = true;
    for (int i = 1; i <= lim.modality(); ++i) {
        TurningOrbitVerdict v{i, period_bound, std::nullopt, std::nullopt};
        Rational x = lim.turning_points()[static_cast<std::size_t>(i - 1)];
        for (int m = 1; m <= period_bound; ++m) {
            x = lim(x);
            if (int j = lim.turning_index(x); j != 0) {
                v.hit_step = m;
                v.hit_target = j;
                rep.turning_points_not_periodic = false;
                break;
            }
        }
        rep.turning_orbits.push_back(v);
    }
    return rep;
}

struct MonotonicEquivalence {
    bool equivalent = true;
    std::optional<long> first_failing_level;
};

/// Compares shape signatures level by level for n <= n_max, extended past both explicit
/// prefixes so the constant tails are covered too.
inline MonotonicEquivalence monotonic_equivalence(const MapSequence& F, const MapSequence& G, long n_max) {
    if (F.modality() != G.modality()) throw ModalityMismatch("systems have different modalities");
    long last = n_max;
    if (auto t = F.tail_start()) last = std::max(last, *t);
    if (auto t = G.tail_start()) last = std::max(last, *t);
    for (long n = 1; n <= last; ++n)
        if (!(F.level_map(n).shape() == G.level_map(n).shape())) return {false, n};
    return {};
}

}  // namespace kneading
