#pragma once

/**
 * @file combinatorics.hpp
 * @brief Depth-k turning-point preimage sets and the order-matching maps between two systems.
 *
 * The preimage set C_n^k collects every x whose orbit f_n^m(x) lands exactly on a
 * turning point c_{n+m}(j) for some 0 <= m <= k-1. It is built one depth at a
 * time from the monotonicity partition: on each partition interval the depth-m
 * composition is strictly monotone with known endpoint values, so every turning
 * point of level n+m strictly inside that image has exactly one preimage in the
 * interval's interior, recovered by pulling back along the interval's branch
 * word. Points found this way are new and carry their minimal word.
 *
 * A point's word is the list of pieces its orbit visits before the hit. Since an
 * interior point of a partition interval never meets a turning point earlier,
 * its word and target are unique; there are no equal-length ties to resolve.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kneading/map_sequence.hpp"

namespace kneading {

struct MarkedPoint {
    Rational x;
    BranchWord word;  // empty for a turning point of the level itself
    int target = 1;   // turning index hit after |word| steps

    friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

struct CriticalSet {
    long level = 1;
    int depth = 1;
    std::vector<MarkedPoint> points;  // strictly increasing in x

    /// Index of the point at x, if marked.
    std::optional<std::size_t> find(const Rational& x) const {
        auto it = std::lower_bound(points.begin(), points.end(), x,
                                   [](const MarkedPoint& p, const Rational& t) { return p.x < t; });
        if (it != points.end() && it->x == x) return static_cast<std::size_t>(it - points.begin());
        return std::nullopt;
    }

    std::size_t size() const noexcept { return points.size(); }
};

enum class Boundary { A, B, Marked };

struct PartitionInterval {
    Interval span;
    Boundary left = Boundary::Marked;
    Boundary right = Boundary::Marked;
    BranchWord word;  // length = depth; the depth composition is strictly monotone on span along it
};

struct Partition {
    long level = 1;
    int depth = 1;
    std::vector<PartitionInterval> intervals;

    std::size_t theta() const noexcept { return intervals.size(); }
};

/// Incremental construction of C_n^k and P_n^k for growing k.
class PreimageBuilder {
public:
    /// Starts at depth 1: the turning points of level n.
    PreimageBuilder(const MapSequence& seq, long n) : seq_(&seq), level_(n) {
        if (n < 1) throw DomainError("level index must be >= 1");
        const PAMap& f = map(0);
        if (f.degenerate() || f.modality() != seq.modality())
            throw ModalityMismatch("level " + std::to_string(n) + " does not have " +
                                   std::to_string(seq.modality()) + " turning points");
        const Interval& d = seq.domain();
        orbit_.push_back(f(d.lo));
        for (int j = 1; j <= f.modality(); ++j) {
            const Rational& c = f.turning_points()[static_cast<std::size_t>(j - 1)];
            points_.push_back({c, {}, j});
            orbit_.push_back(f(c));
        }
        orbit_.push_back(f(d.hi));
        for (int p = 1; p <= f.piece_count(); ++p) words_.push_back(BranchWord{{p}});
    }

    int depth() const noexcept { return depth_; }
    long level() const noexcept { return level_; }

    /// Depth k -> k+1: adds f(n,k)^{-1}(c_{n+k}(j)) for every j.
    void advance() {
        const PAMap& next = map(depth_);
        const auto& turning = next.turning_points();
        if (next.degenerate() || next.modality() != seq_->modality())
            throw ModalityMismatch("level " + std::to_string(level_ + depth_) + " does not have " +
                                   std::to_string(seq_->modality()) + " turning points");
        std::vector<MarkedPoint> points;
        std::vector<Rational> orbit;
        std::vector<BranchWord> words;
        points.reserve(points_.size() * 2 + turning.size());
        orbit.reserve(orbit_.size() * 2);
        words.reserve(words_.size() * 2);

        orbit.push_back(orbit_.front());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const Rational& u = orbit_[i];
            const Rational& v = orbit_[i + 1];
            const bool increasing = u < v;
            const Rational& lo = increasing ? u : v;
            const Rational& hi = increasing ? v : u;
            // turning targets strictly inside the image, in the order their preimages appear in x
            std::vector<int> hits;
            for (std::size_t j = 0; j < turning.size(); ++j)
                if (lo < turning[j] && turning[j] < hi) hits.push_back(static_cast<int>(j) + 1);
            if (!increasing) std::reverse(hits.begin(), hits.end());

            Rational prev = u;
            for (int j : hits) {
                const Rational& t = turning[static_cast<std::size_t>(j - 1)];
                points.push_back({pull_back(t, words_[i]), words_[i], j});
                orbit.push_back(t);
                words.push_back(words_[i].extended(piece_between(next, prev, t)));
                prev = t;
            }
            words.push_back(words_[i].extended(piece_between(next, prev, v)));
            if (i < points_.size()) {
                points.push_back(std::move(points_[i]));
                orbit.push_back(orbit_[i + 1]);
            }
        }
        orbit.push_back(orbit_.back());
        for (auto& y : orbit) y = next(y);

        points_ = std::move(points);
        orbit_ = std::move(orbit);
        words_ = std::move(words);
        ++depth_;
    }

    void advance_to(int depth) {
        if (depth < 1) throw DomainError("depth must be >= 1");
        while (depth_ < depth) advance();
    }

    CriticalSet critical_set() const { return {level_, depth_, points_}; }

    Partition partition() const {
        Partition p{level_, depth_, {}};
        const Interval& d = seq_->domain();
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const bool first = i == 0;
            const bool last = i == points_.size();
            p.intervals.push_back({Interval(first ? d.lo : points_[i - 1].x, last ? d.hi : points_[i].x),
                                   first ? Boundary::A : Boundary::Marked, last ? Boundary::B : Boundary::Marked,
                                   words_[i]});
        }
        return p;
    }

    /// Level map f_{n+offset}, cached.
    const PAMap& map(int offset) {
        while (static_cast<int>(maps_.size()) <= offset)
            maps_.push_back(seq_->level_map(level_ + static_cast<long>(maps_.size())));
        return maps_[static_cast<std::size_t>(offset)];
    }

private:
    // Piece of `f` containing the open interval between two consecutive cut values.
    static int piece_between(const PAMap& f, const Rational& a, const Rational& b) {
        return f.piece_containing((a + b) / 2);
    }

    Rational pull_back(const Rational& target, const BranchWord& word) {
        Rational y = target;
        for (std::size_t i = word.size(); i-- > 0;) {
            auto x = map(static_cast<int>(i)).branch_inverse(word.letters[i], y);
            if (!x) throw std::logic_error("branch pullback left the piece image");
            y = std::move(*x);
        }
        return y;
    }

    const MapSequence* seq_;
    long level_;
    int depth_ = 1;
    std::vector<PAMap> maps_;
    std::vector<MarkedPoint> points_;
    std::vector<Rational> orbit_;    // f_n^depth at a, each marked point, b
    std::vector<BranchWord> words_;  // one per partition interval
};

inline CriticalSet critical_set(const MapSequence& seq, long n, int depth) {
    PreimageBuilder b(seq, n);
    b.advance_to(depth);
    return b.critical_set();
}

inline Partition partition(const MapSequence& seq, long n, int depth) {
    PreimageBuilder b(seq, n);
    b.advance_to(depth);
    return b.partition();
}

/// Largest gap between consecutive points of C ∪ {a, b}.
inline Rational mesh(const CriticalSet& set, const Interval& domain) {
    Rational prev = domain.lo;
    Rational best = 0;
    for (const auto& p : set.points) {
        best = max(best, p.x - prev);
        prev = p.x;
    }
    return max(best, domain.hi - prev);
}

struct MatchMap {
    long level = 1;
    int depth = 1;
    std::vector<std::pair<MarkedPoint, MarkedPoint>> pairs;  // (x_F, x_G), increasing in both

    /// Index of the pair whose F-side is x.
    std::optional<std::size_t> find_f(const Rational& x) const {
        auto it = std::lower_bound(pairs.begin(), pairs.end(), x,
                                   [](const auto& p, const Rational& t) { return p.first.x < t; });
        if (it != pairs.end() && it->first.x == x) return static_cast<std::size_t>(it - pairs.begin());
        return std::nullopt;
    }
};

struct MismatchReport {
    enum class Reason { Shape, Cardinality, Word, Target, Semiconjugacy };
    long level = 1;
    int depth = 1;
    std::size_t position = 0;
    Reason reason = Reason::Cardinality;
    std::string detail;
};

inline const char* to_string(MismatchReport::Reason r) {
    switch (r) {
        case MismatchReport::Reason::Shape: return "shape";
        case MismatchReport::Reason::Cardinality: return "cardinality";
        case MismatchReport::Reason::Word: return "word";
        case MismatchReport::Reason::Target: return "target";
        case MismatchReport::Reason::Semiconjugacy: return "semiconjugacy";
    }
    return "?";
}

using MatchResult = std::variant<MatchMap, MismatchReport>;

struct SemiconjugacyOk {};

struct SemiconjugacyCounterexample {
    Rational x_f;
    Rational x_g;
    Rational expected;  // h_{n+1}(f_n(x_f)), or f_n(x_f) itself when that is unmarked
    Rational actual;    // g_n(x_g)
    std::string detail;
};

using SemiconjugacyResult = std::variant<SemiconjugacyOk, SemiconjugacyCounterexample>;

/// Checks h_{n+1}(f_n(x)) = g_n(h_n(x)) exactly on every marked x that is not a turning point of level n.
/// `at_n` pairs level n at depth k and `at_next` pairs level n+1 at depth k-1.
inline SemiconjugacyResult check_semiconjugacy(const MapSequence& F, const MapSequence& G, const MatchMap& at_n,
                                               const MatchMap* at_next) {
    const PAMap f = F.level_map(at_n.level);
    const PAMap g = G.level_map(at_n.level);
    for (const auto& [pf, pg] : at_n.pairs) {
        if (pf.word.empty()) continue;
        Rational image_f = f(pf.x);
        Rational image_g = g(pg.x);
        std::optional<std::size_t> idx = at_next ? at_next->find_f(image_f) : std::nullopt;
        if (!idx) return SemiconjugacyCounterexample{pf.x, pg.x, image_f, image_g, "f_n(x) is not a marked point of level n+1"};
        const Rational& paired = at_next->pairs[*idx].second.x;
        if (paired != image_g) return SemiconjugacyCounterexample{pf.x, pg.x, paired, image_g, "h_{n+1}(f_n(x)) != g_n(h_n(x))"};
    }
    return SemiconjugacyOk{};
}

namespace detail {

inline std::optional<MismatchReport> compare_sets(const CriticalSet& a, const CriticalSet& b) {
    auto report = [&](std::size_t pos, MismatchReport::Reason r, std::string detail) {
        return MismatchReport{a.level, a.depth, pos, r, std::move(detail)};
    };
    std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (!(a.points[i].word == b.points[i].word))
            return report(i, MismatchReport::Reason::Word, "branch words differ at rank " + std::to_string(i));
        if (a.points[i].target != b.points[i].target)
            return report(i, MismatchReport::Reason::Target, "turning targets differ at rank " + std::to_string(i));
    }
    if (a.size() != b.size())
        return report(common, MismatchReport::Reason::Cardinality,
                      "|C_F| = " + std::to_string(a.size()) + ", |C_G| = " + std::to_string(b.size()));
    return std::nullopt;
}

// Rank matching at a single level, checking depth by depth so the first divergence is reported.
inline MatchResult rank_match(const MapSequence& F, const MapSequence& G, long n, int k) {
    PreimageBuilder bf(F, n), bg(G, n);
    for (int d = 1;; ++d) {
        if (!(bf.map(d - 1).shape() == bg.map(d - 1).shape()))
            return MismatchReport{n, d, 0, MismatchReport::Reason::Shape,
                                  "level " + std::to_string(n + d - 1) + " maps are not monotonically equivalent"};
        CriticalSet cf = bf.critical_set();
        CriticalSet cg = bg.critical_set();
        if (auto r = compare_sets(cf, cg)) return *r;
        if (d == k) {
            MatchMap m{n, k, {}};
            m.pairs.reserve(cf.size());
            for (std::size_t i = 0; i < cf.size(); ++i) m.pairs.emplace_back(cf.points[i], cg.points[i]);
            return m;
        }
        bf.advance();
        bg.advance();
    }
}

}  // namespace detail

/// Builds h_n^k by rank-matching C_n^k(F) with C_n^k(G) and verifies it: equal cardinality,
/// identical branch words and targets, and the exact semiconjugacy against h_{n+1}^{k-1}
/// (recursively verified). A MismatchReport is a negative answer, not an error.
inline MatchResult match_construct(const MapSequence& F, const MapSequence& G, long n, int k) {
    if (F.modality() != G.modality()) throw ModalityMismatch("systems have different modalities");
    if (k < 1) throw DomainError("depth must be >= 1");
    MatchResult here = detail::rank_match(F, G, n, k);
    if (std::holds_alternative<MismatchReport>(here) || k == 1) return here;
    MatchResult next = match_construct(F, G, n + 1, k - 1);
    if (std::holds_alternative<MismatchReport>(next)) return next;
    const auto& m = std::get<MatchMap>(here);
    auto check = check_semiconjugacy(F, G, m, &std::get<MatchMap>(next));
    if (auto* ce = std::get_if<SemiconjugacyCounterexample>(&check)) {
        std::size_t pos = *m.find_f(ce->x_f);
        return MismatchReport{n, k, pos, MismatchReport::Reason::Semiconjugacy, ce->detail + " at x = " + ce->x_f.str()};
    }
    return here;
}

/// Builds the matches at levels n (depth k) and n+1 (depth k-1) and checks the identity between them.
inline SemiconjugacyResult marked_semiconjugacy_check(const MapSequence& F, const MapSequence& G, long n, int k) {
    MatchResult here = match_construct(F, G, n, k);
    if (auto* r = std::get_if<MismatchReport>(&here)) throw MissingMatch("no match at level " + std::to_string(n) + ": " + r->detail);
    if (k == 1) return check_semiconjugacy(F, G, std::get<MatchMap>(here), nullptr);
    MatchResult next = match_construct(F, G, n + 1, k - 1);
    if (auto* r = std::get_if<MismatchReport>(&next)) throw MissingMatch("no match at level " + std::to_string(n + 1) + ": " + r->detail);
    return check_semiconjugacy(F, G, std::get<MatchMap>(here), &std::get<MatchMap>(next));
}

}  // namespace kneading
