#pragma once

/**
 * @file symbolic.hpp
 * @brief Addresses, itineraries and kneading sequences of nonautonomous systems.
 *
 * Letters carry the turning index (or monotone-interval index) rather than the
 * level-dependent turning point, so letters from different levels and from
 * different systems are identified positionally. All orbit points are exact.
 *
 * A kneading table only certifies a prefix: two systems are reported "equal up
 * to (n_range, k)", never equal outright.
 */

#include <string>
#include <variant>
#include <vector>

#include "kneading/map_sequence.hpp"
#include "kneading/parallel.hpp"

namespace kneading {

struct Letter {
    enum class Kind { Interval, Turning };
    Kind kind = Kind::Interval;
    int index = 1;

    static Letter interval(int j) { return {Kind::Interval, j}; }
    static Letter turning(int j) { return {Kind::Turning, j}; }

    bool is_turning() const noexcept { return kind == Kind::Turning; }

    /// "L","C","R" when unimodal; "I1".."I(l+1)", "C1".."Cl" otherwise.
    std::string str(int modality) const {
        if (modality == 1) {
            if (is_turning()) return "C";
            return index == 1 ? "L" : "R";
        }
        return (is_turning() ? "C" : "I") + std::to_string(index);
    }

    /// Inverse of str().
    static Letter parse(const std::string& s, int modality) {
        if (modality == 1) {
            if (s == "L") return interval(1);
            if (s == "R") return interval(2);
            if (s == "C") return turning(1);
        } else if (s.size() >= 2 && (s[0] == 'I' || s[0] == 'C')) {
            int j = 0;
            try {
                j = std::stoi(s.substr(1));
            } catch (const std::exception&) {
                throw ParseError("bad letter '" + s + "'");
            }
            Letter l = s[0] == 'I' ? interval(j) : turning(j);
            int bound = l.is_turning() ? modality : modality + 1;
            if (j >= 1 && j <= bound) return l;
        }
        throw ParseError("bad letter '" + s + "' for modality " + std::to_string(modality));
    }

    friend bool operator==(const Letter&, const Letter&) = default;
};

struct Itinerary {
    long level = 1;
    int depth = 0;
    std::vector<Letter> letters;

    friend bool operator==(const Itinerary&, const Itinerary&) = default;
};

inline Letter address_for_map(const PAMap& map, const Rational& x) {
    int p = map.piece_containing(x);
    if (p == 0) return Letter::turning(map.turning_index(x));
    return Letter::interval(p);
}

/// Letter of x at level n: TurningLetter(j) iff x == c_n(j) exactly.
inline Letter address(const MapSequence& seq, long n, const Rational& x) {
    if (!seq.domain().contains(x)) throw DomainError("x = " + x.str() + " outside the system's domain");
    return address_for_map(seq.level_map(n), x);
}

inline Itinerary itinerary(const MapSequence& seq, long n, Rational x, int depth) {
    if (depth < 1) throw DomainError("itinerary depth must be >= 1");
    if (!seq.domain().contains(x)) throw DomainError("x = " + x.str() + " outside the system's domain");
    Itinerary it{n, depth, {}};
    it.letters.reserve(static_cast<std::size_t>(depth));
    for (int m = 0; m < depth; ++m) {
        PAMap f = seq.level_map(n + m);
        it.letters.push_back(address_for_map(f, x));
        if (m + 1 < depth) x = f(x);
    }
    return it;
}

struct KneadingRow {
    long n = 1;
    int j = 1;
    Itinerary itinerary;
};

struct KneadingTable {
    long n_lo = 1;
    long n_hi = 1;
    int depth = 1;
    int modality = 1;
    std::vector<KneadingRow> rows;  // ordered by (n, j)

    const KneadingRow& row(long n, int j) const {
        return rows.at(static_cast<std::size_t>((n - n_lo) * modality + (j - 1)));
    }
};

/// Row (n, j) is the depth-k itinerary of c_n(j). Rows may be filled concurrently;
/// the output order is fixed by (n, j).
inline KneadingTable kneading_table(const MapSequence& seq, long n_lo, long n_hi, int depth, unsigned threads = 1) {
    if (n_lo < 1 || n_hi < n_lo) throw DomainError("invalid level range");
    if (depth < 1) throw DomainError("kneading depth must be >= 1");
    KneadingTable t{n_lo, n_hi, depth, seq.modality(), {}};
    const auto levels = static_cast<std::size_t>(n_hi - n_lo + 1);
    const auto ell = static_cast<std::size_t>(seq.modality());
    t.rows.resize(levels * ell);
    detail::parallel_for(levels, threads, [&](std::size_t i) {
        long n = n_lo + static_cast<long>(i);
        PAMap f = seq.level_map(n);
        if (f.modality() != seq.modality())
            throw ModalityMismatch("level " + std::to_string(n) + " has " + std::to_string(f.modality()) +
                                   " turning points, expected " + std::to_string(seq.modality()));
        for (std::size_t j = 0; j < ell; ++j)
            t.rows[i * ell + j] = {n, static_cast<int>(j) + 1, itinerary(seq, n, f.turning_points()[j], depth)};
    });
    return t;
}

struct KneadingEqual {};

struct KneadingMismatch {
    long n = 0;
    int j = 0;
    int position = 0;
    Letter a;
    Letter b;
};

using KneadingComparison = std::variant<KneadingEqual, KneadingMismatch>;

/// Letter-wise comparison; the reported mismatch is the first in (n, j, position) order.
inline KneadingComparison compare_kneading(const KneadingTable& a, const KneadingTable& b) {
    if (a.n_lo != b.n_lo || a.n_hi != b.n_hi || a.depth != b.depth || a.modality != b.modality)
        throw ShapeMismatch("kneading tables differ in level range, depth or modality");
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        const auto& la = a.rows[r].itinerary.letters;
        const auto& lb = b.rows[r].itinerary.letters;
        for (std::size_t p = 0; p < la.size(); ++p)
            if (!(la[p] == lb[p])) return KneadingMismatch{a.rows[r].n, a.rows[r].j, static_cast<int>(p), la[p], lb[p]};
    }
    return KneadingEqual{};
}

inline bool is_equal(const KneadingComparison& c) { return std::holds_alternative<KneadingEqual>(c); }

}  // namespace kneading
