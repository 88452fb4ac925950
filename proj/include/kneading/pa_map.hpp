#pragma once

/**
 * @file pa_map.hpp
 * @brief Piecewise-affine continuous self-maps of an interval.
 *
 * A PAMap is stored by its vertices. Vertices need not be turning points:
 * the turning points c(1) < ... < c(l) are derived as the vertices where the
 * direction of the affine pieces flips, and the maximal monotone pieces
 * (numbered 1..l+1 from the left) are the runs of segments between them.
 */

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kneading/piecewise_linear.hpp"

namespace kneading {

enum class Direction { Inc, Dec };

inline const char* to_string(Direction d) { return d == Direction::Inc ? "Inc" : "Dec"; }

struct ShapeSignature {
    std::vector<Direction> directions;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < directions.size(); ++i) {
            if (i) s += ",";
            s += to_string(directions[i]);
        }
        return s + ")";
    }

    friend bool operator==(const ShapeSignature&, const ShapeSignature&) = default;
};

/// Images of the two domain endpoints: each is either the left end a or the right end b.
struct EndpointPattern {
    enum class End { A, B };
    End image_of_a = End::A;
    End image_of_b = End::A;

    static EndpointPattern unimodal() { return {End::A, End::A}; }

    std::string str() const {
        auto e = [](End v) { return v == End::A ? "a" : "b"; };
        return std::string("(a->") + e(image_of_a) + ", b->" + e(image_of_b) + ")";
    }

    friend bool operator==(const EndpointPattern&, const EndpointPattern&) = default;
};

/// Sequence of monotone-piece indices, 1-based. Empty is the empty word.
struct BranchWord {
    std::vector<int> letters;

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    BranchWord extended(int piece) const {
        BranchWord w = *this;
        w.letters.push_back(piece);
        return w;
    }

    BranchWord tail() const {
        BranchWord w;
        if (!letters.empty()) w.letters.assign(letters.begin() + 1, letters.end());
        return w;
    }

    /// "-"/"+" for unimodal systems, digits otherwise (dot-separated above 9 pieces).
    std::string str(int modality) const {
        std::string s;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            int p = letters[i];
            if (modality == 1) {
                s += p == 1 ? '-' : '+';
            } else {
                if (modality + 1 > 9 && i) s += '.';
                s += std::to_string(p);
            }
        }
        return s;
    }

    friend bool operator==(const BranchWord&, const BranchWord&) = default;
    friend auto operator<=>(const BranchWord&, const BranchWord&) = default;
};

class PAMap {
public:
    PAMap() = default;

    PAMap(Interval domain, std::vector<Vertex> vertices) : domain_(std::move(domain)), graph_(std::move(vertices)) {
        if (graph_.x_min() != domain_.lo || graph_.x_max() != domain_.hi)
            throw MapError("first and last vertex must sit at the domain endpoints");
        derive();
    }

    explicit PAMap(std::vector<Vertex> vertices) : graph_(std::move(vertices)) {
        domain_ = Interval(graph_.x_min(), graph_.x_max());
        derive();
    }

    const Interval& domain() const noexcept { return domain_; }
    const std::vector<Vertex>& vertices() const noexcept { return graph_.vertices(); }
    const PiecewiseLinear& graph() const noexcept { return graph_; }

    /// True if some affine segment is flat; such a map has no monotone-piece structure.
    bool degenerate() const noexcept { return degenerate_; }

    const std::vector<Rational>& turning_points() const noexcept { return turning_; }
    int modality() const noexcept { return static_cast<int>(turning_.size()); }
    int piece_count() const noexcept { return static_cast<int>(pieces_.size()); }
    const ShapeSignature& shape() const noexcept { return shape_; }

    Rational operator()(const Rational& x) const {
        if (!domain_.contains(x))
            throw DomainError("x = " + x.str() + " outside domain [" + domain_.lo.str() + ", " + domain_.hi.str() + "]");
        return graph_(x);
    }

    /// Closed piece p: [left boundary, right boundary].
    Interval piece_interval(int p) const {
        check_piece(p);
        const auto& v = graph_.vertices();
        const Piece& pc = pieces_[static_cast<std::size_t>(p - 1)];
        return Interval(v[pc.first].x, v[pc.last + 1].x);
    }

    Interval piece_image(int p) const {
        check_piece(p);
        const auto& v = graph_.vertices();
        const Piece& pc = pieces_[static_cast<std::size_t>(p - 1)];
        return Interval(min(v[pc.first].y, v[pc.last + 1].y), max(v[pc.first].y, v[pc.last + 1].y));
    }

    /// The unique x in closed piece p with f(x) = y, or nullopt if y is outside the piece's image.
    std::optional<Rational> branch_inverse(int p, const Rational& y) const {
        check_piece(p);
        const Piece& pc = pieces_[static_cast<std::size_t>(p - 1)];
        return graph_.solve_monotone(pc.first, pc.last, y);
    }

    /// Piece whose half-open/open monotone interval contains a non-turning x.
    /// Returns 0 when x is a turning point.
    int piece_containing(const Rational& x) const {
        if (!domain_.contains(x)) throw DomainError("x = " + x.str() + " outside domain");
        auto it = std::lower_bound(turning_.begin(), turning_.end(), x);
        if (it != turning_.end() && *it == x) return 0;
        return static_cast<int>(it - turning_.begin()) + 1;
    }

    /// Index j (1-based) with x == c(j), or 0.
    int turning_index(const Rational& x) const {
        auto it = std::lower_bound(turning_.begin(), turning_.end(), x);
        if (it != turning_.end() && *it == x) return static_cast<int>(it - turning_.begin()) + 1;
        return 0;
    }

    /// Smallest |slope| over the affine segments.
    Rational min_abs_slope() const {
        Rational best = graph_.slope(0).abs();
        for (std::size_t s = 1; s < graph_.segment_count(); ++s) best = min(best, graph_.slope(s).abs());
        return best;
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < vertices().size(); ++i) {
            if (i) os << ", ";
            os << '(' << vertices()[i].x << ", " << vertices()[i].y << ')';
        }
        os << ']';
        return os.str();
    }

    friend bool operator==(const PAMap& a, const PAMap& b) {
        return a.domain_ == b.domain_ && a.graph_ == b.graph_;
    }

private:
    struct Piece {
        std::size_t first;
        std::size_t last;
    };

    void check_piece(int p) const {
        if (degenerate_) throw MapError("map has a flat segment; monotone pieces are undefined");
        if (p < 1 || p > piece_count())
            throw PieceIndexError("piece " + std::to_string(p) + " not in 1.." + std::to_string(piece_count()));
    }

    void derive() {
        const auto& v = graph_.vertices();
        std::vector<Direction> seg;
        for (std::size_t s = 0; s + 1 < v.size(); ++s) {
            if (v[s].y == v[s + 1].y) {
                degenerate_ = true;
                return;
            }
            seg.push_back(v[s].y < v[s + 1].y ? Direction::Inc : Direction::Dec);
        }
        std::size_t start = 0;
        for (std::size_t s = 1; s <= seg.size(); ++s) {
            if (s == seg.size() || seg[s] != seg[s - 1]) {
                pieces_.push_back({start, s - 1});
                shape_.directions.push_back(seg[s - 1]);
                if (s < seg.size()) turning_.push_back(v[s].x);
                start = s;
            }
        }
    }

    Interval domain_;
    PiecewiseLinear graph_;
    bool degenerate_ = false;
    std::vector<Piece> pieces_;
    std::vector<Rational> turning_;
    ShapeSignature shape_;
};

/// Exact sup-norm of a - b over the shared domain.
inline Rational sup_distance(const PAMap& a, const PAMap& b) {
    if (!(a.domain() == b.domain())) throw DomainMismatch("sup_distance needs a common domain");
    std::vector<Rational> xs;
    for (const auto& v : a.vertices()) xs.push_back(v.x);
    for (const auto& v : b.vertices()) xs.push_back(v.x);
    Rational best = 0;
    for (const auto& x : xs) best = max(best, (a(x) - b(x)).abs());
    return best;
}

/// Report-style check. Returns every violation; an empty list means the map is valid.
inline std::vector<std::string> validate(const PAMap& map, int modality, const EndpointPattern& pattern) {
    std::vector<std::string> out;
    const Interval& d = map.domain();
    for (const auto& v : map.vertices())
        if (!d.contains(v.y))
            out.push_back("not a self-map: f(" + v.x.str() + ") = " + v.y.str() + " outside [" + d.lo.str() + ", " +
                          d.hi.str() + "]");
    const auto& v = map.vertices();
    for (std::size_t s = 0; s + 1 < v.size(); ++s)
        if (v[s].y == v[s + 1].y)
            out.push_back("non-strict piece on [" + v[s].x.str() + ", " + v[s + 1].x.str() + "]");
    if (modality < 1) out.push_back("declared modality must be >= 1");
    if (!map.degenerate() && map.modality() != modality)
        out.push_back("modality is " + std::to_string(map.modality()) + ", declared " + std::to_string(modality));
    if (modality == 1 && !(pattern == EndpointPattern::unimodal()))
        out.push_back("unimodal systems require endpoint pattern (a->a, b->a), declared " + pattern.str());
    auto end_value = [&](EndpointPattern::End e) { return e == EndpointPattern::End::A ? d.lo : d.hi; };
    const Rational fa = v.front().y;
    const Rational fb = v.back().y;
    if (fa != end_value(pattern.image_of_a))
        out.push_back("endpoint pattern " + pattern.str() + " violated: f(a) = " + fa.str());
    if (fb != end_value(pattern.image_of_b))
        out.push_back("endpoint pattern " + pattern.str() + " violated: f(b) = " + fb.str());
    return out;
}

}  // namespace kneading
