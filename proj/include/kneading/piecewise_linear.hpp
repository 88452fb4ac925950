#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kneading/rational.hpp"

namespace kneading {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() : lo(0), hi(1) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (!(lo < hi)) throw MapError("interval requires lo < hi, got [" + lo.str() + ", " + hi.str() + "]");
    }

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational length() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Vertex {
    Rational x;
    Rational y;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Continuous piecewise-affine function on [x_0, x_N], given by its vertices.
///
/// Vertex x-coordinates are strictly increasing. Nothing is assumed about y.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
        if (v_.size() < 2) throw MapError("a piecewise-linear map needs at least two vertices");
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (!(v_[i - 1].x < v_[i].x))
                throw MapError("vertex x-coordinates must be strictly increasing (at index " +
                               std::to_string(i) + ")");
        run_.reserve(v_.size() - 1);
        rise_.reserve(v_.size() - 1);
        for (std::size_t i = 1; i < v_.size(); ++i) {
            rise_.push_back((v_[i].y - v_[i - 1].y) / (v_[i].x - v_[i - 1].x));
            run_.push_back(v_[i].y == v_[i - 1].y ? Rational(0) : (v_[i].x - v_[i - 1].x) / (v_[i].y - v_[i - 1].y));
        }
    }

    const std::vector<Vertex>& vertices() const noexcept { return v_; }
    std::size_t segment_count() const noexcept { return v_.size() - 1; }
    const Rational& x_min() const { return v_.front().x; }
    const Rational& x_max() const { return v_.back().x; }

    /// Index s of a segment [v_s.x, v_{s+1}.x] containing x (leftmost at shared vertices).
    std::size_t segment_of(const Rational& x) const {
        if (x < x_min() || x > x_max())
            throw DomainError("x = " + x.str() + " outside [" + x_min().str() + ", " + x_max().str() + "]");
        auto it = std::lower_bound(v_.begin() + 1, v_.end(), x,
                                   [](const Vertex& v, const Rational& t) { return v.x < t; });
        auto s = static_cast<std::size_t>(it - v_.begin()) - 1;
        return std::min(s, segment_count() - 1);
    }

    const Rational& slope(std::size_t s) const { return rise_[s]; }

    Rational operator()(const Rational& x) const {
        std::size_t s = segment_of(x);
        const Vertex& p = v_[s];
        if (x == p.x) return p.y;
        const Vertex& r = v_[s + 1];
        if (x == r.x) return r.y;
        return p.y + (x - p.x) * rise_[s];
    }

    /// Unique x in segments [first, last] with f(x) = y, assuming f strictly monotone there.
    std::optional<Rational> solve_monotone(std::size_t first, std::size_t last, const Rational& y) const {
        const Rational& y0 = v_[first].y;
        const Rational& y1 = v_[last + 1].y;
        bool increasing = y0 < y1;
        const Rational& lo = increasing ? y0 : y1;
        const Rational& hi = increasing ? y1 : y0;
        if (y < lo || y > hi) return std::nullopt;
        // binary search on the monotone vertex values
        std::size_t a = first, b = last + 1;
        while (b - a > 1) {
            std::size_t mid = (a + b) / 2;
            bool left = increasing ? y <= v_[mid].y : y >= v_[mid].y;
            (left ? b : a) = mid;
        }
        const Vertex& p = v_[a];
        const Vertex& r = v_[b];
        if (y == p.y) return p.x;
        if (y == r.y) return r.x;
        return p.x + (y - p.y) * run_[a];
    }

    /// outer ∘ inner; the range of inner must lie inside outer's domain.
    friend PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner) {
        std::vector<Rational> xs;
        for (const auto& v : inner.v_) xs.push_back(v.x);
        for (std::size_t s = 0; s < inner.segment_count(); ++s) {
            const Vertex& p = inner.v_[s];
            const Vertex& r = inner.v_[s + 1];
            if (p.y == r.y) continue;
            const Rational& lo = min(p.y, r.y);
            const Rational& hi = max(p.y, r.y);
            for (const auto& ov : outer.v_) {
                if (lo < ov.x && ov.x < hi) xs.push_back(p.x + (ov.x - p.y) * (r.x - p.x) / (r.y - p.y));
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<Vertex> out;
        out.reserve(xs.size());
        for (auto& x : xs) out.push_back({x, outer(inner(x))});
        return PiecewiseLinear(std::move(out)).simplified();
    }

    /// Drops vertices interior to a straight run.
    PiecewiseLinear simplified() const {
        std::vector<Vertex> out{v_.front()};
        for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
            const Vertex& p = out.back();
            const Vertex& q = v_[i];
            const Vertex& r = v_[i + 1];
            if ((q.y - p.y) * (r.x - q.x) != (r.y - q.y) * (q.x - p.x)) out.push_back(q);
        }
        out.push_back(v_.back());
        return PiecewiseLinear(std::move(out));
    }

    /// Inverse of a strictly increasing map.
    PiecewiseLinear inverse_increasing() const {
        std::vector<Vertex> out;
        out.reserve(v_.size());
        for (const auto& v : v_) out.push_back({v.y, v.x});
        return PiecewiseLinear(std::move(out));
    }

    bool strictly_increasing() const {
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (!(v_[i - 1].y < v_[i].y)) return false;
        return true;
    }

    friend bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b) { return a.v_ == b.v_; }

private:
    std::vector<Vertex> v_;
    std::vector<Rational> rise_;  // dy/dx per segment
    std::vector<Rational> run_;   // dx/dy per segment, 0 on flat segments
};

}  // namespace kneading
