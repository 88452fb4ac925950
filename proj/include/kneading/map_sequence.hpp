#pragma once

/**
 * @file map_sequence.hpp
 * @brief Finitely described nonautonomous systems (f_n)_{n>=1} on an interval.
 *
 * Two presentations are supported: an explicit prefix f_1..f_N followed by a
 * constant tail f_n = tail for n > N, and closed-form builtin families whose
 * level maps have exact rational coefficients in n.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "kneading/pa_map.hpp"

namespace kneading {

struct ExplicitPrefixThenConstant {
    std::vector<PAMap> prefix;
    PAMap tail;
};

/// Parameters of one member of the expanding family generated from a seed.
///
/// Level n has turning point c + dc/(n+1) and peak value 1 - dv/(n+1). When
/// `breaks` is set each branch carries one extra vertex placed so that both of
/// its segments keep slope > 1; the limit uses the same construction with
/// dc = dv = 0, so its turning orbit is c -> 1 -> 0 -> 0.
struct ExpandingSampleParams {
    std::uint64_t seed = 0;
    Rational c{1, 2};
    Rational dc{0};
    Rational dv{0};
    bool breaks = false;
    Rational left_pos{1, 2}, left_mix{1, 2};
    Rational right_pos{1, 2}, right_mix{1, 2};

    static ExpandingSampleParams from_seed(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
        ExpandingSampleParams p;
        p.seed = seed;
        p.c = Rational(draw(8, 16), 24);
        p.dc = Rational(draw(-4, 4), 48);
        p.dv = Rational(draw(0, 4), 24);
        p.breaks = draw(0, 3) != 0;
        p.left_pos = Rational(draw(2, 6), 8);
        p.left_mix = Rational(draw(2, 6), 8);
        p.right_pos = Rational(draw(2, 6), 8);
        p.right_mix = Rational(draw(2, 6), 8);
        return p;
    }

    PAMap map_for(const Rational& turn, const Rational& peak) const {
        std::vector<Vertex> v{{0, 0}};
        if (breaks) {
            Rational r = turn / peak;
            Rational mu = left_pos * r + left_mix * (1 - r);
            v.push_back({left_pos * turn, mu * peak});
        }
        v.push_back({turn, peak});
        if (breaks) {
            Rational r = (1 - turn) / peak;
            Rational mu = right_pos * r + right_mix * (1 - r);
            // measured from the right end: x = 1 - pos*(1-turn), y = mu*peak
            v.push_back({1 - right_pos * (1 - turn), mu * peak});
        }
        v.push_back({1, 0});
        return PAMap(Interval(0, 1), std::move(v));
    }

    PAMap level(long n) const { return map_for(c + dc / Rational(n + 1), 1 - dv / Rational(n + 1)); }
    PAMap limit() const { return map_for(c, 1); }
};

struct BuiltinFamily {
    std::string name;
    std::map<std::string, std::string> params;
    ExpandingSampleParams sample;  // only meaningful for full-family-M-sample
};

inline const std::vector<std::string>& builtin_family_names() {
    static const std::vector<std::string> names{"paper-f", "paper-g", "paper-q", "tent", "full-family-M-sample"};
    return names;
}

inline PAMap tent_map() { return PAMap(Interval(0, 1), {{0, 0}, {Rational(1, 2), 1}, {1, 0}}); }

class MapSequence {
public:
    using Spec = std::variant<ExplicitPrefixThenConstant, BuiltinFamily>;

    /// Builds and validates an explicit prefix+tail sequence. Throws ValidationError with every violation.
    static MapSequence explicit_sequence(std::vector<PAMap> prefix, PAMap tail, int modality,
                                         EndpointPattern pattern, std::optional<PAMap> limit = std::nullopt) {
        MapSequence s;
        s.domain_ = tail.domain();
        s.modality_ = modality;
        s.pattern_ = pattern;
        std::vector<std::string> violations;
        auto check = [&](const PAMap& m, const std::string& label) {
            if (!(m.domain() == s.domain_)) {
                violations.push_back(label + ": domain differs from the tail domain");
                return;
            }
            for (auto& v : validate(m, modality, pattern)) violations.push_back(label + ": " + v);
        };
        for (std::size_t i = 0; i < prefix.size(); ++i) check(prefix[i], "level " + std::to_string(i + 1));
        check(tail, "tail");
        if (limit && !(*limit == tail)) violations.push_back("declared limit must equal the constant tail");
        if (!violations.empty()) throw ValidationError(std::move(violations));
        s.declared_limit_ = limit ? limit : std::optional<PAMap>(tail);
        s.spec_ = ExplicitPrefixThenConstant{std::move(prefix), std::move(tail)};
        return s;
    }

    static MapSequence constant(PAMap map, int modality = 1, EndpointPattern pattern = EndpointPattern::unimodal()) {
        return explicit_sequence({}, std::move(map), modality, pattern);
    }

    /// paper-f, paper-g, paper-q, tent, full-family-M-sample (params: seed).
    static MapSequence builtin(const std::string& name, const std::map<std::string, std::string>& params = {}) {
        MapSequence s;
        s.domain_ = Interval(0, 1);
        s.modality_ = 1;
        s.pattern_ = EndpointPattern::unimodal();
        BuiltinFamily fam{name, params, {}};
        if (name == "paper-f" || name == "paper-q" || name == "tent") {
            s.declared_limit_ = tent_map();
        } else if (name == "paper-g") {
            s.declared_limit_ = PAMap(Interval(0, 1), {{0, 0}, {Rational(3, 4), 1}, {1, 0}});
        } else if (name == "full-family-M-sample") {
            std::uint64_t seed = 0;
            if (auto it = params.find("seed"); it != params.end()) {
                try {
                    seed = std::stoull(it->second);
                } catch (const std::exception&) {
                    throw ParseError("seed must be a nonnegative integer, got '" + it->second + "'");
                }
            }
            fam.sample = ExpandingSampleParams::from_seed(seed);
            s.declared_limit_ = fam.sample.limit();
        } else {
            throw UnknownFamily("unknown builtin family '" + name + "'");
        }
        s.spec_ = std::move(fam);
        return s;
    }

    const Interval& domain() const noexcept { return domain_; }
    int modality() const noexcept { return modality_; }
    const EndpointPattern& endpoint_pattern() const noexcept { return pattern_; }
    const Spec& spec() const noexcept { return spec_; }
    const std::optional<PAMap>& declared_limit() const noexcept { return declared_limit_; }

    bool is_builtin() const noexcept { return std::holds_alternative<BuiltinFamily>(spec_); }

    /// For explicit sequences, the first level served by the constant tail.
    std::optional<long> tail_start() const {
        if (auto* e = std::get_if<ExplicitPrefixThenConstant>(&spec_)) return static_cast<long>(e->prefix.size()) + 1;
        return std::nullopt;
    }

    PAMap level_map(long n) const {
        if (n < 1) throw DomainError("level index must be >= 1, got " + std::to_string(n));
        if (auto* e = std::get_if<ExplicitPrefixThenConstant>(&spec_)) {
            auto idx = static_cast<std::size_t>(n - 1);
            return idx < e->prefix.size() ? e->prefix[idx] : e->tail;
        }
        const auto& fam = std::get<BuiltinFamily>(spec_);
        const Rational N(n);
        if (fam.name == "paper-f") return PAMap(Interval(0, 1), {{0, 0}, {(N + 4) / (2 * N + 4), 1}, {1, 0}});
        if (fam.name == "paper-g") return PAMap(Interval(0, 1), {{0, 0}, {(3 * N - 1) / (4 * N + 4), 1}, {1, 0}});
        if (fam.name == "paper-q") return PAMap(Interval(0, 1), {{0, 0}, {Rational(1, 2), (N + 4) / (N + 5)}, {1, 0}});
        if (fam.name == "tent") return tent_map();
        return fam.sample.level(n);
    }

    /// f_n^steps(x) = f_{n+steps-1} ∘ ... ∘ f_n (x); steps = 0 is the identity.
    Rational iterate(long n, long steps, Rational x) const {
        if (!domain_.contains(x)) throw DomainError("x = " + x.str() + " outside the system's domain");
        for (long m = 0; m < steps; ++m) x = level_map(n + m)(x);
        return x;
    }

private:
    MapSequence() = default;

    Interval domain_;
    int modality_ = 1;
    EndpointPattern pattern_;
    Spec spec_;
    std::optional<PAMap> declared_limit_;
};

inline MapSequence builtin_family(const std::string& name, const std::map<std::string, std::string>& params = {}) {
    return MapSequence::builtin(name, params);
}

}  // namespace kneading
