#pragma once

/**
 * @file config.hpp
 * @brief JSON sequence configs.
 *
 * Schema (all numbers are rational strings such as "5/6"):
 *
 *   {
 *     "domain": ["0", "1"],
 *     "modality": 1,
 *     "endpoint_pattern": ["a", "a"],        // images of a and b; optional, default ["a","a"]
 *     "spec": {"builtin": "paper-f", "params": {"seed": "3"}}
 *           | {"prefix": [<vertex list>, ...], "tail": <vertex list>},
 *     "limit": <vertex list>                  // optional
 *   }
 *
 * A vertex list is [["x0","y0"], ["x1","y1"], ...]. The keys "note" and
 * "source" are informational and ignored.
 */

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "kneading/map_sequence.hpp"

namespace kneading {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }

inline json vertices_to_json(const PAMap& m) {
    json arr = json::array();
    for (const auto& v : m.vertices()) arr.push_back(json::array({v.x.str(), v.y.str()}));
    return arr;
}

namespace detail {

inline Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(where + ": expected a rational string");
}

inline std::vector<Vertex> vertices_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a vertex list");
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& p = j[i];
        std::string w = where + "[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) throw ParseError(w + ": expected an [x, y] pair");
        out.push_back({rational_from_json(p[0], w + ".x"), rational_from_json(p[1], w + ".y")});
    }
    return out;
}

inline EndpointPattern::End end_from_json(const json& j, const std::string& where) {
    if (j == "a") return EndpointPattern::End::A;
    if (j == "b") return EndpointPattern::End::B;
    throw ParseError(where + ": expected \"a\" or \"b\"");
}

}  // namespace detail

/// Parses and validates a sequence config. Throws ParseError for malformed documents and
/// ValidationError (with every violation) for well-formed documents describing invalid systems.
inline MapSequence parse_sequence_config(const json& doc) {
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (key != "domain" && key != "modality" && key != "endpoint_pattern" && key != "spec" && key != "limit" &&
            key != "note" && key != "source")
            throw ParseError("unknown config key '" + key + "'");
    if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 2)
        throw ParseError("domain: expected [lo, hi]");
    Rational lo = detail::rational_from_json(doc["domain"][0], "domain[0]");
    Rational hi = detail::rational_from_json(doc["domain"][1], "domain[1]");
    if (!(lo < hi)) throw ValidationError({"domain: lo must be < hi"});
    Interval domain(lo, hi);
    if (!doc.contains("modality") || !doc["modality"].is_number_integer()) throw ParseError("modality: expected an integer");
    int modality = doc["modality"].get<int>();
    EndpointPattern pattern;
    if (doc.contains("endpoint_pattern")) {
        const json& p = doc["endpoint_pattern"];
        if (!p.is_array() || p.size() != 2) throw ParseError("endpoint_pattern: expected [image of a, image of b]");
        pattern = {detail::end_from_json(p[0], "endpoint_pattern[0]"), detail::end_from_json(p[1], "endpoint_pattern[1]")};
    }
    if (!doc.contains("spec") || !doc["spec"].is_object()) throw ParseError("spec: expected an object");
    const json& spec = doc["spec"];

    if (spec.contains("builtin")) {
        if (!spec["builtin"].is_string()) throw ParseError("spec.builtin: expected a name");
        std::map<std::string, std::string> params;
        if (spec.contains("params")) {
            if (!spec["params"].is_object()) throw ParseError("spec.params: expected an object");
            for (const auto& [k, v] : spec["params"].items())
                params[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
        MapSequence seq = MapSequence::builtin(spec["builtin"].get<std::string>(), params);
        std::vector<std::string> violations;
        if (!(seq.domain() == domain)) violations.push_back("builtin families live on [0, 1]");
        if (seq.modality() != modality) violations.push_back("builtin families are unimodal");
        if (!(seq.endpoint_pattern() == pattern)) violations.push_back("builtin families use endpoint pattern (a->a, b->a)");
        if (doc.contains("limit")) violations.push_back("builtin families carry their own limit map");
        if (!violations.empty()) throw ValidationError(std::move(violations));
        return seq;
    }

    if (!spec.contains("tail")) throw ParseError("spec: expected either 'builtin' or 'prefix'/'tail'");
    std::vector<std::string> violations;
    auto build = [&](const json& j, const std::string& label) -> std::optional<PAMap> {
        auto verts = detail::vertices_from_json(j, label);
        try {
            PAMap m(std::move(verts));
            if (!(m.domain() == domain)) {
                violations.push_back(label + ": vertices span [" + m.domain().lo.str() + ", " + m.domain().hi.str() +
                                     "], domain is [" + domain.lo.str() + ", " + domain.hi.str() + "]");
                return std::nullopt;
            }
            return m;
        } catch (const MapError& e) {
            violations.push_back(label + ": " + e.what());
            return std::nullopt;
        }
    };
    std::vector<PAMap> prefix;
    if (spec.contains("prefix")) {
        if (!spec["prefix"].is_array()) throw ParseError("spec.prefix: expected a list of vertex lists");
        for (std::size_t i = 0; i < spec["prefix"].size(); ++i)
            if (auto m = build(spec["prefix"][i], "level " + std::to_string(i + 1))) prefix.push_back(*m);
    }
    auto tail = build(spec["tail"], "tail");
    std::optional<PAMap> limit;
    if (doc.contains("limit")) limit = build(doc["limit"], "limit");
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return MapSequence::explicit_sequence(std::move(prefix), *tail, modality, pattern, limit);
}

inline MapSequence parse_sequence_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_sequence_config(doc);
}

inline MapSequence load_sequence_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sequence_config(ss.str());
}

/// Editable config for a builtin: levels 1..levels written out explicitly, followed by
/// the limit map as constant tail (tent is already constant and gets an empty prefix).
inline json emit_example_config(const std::string& name, long levels = 64,
                                const std::map<std::string, std::string>& params = {}) {
    MapSequence seq = MapSequence::builtin(name, params);
    json doc;
    doc["domain"] = json::array({seq.domain().lo.str(), seq.domain().hi.str()});
    doc["modality"] = seq.modality();
    doc["endpoint_pattern"] = json::array({"a", "a"});
    json prefix = json::array();
    if (name != "tent")
        for (long n = 1; n <= levels; ++n) prefix.push_back(vertices_to_json(seq.level_map(n)));
    doc["spec"] = {{"prefix", prefix}, {"tail", vertices_to_json(*seq.declared_limit())}};
    json source = {{"builtin", name}};
    if (!params.empty()) source["params"] = params;
    doc["source"] = source;
    doc["note"] = name == "tent" ? "constant sequence of the slope-2 tent map"
                                 : "levels 1.." + std::to_string(levels) + " of builtin " + name +
                                       "; the tail is the limit map";
    return doc;
}

}  // namespace kneading
