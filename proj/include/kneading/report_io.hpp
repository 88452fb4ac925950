#pragma once

// CSV and JSON renderings of kneading tables, preimage sets, matches and reports.
// Rationals are written exactly unless `decimal` is requested; decimal output is
// lossy and meant for display and plot data only.

#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "kneading/config.hpp"
#include "kneading/conjugacy.hpp"
#include "kneading/symbolic.hpp"

namespace kneading {

inline std::string render(const Rational& r, bool decimal) {
    if (!decimal) return r.str();
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << r.to_double();
    return os.str();
}

inline const char* lossy_header() { return "# decimal rendering (lossy, display only)\n"; }

inline std::string kneading_csv(const KneadingTable& t) {
    std::ostringstream os;
    os << "n,j";
    for (int p = 0; p < t.depth; ++p) os << ",p" << p;
    os << '\n';
    for (const auto& row : t.rows) {
        os << row.n << ',' << row.j;
        for (const auto& l : row.itinerary.letters) os << ',' << l.str(t.modality);
        os << '\n';
    }
    return os.str();
}

inline json kneading_json(const KneadingTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json letters = json::array();
        for (const auto& l : row.itinerary.letters) letters.push_back(l.str(t.modality));
        rows.push_back({{"n", row.n}, {"j", row.j}, {"letters", letters}});
    }
    return {{"n_range", {t.n_lo, t.n_hi}}, {"depth", t.depth}, {"modality", t.modality}, {"rows", rows}};
}

/// Reads back the JSON form produced by kneading_json.
inline KneadingTable kneading_from_json(const json& j) {
    try {
        KneadingTable t;
        t.n_lo = j.at("n_range").at(0).get<long>();
        t.n_hi = j.at("n_range").at(1).get<long>();
        t.depth = j.at("depth").get<int>();
        t.modality = j.at("modality").get<int>();
        for (const auto& r : j.at("rows")) {
            KneadingRow row{r.at("n").get<long>(), r.at("j").get<int>(), {}};
            row.itinerary.level = row.n;
            for (const auto& l : r.at("letters")) row.itinerary.letters.push_back(Letter::parse(l.get<std::string>(), t.modality));
            row.itinerary.depth = static_cast<int>(row.itinerary.letters.size());
            t.rows.push_back(std::move(row));
        }
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed kneading table: ") + e.what());
    }
}

inline std::string mismatch_csv(const KneadingMismatch& m, int modality) {
    std::ostringstream os;
    os << "n,j,position,letter_a,letter_b\n"
       << m.n << ',' << m.j << ',' << m.position << ',' << m.a.str(modality) << ',' << m.b.str(modality) << '\n';
    return os.str();
}

inline json mismatch_json(const KneadingMismatch& m, int modality) {
    return {{"verdict", "mismatch"}, {"n", m.n}, {"j", m.j}, {"position", m.position},
            {"letter_a", m.a.str(modality)}, {"letter_b", m.b.str(modality)}};
}

inline std::string critical_set_csv(const CriticalSet& c, int modality, bool decimal = false) {
    std::ostringstream os;
    if (decimal) os << lossy_header();
    os << "x,word,target\n";
    for (const auto& p : c.points) os << render(p.x, decimal) << ',' << p.word.str(modality) << ',' << p.target << '\n';
    return os.str();
}

inline json critical_set_json(const CriticalSet& c, int modality) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({{"x", p.x.str()}, {"word", p.word.str(modality)}, {"target", p.target}});
    return {{"level", c.level}, {"depth", c.depth}, {"points", pts}};
}

inline std::string partition_csv(const Partition& p, int modality, bool decimal = false) {
    auto label = [](Boundary b) { return b == Boundary::A ? "a" : (b == Boundary::B ? "b" : "marked"); };
    std::ostringstream os;
    if (decimal) os << lossy_header();
    os << "index,lo,hi,lo_label,hi_label,word\n";
    for (std::size_t i = 0; i < p.intervals.size(); ++i) {
        const auto& iv = p.intervals[i];
        os << i + 1 << ',' << render(iv.span.lo, decimal) << ',' << render(iv.span.hi, decimal) << ','
           << label(iv.left) << ',' << label(iv.right) << ',' << iv.word.str(modality) << '\n';
    }
    return os.str();
}

inline std::string match_csv_header() { return "n,x_F,x_G,word,target\n"; }

inline std::string match_csv_rows(const MatchMap& m, int modality, bool decimal = false) {
    std::ostringstream os;
    for (const auto& [pf, pg] : m.pairs)
        os << m.level << ',' << render(pf.x, decimal) << ',' << render(pg.x, decimal) << ','
           << pf.word.str(modality) << ',' << pf.target << '\n';
    return os.str();
}

inline json match_json(const MatchMap& m, int modality) {
    json pairs = json::array();
    for (const auto& [pf, pg] : m.pairs)
        pairs.push_back({{"x_F", pf.x.str()}, {"x_G", pg.x.str()}, {"word", pf.word.str(modality)}, {"target", pf.target}});
    return {{"level", m.level}, {"depth", m.depth}, {"pairs", pairs}};
}

inline json mismatch_report_json(const MismatchReport& r) {
    return {{"verdict", "mismatch"}, {"level", r.level}, {"depth", r.depth}, {"position", r.position},
            {"reason", to_string(r.reason)}, {"detail", r.detail}};
}

inline std::string mismatch_report_csv(const MismatchReport& r) {
    std::ostringstream os;
    os << "level,depth,position,reason\n" << r.level << ',' << r.depth << ',' << r.position << ',' << to_string(r.reason) << '\n';
    return os.str();
}

inline std::string defect_csv_header() { return "n,k,defect,bound,marked_defect,common_images,evaluation_points\n"; }

inline std::string defect_csv_row(const DefectReport& d, bool decimal = false) {
    std::ostringstream os;
    os << d.level << ',' << d.depth << ',' << render(d.defect, decimal) << ',' << render(d.bound, decimal) << ','
       << render(d.marked_defect, decimal) << ',' << (d.common_images ? "true" : "false") << ','
       << d.evaluation_set_size << '\n';
    return os.str();
}

inline json defect_json(const DefectReport& d) {
    return {{"n", d.level},
            {"k", d.depth},
            {"defect", d.defect.str()},
            {"argmax", d.argmax.str()},
            {"bound", d.bound.str()},
            {"marked_defect", d.marked_defect.str()},
            {"common_images", d.common_images},
            {"evaluation_points", d.evaluation_set_size}};
}

inline json limit_report_json(const LimitPropertyReport& r) {
    json sup = json::array();
    for (std::size_t i = 0; i < r.sup_distances.size(); ++i)
        sup.push_back({{"n", i + 1}, {"sup_distance", r.sup_distances[i].str()}, {"min_abs_slope", r.min_slopes[i].str()}});
    json meshes = json::array();
    for (const auto& m : r.meshes) meshes.push_back({{"n", m.n}, {"k", m.k}, {"mesh", m.mesh.str()}});
    json orbits = json::array();
    for (const auto& o : r.turning_orbits) {
        json v = {{"turning_index", o.index}, {"steps_checked", o.steps_checked}};
        if (o.hit_step) {
            v["hit_step"] = *o.hit_step;
            v["hit_target"] = *o.hit_target;
        } else {
            v["verdict"] = "not periodic up to bound";
        }
        orbits.push_back(v);
    }
    return {{"bounds", {{"n_max", r.n_max}, {"k_max", r.k_max}, {"period_bound", r.period_bound}}},
            {"evidence_only", true},
            {"levels", sup},
            {"meshes", meshes},
            {"limit_turning_orbits", orbits},
            {"limit_min_abs_slope", r.limit_min_slope.str()},
            {"flags",
             {{"uniform_distance_decreasing", r.uniform_distance_decreasing},
              {"meshes_shrink", r.meshes_shrink},
              {"turning_points_not_periodic", r.turning_points_not_periodic},
              {"expanding", r.expanding}}}};
}

inline std::string limit_report_csv(const LimitPropertyReport& r, bool decimal = false) {
    std::ostringstream os;
    if (decimal) os << lossy_header();
    os << "# evidence only, checked up to n_max=" << r.n_max << ", k_max=" << r.k_max << ", P=" << r.period_bound << '\n';
    os << "n,sup_distance,min_abs_slope\n";
    for (std::size_t i = 0; i < r.sup_distances.size(); ++i)
        os << i + 1 << ',' << render(r.sup_distances[i], decimal) << ',' << render(r.min_slopes[i], decimal) << '\n';
    os << "n,k,mesh\n";
    for (const auto& m : r.meshes) os << m.n << ',' << m.k << ',' << render(m.mesh, decimal) << '\n';
    os << "turning_index,steps_checked,hit_step,hit_target\n";
    for (const auto& o : r.turning_orbits)
        os << o.index << ',' << o.steps_checked << ',' << (o.hit_step ? std::to_string(*o.hit_step) : "none") << ','
           << (o.hit_target ? std::to_string(*o.hit_target) : "none") << '\n';
    os << "flag,value\n"
       << "uniform_distance_decreasing," << r.uniform_distance_decreasing << '\n'
       << "meshes_shrink," << r.meshes_shrink << '\n'
       << "turning_points_not_periodic," << r.turning_points_not_periodic << '\n'
       << "expanding," << r.expanding << '\n';
    return os.str();
}

/// Two-column "x y" plot data of a PL graph.
inline std::string plot_data(const PiecewiseLinear& g, bool decimal) {
    std::ostringstream os;
    if (decimal) os << lossy_header();
    for (const auto& v : g.vertices()) os << render(v.x, decimal) << ' ' << render(v.y, decimal) << '\n';
    return os.str();
}

}  // namespace kneading
