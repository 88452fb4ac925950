#pragma once

// Command-line front end. Exit codes: 0 success / Equal, 2 computed negative
// verdict (kneading mismatch, failed match), 1 error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kneading/kneading.hpp"

namespace kneading::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;
constexpr int kMaxDefaultDepth = 24;

struct LevelRange {
    long lo = 1;
    long hi = 1;

    static LevelRange parse(const std::string& s) {
        LevelRange r;
        try {
            auto dots = s.find("..");
            if (dots == std::string::npos) {
                r.lo = r.hi = std::stol(s);
            } else {
                r.lo = std::stol(s.substr(0, dots));
                r.hi = std::stol(s.substr(dots + 2));
            }
        } catch (const std::exception&) {
            throw ParseError("bad level range '" + s + "' (expected N or A..B)");
        }
        if (r.lo < 1 || r.hi < r.lo) throw ParseError("level range '" + s + "' must satisfy 1 <= A <= B");
        return r;
    }

    std::string str() const { return std::to_string(lo) + ".." + std::to_string(hi); }
};

/// A builtin name, optionally with parameters ("full-family-M-sample:seed=3"), or a config path.
inline MapSequence resolve_sequence(const std::string& ref) {
    std::string name = ref;
    std::map<std::string, std::string> params;
    if (auto colon = ref.find(':'); colon != std::string::npos) {
        name = ref.substr(0, colon);
        std::stringstream ss(ref.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw ParseError("bad builtin parameter '" + kv + "'");
            params[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
    }
    for (const auto& b : builtin_family_names())
        if (b == name) return MapSequence::builtin(name, params);
    if (std::filesystem::exists(ref)) return load_sequence_config(ref);
    throw ParseError("'" + ref + "' is neither a builtin family nor a readable config file");
}

struct Options {
    std::string seq, a, b;
    std::string range = "1";
    int depth = 1;
    std::string format = "csv";
    std::string out;
    std::string plot_dir;
    std::string out_dir;
    std::string name;
    bool decimal = false;
    bool allow_deep = false;
    unsigned threads = 1;
    int grid = 0;
    long levels = 10;
    long n_max = 10;
    long mesh_levels = 0;
    int period = 20;
    std::string seed;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Kneading sequences and finite-depth conjugacies of nonautonomous interval systems", "kneading"};
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all");

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--format", opt_.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
            sub->add_option("--out", opt_.out, "Output file (default: standard output)");
            sub->add_flag("--decimal", opt_.decimal, "Render numbers as decimals (lossy, display only)");
        };
        auto add_pair = [&](CLI::App* sub) {
            sub->add_option("system_a", opt_.a, "First system (builtin name or config path)");
            sub->add_option("system_b", opt_.b, "Second system");
            sub->add_option("--a", opt_.a, "First system");
            sub->add_option("--b", opt_.b, "Second system");
        };
        auto add_range_depth = [&](CLI::App* sub) {
            sub->add_option("--n", opt_.range, "Level range N or A..B");
            sub->add_option("--depth", opt_.depth, "Depth k")->check(CLI::PositiveNumber);
        };

        auto* validate = app.add_subcommand("validate", "Validate a sequence config");
        validate->add_option("system", opt_.seq, "Builtin name or config path")->required();
        validate->add_option("--levels", opt_.levels, "Levels to check")->check(CLI::PositiveNumber);

        auto* kneading = app.add_subcommand("kneading", "Kneading table of one system");
        kneading->add_option("system", opt_.seq, "Builtin name or config path");
        kneading->add_option("--seq", opt_.seq, "Builtin name or config path");
        add_range_depth(kneading);
        kneading->add_option("--threads", opt_.threads, "Worker threads")->check(CLI::PositiveNumber);
        add_common(kneading);

        auto* compare = app.add_subcommand("compare", "Compare the kneading tables of two systems");
        add_pair(compare);
        add_range_depth(compare);
        compare->add_option("--threads", opt_.threads, "Worker threads")->check(CLI::PositiveNumber);
        add_common(compare);

        auto* match = app.add_subcommand("match", "Construct and verify the order-matching maps h_n^k");
        add_pair(match);
        add_range_depth(match);
        match->add_flag("--allow-deep", opt_.allow_deep, "Permit depth > 24");
        add_common(match);

        auto* conjugate = app.add_subcommand("conjugate", "Emit PL extensions of h_n^k");
        add_pair(conjugate);
        add_range_depth(conjugate);
        conjugate->add_flag("--allow-deep", opt_.allow_deep, "Permit depth > 24");
        conjugate->add_option("--plot-dir", opt_.plot_dir, "Write h_<n>.txt plot data here");
        add_common(conjugate);

        auto* defect_cmd = app.add_subcommand("defect", "Conjugacy defect table over n and k = 2..depth");
        add_pair(defect_cmd);
        add_range_depth(defect_cmd);
        defect_cmd->add_flag("--allow-deep", opt_.allow_deep, "Permit depth > 24");
        defect_cmd->add_option("--grid", opt_.grid, "Extra evaluation points per partition interval")
            ->check(CLI::NonNegativeNumber);
        defect_cmd->add_option("--plot-dir", opt_.plot_dir, "Write defect_n<n>.txt plot data here");
        add_common(defect_cmd);

        auto* limit = app.add_subcommand("limit-check", "Limit-property evidence for one system");
        limit->add_option("system", opt_.seq, "Builtin name or config path");
        limit->add_option("--seq", opt_.seq, "Builtin name or config path");
        limit->add_option("--n-max", opt_.n_max, "Levels for uniform distance and expansion")->check(CLI::PositiveNumber);
        limit->add_option("--depth", opt_.depth, "Largest mesh depth k")->check(CLI::PositiveNumber);
        limit->add_option("--period", opt_.period, "Period bound P")->check(CLI::PositiveNumber);
        limit->add_option("--mesh-levels", opt_.mesh_levels, "Levels with mesh tables (default n-max)");
        limit->add_flag("--allow-deep", opt_.allow_deep, "Permit depth > 24");
        add_common(limit);

        auto* example = app.add_subcommand("example", "Emit builtin configs and a reproduction script");
        example->add_option("--name", opt_.name, "Builtin to emit as a single config");
        example->add_option("--seed", opt_.seed, "Seed for full-family-M-sample");
        example->add_option("--levels", opt_.levels, "Explicit levels written per config")->check(CLI::PositiveNumber);
        example->add_option("--out", opt_.out, "Config output file (with --name)");
        example->add_option("--out-dir", opt_.out_dir, "Directory for all example configs and reproduce.sh");

        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        try {
            app.parse(std::move(args));
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e, out_, err_);
            return code == 0 ? kExitOk : kExitError;
        }

        try {
            if (validate->parsed()) return cmd_validate();
            if (kneading->parsed()) return cmd_kneading();
            if (compare->parsed()) return cmd_compare();
            if (match->parsed()) return cmd_match();
            if (conjugate->parsed()) return cmd_conjugate();
            if (defect_cmd->parsed()) return cmd_defect();
            if (limit->parsed()) return cmd_limit();
            if (example->parsed()) return cmd_example();
        } catch (const ValidationError& e) {
            err_ << "error: " << e.what() << '\n';
            return kExitError;
        } catch (const Error& e) {
            err_ << "error: " << e.what() << '\n';
            return kExitError;
        } catch (const std::exception& e) {
            err_ << "internal error: " << e.what() << '\n';
            return kExitError;
        }
        return kExitError;
    }

private:
    void emit(const std::string& text) {
        if (opt_.out.empty()) {
            out_ << text;
            return;
        }
        write_file(opt_.out, text);
    }

    static void write_file(const std::filesystem::path& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write '" + path.string() + "'");
        f << text;
    }

    bool json_out() const { return opt_.format == "json"; }

    void require_pair() const {
        if (opt_.a.empty() || opt_.b.empty()) throw ParseError("two systems are required (positional or --a/--b)");
    }

    void require_seq() const {
        if (opt_.seq.empty()) throw ParseError("a system is required (positional or --seq)");
    }

    void check_depth_guard(int depth) const {
        if (depth > kMaxDefaultDepth && !opt_.allow_deep)
            throw ParseError("depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxDefaultDepth) +
                             "; preimage sets grow like (l+1)^k, pass --allow-deep to proceed");
    }

    int cmd_validate() {
        MapSequence seq = resolve_sequence(opt_.seq);
        std::vector<std::string> violations;
        for (long n = 1; n <= opt_.levels; ++n)
            for (auto& v : validate(seq.level_map(n), seq.modality(), seq.endpoint_pattern()))
                violations.push_back("level " + std::to_string(n) + ": " + v);
        if (!violations.empty()) throw ValidationError(std::move(violations));
        out_ << "ok: " << opt_.seq << " is a valid " << seq.modality() << "-modal system with endpoint pattern "
             << seq.endpoint_pattern().str() << " (levels 1.." << opt_.levels << " checked)\n";
        return kExitOk;
    }

    int cmd_kneading() {
        require_seq();
        LevelRange r = LevelRange::parse(opt_.range);
        MapSequence seq = resolve_sequence(opt_.seq);
        KneadingTable t = kneading_table(seq, r.lo, r.hi, opt_.depth, opt_.threads);
        emit(json_out() ? kneading_json(t).dump(2) + "\n" : kneading_csv(t));
        return kExitOk;
    }

    int cmd_compare() {
        require_pair();
        LevelRange r = LevelRange::parse(opt_.range);
        MapSequence fa = resolve_sequence(opt_.a);
        MapSequence fb = resolve_sequence(opt_.b);
        if (fa.modality() != fb.modality()) throw ModalityMismatch("systems have different modalities");
        KneadingTable ta = kneading_table(fa, r.lo, r.hi, opt_.depth, opt_.threads);
        KneadingTable tb = kneading_table(fb, r.lo, r.hi, opt_.depth, opt_.threads);
        KneadingComparison c = compare_kneading(ta, tb);
        const std::string scope = "(" + r.str() + ", " + std::to_string(opt_.depth) + ")";
        if (auto* m = std::get_if<KneadingMismatch>(&c)) {
            out_ << "Mismatch at (n=" << m->n << ", j=" << m->j << ", position=" << m->position
                 << "): " << m->a.str(ta.modality) << " vs " << m->b.str(ta.modality) << '\n';
            if (!opt_.out.empty())
                write_file(opt_.out, json_out() ? mismatch_json(*m, ta.modality).dump(2) + "\n" : mismatch_csv(*m, ta.modality));
            return kExitNegative;
        }
        out_ << "Equal up to " << scope << '\n';
        if (!opt_.out.empty()) {
            json verdict = {{"verdict", "equal"}, {"n_range", {r.lo, r.hi}}, {"depth", opt_.depth}};
            write_file(opt_.out, json_out() ? verdict.dump(2) + "\n"
                                            : "verdict,n_lo,n_hi,depth\nequal," + std::to_string(r.lo) + "," +
                                                  std::to_string(r.hi) + "," + std::to_string(opt_.depth) + "\n");
        }
        return kExitOk;
    }

    // Runs match_construct for each level; returns the matches or writes the mismatch.
    std::optional<std::vector<MatchMap>> matches(const MapSequence& F, const MapSequence& G, const LevelRange& r) {
        std::vector<MatchMap> out;
        for (long n = r.lo; n <= r.hi; ++n) {
            MatchResult res = match_construct(F, G, n, opt_.depth);
            if (auto* rep = std::get_if<MismatchReport>(&res)) {
                err_ << "no combinatorial match at level " << n << ": divergence at level " << rep->level << ", depth "
                     << rep->depth << ", rank " << rep->position << " (" << to_string(rep->reason) << "): " << rep->detail
                     << '\n';
                emit(json_out() ? mismatch_report_json(*rep).dump(2) + "\n" : mismatch_report_csv(*rep));
                return std::nullopt;
            }
            out.push_back(std::move(std::get<MatchMap>(res)));
        }
        return out;
    }

    int cmd_match() {
        require_pair();
        check_depth_guard(opt_.depth);
        LevelRange r = LevelRange::parse(opt_.range);
        MapSequence F = resolve_sequence(opt_.a);
        MapSequence G = resolve_sequence(opt_.b);
        auto ms = matches(F, G, r);
        if (!ms) return kExitNegative;
        if (json_out()) {
            json arr = json::array();
            for (const auto& m : *ms) arr.push_back(match_json(m, F.modality()));
            emit(arr.dump(2) + "\n");
        } else {
            std::string text = opt_.decimal ? lossy_header() : "";
            text += match_csv_header();
            for (const auto& m : *ms) text += match_csv_rows(m, F.modality(), opt_.decimal);
            emit(text);
        }
        return kExitOk;
    }

    int cmd_conjugate() {
        require_pair();
        check_depth_guard(opt_.depth);
        LevelRange r = LevelRange::parse(opt_.range);
        MapSequence F = resolve_sequence(opt_.a);
        MapSequence G = resolve_sequence(opt_.b);
        auto ms = matches(F, G, r);
        if (!ms) return kExitNegative;
        std::vector<ConjugacyApprox> hs;
        for (const auto& m : *ms) hs.push_back(extend_match(m, F.domain(), G.domain()));
        if (!opt_.plot_dir.empty()) {
            std::filesystem::create_directories(opt_.plot_dir);
            for (const auto& h : hs)
                write_file(std::filesystem::path(opt_.plot_dir) / ("h_" + std::to_string(h.level) + ".txt"),
                           plot_data(h.map, opt_.decimal));
        }
        if (json_out()) {
            json arr = json::array();
            for (const auto& h : hs) {
                json v = json::array();
                for (const auto& p : h.map.vertices()) v.push_back(json::array({p.x.str(), p.y.str()}));
                arr.push_back({{"n", h.level}, {"depth", h.depth}, {"vertices", v}, {"max_slope", h.max_slope().str()}});
            }
            emit(arr.dump(2) + "\n");
        } else {
            std::string text = opt_.decimal ? lossy_header() : "";
            text += "n,x,y\n";
            for (const auto& h : hs)
                for (const auto& p : h.map.vertices())
                    text += std::to_string(h.level) + "," + render(p.x, opt_.decimal) + "," + render(p.y, opt_.decimal) + "\n";
            emit(text);
        }
        return kExitOk;
    }

    int cmd_defect() {
        require_pair();
        check_depth_guard(opt_.depth);
        if (opt_.depth < 2) throw ParseError("defect needs --depth >= 2");
        LevelRange r = LevelRange::parse(opt_.range);
        MapSequence F = resolve_sequence(opt_.a);
        MapSequence G = resolve_sequence(opt_.b);
        std::vector<DefectReport> rows;
        for (long n = r.lo; n <= r.hi; ++n) {
            for (int k = 2; k <= opt_.depth; ++k) {
                MatchResult probe = match_construct(F, G, n, k);
                if (auto* rep = std::get_if<MismatchReport>(&probe)) {
                    err_ << "no combinatorial match at level " << n << ", depth " << k << " (" << to_string(rep->reason)
                         << "): " << rep->detail << '\n';
                    emit(json_out() ? mismatch_report_json(*rep).dump(2) + "\n" : mismatch_report_csv(*rep));
                    return kExitNegative;
                }
                rows.push_back(defect(F, G, n, k, opt_.grid));
            }
        }
        if (!opt_.plot_dir.empty()) {
            std::filesystem::create_directories(opt_.plot_dir);
            for (long n = r.lo; n <= r.hi; ++n) {
                std::string text = opt_.decimal ? lossy_header() : "";
                for (const auto& d : rows)
                    if (d.level == n)
                        text += std::to_string(d.depth) + " " + render(d.defect, opt_.decimal) + " " +
                                render(d.bound, opt_.decimal) + "\n";
                write_file(std::filesystem::path(opt_.plot_dir) / ("defect_n" + std::to_string(n) + ".txt"), text);
            }
        }
        if (json_out()) {
            json arr = json::array();
            for (const auto& d : rows) arr.push_back(defect_json(d));
            emit(arr.dump(2) + "\n");
        } else {
            std::string text = opt_.decimal ? lossy_header() : "";
            text += defect_csv_header();
            for (const auto& d : rows) text += defect_csv_row(d, opt_.decimal);
            emit(text);
        }
        return kExitOk;
    }

    int cmd_limit() {
        require_seq();
        check_depth_guard(opt_.depth);
        MapSequence seq = resolve_sequence(opt_.seq);
        std::optional<long> mesh_levels;
        if (opt_.mesh_levels > 0) mesh_levels = opt_.mesh_levels;
        LimitPropertyReport rep = limit_property_check(seq, opt_.n_max, opt_.depth, opt_.period, mesh_levels);
        emit(json_out() ? limit_report_json(rep).dump(2) + "\n" : limit_report_csv(rep, opt_.decimal));
        return kExitOk;
    }

    int cmd_example() {
        std::map<std::string, std::string> params;
        if (!opt_.seed.empty()) params["seed"] = opt_.seed;
        if (!opt_.name.empty()) {
            emit(emit_example_config(opt_.name, opt_.levels, params).dump(2) + "\n");
            return kExitOk;
        }
        if (opt_.out_dir.empty()) throw ParseError("example needs --name or --out-dir");
        std::filesystem::path dir(opt_.out_dir);
        std::filesystem::create_directories(dir);
        for (const std::string name : {"paper-f", "paper-g", "paper-q", "tent"})
            write_file(dir / (name + ".json"), emit_example_config(name, opt_.levels).dump(2) + "\n");
        write_file(dir / "reproduce.sh", reproduction_script());
        std::filesystem::permissions(dir / "reproduce.sh", std::filesystem::perms::owner_exec, std::filesystem::perm_options::add);
        out_ << "wrote paper-f.json, paper-g.json, paper-q.json, tent.json and reproduce.sh to " << dir.string() << '\n';
        return kExitOk;
    }

    static std::string reproduction_script() {
        return R"SH(#!/bin/sh
# Reproduces the verdicts for the three example systems f_n, g_n, q_n.
# Usage: ./reproduce.sh [path-to-kneading-binary]
K=${1:-kneading}
DIR=$(dirname "$0")
status=0

echo "== f vs g: kneading sequences agree (expect exit 0)"
$K compare paper-f paper-g --n 1..50 --depth 30 || status=1

echo "== f vs q: kneading sequences differ (expect exit 2)"
$K compare paper-f paper-q --n 1..5 --depth 6
[ $? -eq 2 ] || status=1

echo "== h_1^2 between f and g"
$K match paper-f paper-g --n 1 --depth 2 || status=1

echo "== conjugacy defect, f vs g"
$K defect paper-f paper-g --n 1..5 --depth 12 || status=1

echo "== limit-property evidence"
for s in paper-f paper-g paper-q; do
  $K limit-check $s --n-max 20 --depth 8 --period 20 --mesh-levels 3 >/dev/null || status=1
done

echo "== the editable configs reproduce the builtins on the written levels"
$K compare "$DIR/paper-f.json" paper-f --n 1..40 --depth 20 || status=1
$K compare "$DIR/paper-g.json" paper-g --n 1..40 --depth 20 || status=1

exit $status
)SH";
    }

    std::ostream& out_;
    std::ostream& err_;
    Options opt_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return Runner(out, err).run(argc, argv);
}

}  // namespace kneading::cli
