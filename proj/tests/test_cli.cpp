#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "kneading");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = kneading::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("kneading_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, CompareEqual) {
    Result r = run({"compare", "paper-f", "paper-g", "--n", "1..50", "--depth", "30"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "Equal up to (1..50, 30)\n");
    Result named = run({"compare", "--a", "paper-f", "--b", "paper-g", "--n", "1..5", "--depth", "6"});
    EXPECT_EQ(named.code, 0);
}

TEST(Cli, CompareMismatch) {
    Result r = run({"compare", "paper-f", "paper-q", "--n", "1..5", "--depth", "6"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.out, "Mismatch at (n=1, j=1, position=3): L vs C\n");
}

TEST(Cli, Kneading) {
    Result r = run({"kneading", "paper-f", "--n", "1..2", "--depth", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,j,p0,p1,p2,p3,p4\n1,1,C,R,L,L,L\n2,1,C,R,L,L,L\n");
    Result q = run({"kneading", "--seq", "paper-q", "--n", "1", "--depth", "4", "--format", "json"});
    EXPECT_EQ(q.code, 0);
    auto j = nlohmann::json::parse(q.out);
    EXPECT_EQ(j["rows"][0]["letters"], nlohmann::json::parse(R"(["C","R","L","C"])"));
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
    Result one = run({"kneading", "full-family-M-sample:seed=7", "--n", "1..30", "--depth", "16", "--threads", "1"});
    Result four = run({"kneading", "full-family-M-sample:seed=7", "--n", "1..30", "--depth", "16", "--threads", "4"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
}

TEST(Cli, Match) {
    Result r = run({"match", "paper-f", "paper-g", "--n", "1", "--depth", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,x_F,x_G,word,target\n1,5/8,5/48,-,1\n1,5/6,1/4,,1\n1,7/8,11/16,+,1\n");
    Result bad = run({"match", "paper-f", "paper-q", "--n", "1", "--depth", "5"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("no combinatorial match"), std::string::npos);
    Result deep = run({"match", "paper-f", "paper-g", "--n", "1", "--depth", "25"});
    EXPECT_EQ(deep.code, 1);
    EXPECT_NE(deep.err.find("--allow-deep"), std::string::npos);
}

TEST(Cli, ConjugateAndDefect) {
    auto dir = scratch("plots");
    Result c = run({"conjugate", "paper-f", "paper-g", "--n", "1", "--depth", "2", "--plot-dir", dir.string()});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(slurp(dir / "h_1.txt"), "0 0\n5/8 5/48\n5/6 1/4\n7/8 11/16\n1 1\n");

    Result d = run({"defect", "paper-f", "paper-g", "--n", "1", "--depth", "3"});
    EXPECT_EQ(d.code, 0);
    std::istringstream lines(d.out);
    std::string header, row2;
    std::getline(lines, header);
    std::getline(lines, row2);
    EXPECT_EQ(header, "n,k,defect,bound,marked_defect,common_images,evaluation_points");
    EXPECT_EQ(row2.substr(0, 4), "1,2,");
    EXPECT_NE(row2.find(",7/12,"), std::string::npos);
}

TEST(Cli, LimitCheck) {
    Result r = run({"limit-check", "tent", "--n-max", "3", "--depth", "6", "--period", "20", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("limit_turning_orbits"));
    EXPECT_EQ(j["flags"]["turning_points_not_periodic"], true);
    EXPECT_EQ(j["flags"]["uniform_distance_decreasing"], true);
}

TEST(Cli, ValidateAndErrors) {
    EXPECT_EQ(run({"validate", "paper-g"}).code, 0);
    EXPECT_EQ(run({"validate", "paper-nope"}).code, 1);
    EXPECT_EQ(run({"compare", "paper-f", "--n", "1..3", "--depth", "3"}).code, 1);
    EXPECT_EQ(run({"compare", "paper-f", "paper-g", "--n", "3..1", "--depth", "3"}).code, 1);
    EXPECT_EQ(run({"nonsense"}).code, 1);

    auto dir = scratch("bad");
    std::ofstream(dir / "bad.json") << R"({"domain":["0","1"],"modality":1,
        "spec":{"prefix":[[["0","0"],["1/2","1"],["1","1/2"]]],"tail":[["0","0"],["1/2","1"],["1","0"]]}})";
    Result v = run({"validate", (dir / "bad.json").string()});
    EXPECT_EQ(v.code, 1);
    EXPECT_NE(v.err.find("level 1"), std::string::npos);
    std::ofstream(dir / "broken.json") << "{";
    EXPECT_EQ(run({"kneading", (dir / "broken.json").string(), "--n", "1", "--depth", "2"}).code, 1);
}

TEST(Cli, ExampleConfigsReproduce) {
    auto dir = scratch("examples");
    Result r = run({"example", "--out-dir", dir.string(), "--levels", "60"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"paper-f.json", "paper-g.json", "paper-q.json", "tent.json", "reproduce.sh"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    Result eq = run({"compare", (dir / "paper-f.json").string(), (dir / "paper-g.json").string(), "--n", "1..20", "--depth", "30"});
    EXPECT_EQ(eq.code, 0);
    EXPECT_EQ(eq.out, "Equal up to (1..20, 30)\n");
    Result ne = run({"compare", (dir / "paper-f.json").string(), (dir / "paper-q.json").string(), "--n", "1..5", "--depth", "6"});
    EXPECT_EQ(ne.code, 2);
    EXPECT_EQ(ne.out, "Mismatch at (n=1, j=1, position=3): L vs C\n");

    auto single = dir / "sample.json";
    Result s = run({"example", "--name", "full-family-M-sample", "--seed", "3", "--levels", "5", "--out", single.string()});
    ASSERT_EQ(s.code, 0) << s.err;
    Result cmp = run({"compare", single.string(), "full-family-M-sample:seed=3", "--n", "1..5", "--depth", "8"});
    EXPECT_EQ(cmp.code, 0) << cmp.out << cmp.err;
}

TEST(Cli, OutputFileAndDecimal) {
    auto dir = scratch("out");
    auto path = dir / "m.json";
    Result r = run({"match", "paper-f", "paper-g", "--n", "1..2", "--depth", "2", "--format", "json", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    auto j = nlohmann::json::parse(slurp(path));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["pairs"][0]["x_G"], "5/48");
    Result d = run({"match", "paper-f", "paper-g", "--n", "1", "--depth", "2", "--decimal"});
    EXPECT_EQ(d.out.rfind("# decimal", 0), 0u);
}
