#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "porosity/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "porosity_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = porosity::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kGeometric = R"({"variant":"GeometricLadder","x0":"1","rho":"1/2"})";
const std::string kExample = R"({"variant":"ExampleFamily","alpha":"1/2"})";

}  // namespace

TEST(Cli, AnalyzeGeometricLadder) {
    const auto r = run({"analyze", "--family", kGeometric, "--q", "2", "--depth", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "porosity-lab/1");
    EXPECT_EQ(j["verdicts"]["SP"]["kind"], "Definite");
    EXPECT_EQ(j["verdicts"]["SP"]["value"], false);
    EXPECT_EQ(j["porosity"]["p_plus"], "1/2");
}

TEST(Cli, VerifyFoundationsText) {
    const auto r = run({"verify-foundations", "--n", "3", "--trials", "50", "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("20 down-set bases scanned, 0 counterexamples to I* = \xC3\x8E", 0), 0U) << r.out;
}

TEST(Cli, ReproduceExample) {
    const auto r = run({"reproduce-example", "--alpha", "1/2", "--q", "3", "--M", "8", "--depth", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ex = nlohmann::json::parse(r.out)["example"];
    const auto& row = ex["rows"][0];
    EXPECT_EQ(row["m"], 2);
    EXPECT_EQ(row["beta_sum_estimate"], "7");
    EXPECT_EQ(row["window_bounds"][8], "2048");
}

TEST(Cli, RepeatedQ) {
    const auto r = run({"reproduce-example", "--q", "3/2", "--q", "3", "--q", "10", "--depth", "6", "--M", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["example"]["rows"].size(), 3U);
}

TEST(Cli, DecomposeExitCodes) {
    const std::string cluster =
        R"({"variant":"UnionOf","members":[{"variant":"SuperGeometricLadder","x0":"1","rho":"1/10"},)"
        R"({"variant":"SuperGeometricLadder","x0":"1/16","rho":"1/10"}]})";
    EXPECT_EQ(run({"decompose", "--family", cluster, "--N", "1", "--q", "2", "--depth", "10"}).code, 0);
    const auto bad = run({"decompose", "--family", kExample, "--N", "2", "--depth", "8"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(nlohmann::json::parse(bad.out)["status"], "hypothesis-failure");
    EXPECT_NE(bad.out.find("bounded window"), std::string::npos) << bad.out;
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run({"analyze", "--family", "{not json"}).code, 1);
    EXPECT_EQ(run({"analyze", "--family", R"({"variant":"Nope"})"}).code, 1);
    EXPECT_EQ(run({"analyze", "--family", kGeometric, "--q", "1"}).code, 1);
    EXPECT_EQ(run({"analyze", "--family", kGeometric, "--depth", "0"}).code, 1);
    EXPECT_EQ(run({"analyze", "--family", kGeometric, "--format", "xml"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"analyze"}).code, 1);
    EXPECT_EQ(run({"reproduce-example", "--alpha", "3/2"}).code, 1);
    EXPECT_EQ(run({"verify-foundations", "--n", "9"}).code, 1);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, FamilyFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "porosity_lab_family.json";
    std::ofstream(path) << kExample;
    const auto from_file = run({"analyze", "--family", path.string(), "--q", "3", "--depth", "6"});
    const auto inline_json = run({"analyze", "--family", kExample, "--q", "3", "--depth", "6"});
    std::filesystem::remove(path);
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(from_file.out, inline_json.out);
}

TEST(Cli, ReportsAreByteStable) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"analyze", "--family", kExample, "--q", "2", "--q", "3", "--depth", "6"},
             {"blowup", "--family", kGeometric, "--q", "3", "--depth", "6"},
             {"verify-foundations", "--n", "2", "--seed", "5", "--trials", "40"},
             {"verify-foundations", "--n", "2", "--seed", "5", "--trials", "40", "--format", "text"}}) {
        const auto a = run(args);
        const auto b = run(args);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}
