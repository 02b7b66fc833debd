#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bornforge/cli.hpp"
#include "bornforge/json_io.hpp"

namespace bornforge {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "bornforge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / (std::string("bornforge_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name, std::ios::binary) << text;
        return path_ / name;
    }

private:
    fs::path path_;
};

TEST(CliBorn, ExamplePasses) {
    const auto r = cli({"born", "--state", "[[0.8366600265340756,0],[0,0.5477225575051661]]", "--trials", "100000",
                        "--seed", "1"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["result"]["trials"], 100000);
}

TEST(CliBorn, EigenstateGivesIndicator) {
    const auto r = cli({"born", "--state", "[[1,0],[0,0]]", "--trials", "5000"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(Json::parse(r.out)["result"]["frequencies"], Json::parse("[1.0, 0.0]"));
}

TEST(CliBorn, RandomStateNeedsDimension) {
    EXPECT_EQ(cli({"born", "--state", "random", "--trials", "10"}).code, kExitInputError);
    EXPECT_EQ(cli({"born", "--state", "random", "--n", "3", "--trials", "10000"}).code, kExitPass);
}

TEST(CliBorn, InputErrors) {
    const auto zero = cli({"born", "--state", "[[1,0],[0,0]]", "--trials", "0"});
    EXPECT_EQ(zero.code, kExitInputError);
    EXPECT_NE(zero.err.find("--trials"), std::string::npos);
    EXPECT_EQ(cli({"born", "--state", "[[1,0],", "--trials", "10"}).code, kExitInputError);
    EXPECT_EQ(cli({"born", "--state", "[[1,0],[0,0]]", "--trials", "10", "--odds", "cubes"}).code, kExitInputError);
    EXPECT_EQ(cli({"born", "--trials", "10"}).code, kExitInputError);
    EXPECT_EQ(cli({}).code, kExitInputError);
}

TEST(CliBorn, WritesResultAndTrace) {
    TempDir dir;
    const auto r = cli({"born", "--state", "[[0.6,0],[0,0.8]]", "--trials", "20000", "--out", dir.path().string()});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(r.out.rfind("PASS ", 0), 0u);
    EXPECT_TRUE(fs::exists(dir.path() / "born.json"));
    EXPECT_EQ(slurp(dir.path() / "born_trace.csv").rfind("trial_count,tv_distance,freq_1,freq_2\n", 0), 0u);
}

TEST(CliSimplex, ExamplePasses) {
    const auto r = cli({"simplex", "--state", "[0.5,0.3,0.2]", "--trials", "100000", "--seed", "2"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(Json::parse(r.out)["result"]["reference"], Json::parse("[0.5, 0.3, 0.2]"));
}

TEST(CliSimplex, NotNormalizedIsInputError) {
    const auto r = cli({"simplex", "--state", "[0.5,0.6]", "--trials", "10"});
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliSimplex, TinyBandFails) {
    const auto r = cli({"simplex", "--state", "[0.5,0.5]", "--trials", "1001", "--sigma", "0"});
    EXPECT_EQ(r.code, kExitStatFail);
}

TEST(CliOmega, SmallDimensionsPass) {
    for (const char* n : {"2", "4"}) {
        const auto r = cli({"omega-check", "--n", n, "--samples", "100000", "--bins", "50", "--seed", "3"});
        EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
        EXPECT_GT(Json::parse(r.out)["p_value"].get<double>(), 1e-3);
    }
}

TEST(CliOmega, TooFewSamples) {
    EXPECT_EQ(cli({"omega-check", "--n", "2", "--samples", "10", "--bins", "50"}).code, kExitInputError);
}

TEST(CliSuite, OneBornExperiment) {
    TempDir dir;
    const auto cfg = dir.write("one.toml", "seed = 4\n[[experiments]]\nname = \"b\"\nkind = \"born\"\n"
                                           "state = [[0.6, 0.0], [0.0, 0.8]]\ntrials = 20000\n");
    const auto out = dir.path() / "out";
    const auto r = cli({"suite", "--config", cfg.string(), "--out-dir", out.string()});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(r.out.rfind("PASS b ", 0), 0u);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(out)) files.push_back(e.path().filename().string());
    std::sort(files.begin(), files.end());
    EXPECT_EQ(files, (std::vector<std::string>{"b.json", "b_trace.csv", "manifest.json"}));
    const auto manifest = Json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest["seed"], 4);
    EXPECT_EQ(manifest["experiments"][0]["result"], "b.json");
    EXPECT_TRUE(manifest["passed"].get<bool>());
}

TEST(CliSuite, RepeatRunsAreByteIdentical) {
    TempDir dir;
    const auto cfg = dir.write("two.json", R"({"experiments": [
        {"name": "s", "kind": "simplex", "state": [0.5, 0.3, 0.2], "trials": 50000},
        {"name": "r", "kind": "born", "n": 3, "state": "random", "frame": "random", "trials": 50000,
         "checkpoints": [10, 100, 1000, 50000]}]})");
    const auto a = dir.path() / "a";
    const auto b = dir.path() / "b";
    ASSERT_EQ(cli({"suite", "--config", cfg.string(), "--out-dir", a.string(), "--seed", "9"}).code, kExitPass);
    ASSERT_EQ(cli({"suite", "--config", cfg.string(), "--out-dir", b.string(), "--seed", "9", "--threads", "2"}).code,
              kExitPass);
    for (const char* f : {"s.json", "s_trace.csv", "r.json", "r_trace.csv"}) {
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    const auto c = dir.path() / "c";
    ASSERT_EQ(cli({"suite", "--config", cfg.string(), "--out-dir", c.string(), "--seed", "10"}).code, kExitPass);
    EXPECT_NE(slurp(a / "r.json"), slurp(c / "r.json"));
}

TEST(CliSuite, UnknownKindIsInputError) {
    TempDir dir;
    const auto cfg = dir.write("bad.toml", "[[experiments]]\nkind = \"teleport\"\n");
    const auto r = cli({"suite", "--config", cfg.string(), "--out-dir", (dir.path() / "o").string()});
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("experiments[0].kind"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find(":2"), std::string::npos) << r.err;
}

TEST(CliSuite, MissingConfigIsInputError) {
    EXPECT_EQ(cli({"suite", "--config", "/nonexistent/x.toml", "--out-dir", "/tmp/x"}).code, kExitInputError);
}

TEST(CliSuite, FailingCriterionExitsTwo) {
    TempDir dir;
    const auto cfg = dir.write("fail.toml", "[[experiments]]\nkind = \"simplex\"\nstate = [0.5, 0.5]\n"
                                            "trials = 1001\nsigma = 0.0\n");
    const auto r = cli({"suite", "--config", cfg.string(), "--out-dir", (dir.path() / "o").string()});
    EXPECT_EQ(r.code, kExitStatFail);
    EXPECT_EQ(r.out.rfind("FAIL simplex-1", 0), 0u);
    EXPECT_FALSE(Json::parse(slurp(dir.path() / "o" / "manifest.json"))["passed"].get<bool>());
}

TEST(CliVersion, Prints) {
    const auto r = cli({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

}  // namespace
}  // namespace bornforge
