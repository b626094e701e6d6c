#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "frtrust/fuzzy/engine.hpp"
#include "frtrust/io/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(FRTRUST_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string config(const char* name) { return std::string(FRTRUST_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("frtrust_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) { return frtrust::io::read_file(p); }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

double field(const std::string& line, const std::string& key) {
    const auto at = line.find(key + "=");
    return std::stod(line.substr(at + key.size() + 1));
}

} // namespace

TEST(CliFisEval, FirstSweepRow) {
    const auto r = run("fis-eval 0.1 0.5 0.9");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(field(r.out, "crisp"), 0.5, 0.15);
    EXPECT_NE(r.out.find("label=M"), std::string::npos);
}

TEST(CliFisEval, ZeroCorner) {
    const auto tri = run("fis-eval 0 0 0 --config " + config("triangular_engine.json"));
    ASSERT_EQ(tri.code, 0);
    EXPECT_NEAR(field(tri.out, "crisp"), 1.0 / 6.0, 1e-3);
    EXPECT_NE(tri.out.find("label=L"), std::string::npos);
    const auto def = run("fis-eval 0 0 0");
    EXPECT_NE(def.out.find("label=L"), std::string::npos);
}

TEST(CliFisEval, ExplicitEngineFileMatchesDefault) {
    EXPECT_EQ(run("fis-eval 0.3 0.6 0.2 --config " + config("engine.json")).out, run("fis-eval 0.3 0.6 0.2").out);
}

TEST(CliFisEval, Errors) {
    EXPECT_EQ(run("fis-eval 2 0 0").code, 2);
    EXPECT_EQ(run("fis-eval 0.1 0.2").code, 1);
    EXPECT_EQ(run("fis-eval x 0 0").code, 1);
    EXPECT_EQ(run("fis-eval 0 0 0 --config /nonexistent.json").code, 2);
    EXPECT_EQ(run("").code, 1);
}

TEST(CliRun, WritesArtifactsAndIsDeterministic) {
    const auto a = scratch("run_a"), b = scratch("run_b");
    ASSERT_EQ(run("run --config " + config("default_scenario.json") + " --out " + a.string() + " --replicas 2").code, 0);
    ASSERT_EQ(run("run --config " + config("default_scenario.json") + " --out " + b.string() + " --replicas 2").code, 0);
    for (const char* f : {"metrics.csv", "trust.csv", "snapshots.csv"}) {
        ASSERT_TRUE(fs::exists(a / f)) << f;
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    EXPECT_EQ(lines(slurp(a / "metrics.csv")), 3u);
    EXPECT_EQ(lines(slurp(a / "trust.csv")), 201u);
    const auto m = nlohmann::json::parse(slurp(a / "manifest.json"));
    EXPECT_EQ(m.at("seed"), 1);
    EXPECT_EQ(m.at("artifacts").size(), 3u);
    EXPECT_EQ(m.at("config").at("scenario").at("n_nodes"), 100);
    EXPECT_TRUE(m.contains("timestamp"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(CliRun, SeedOverrideChangesOutput) {
    const auto a = scratch("seed_a"), b = scratch("seed_b");
    ASSERT_EQ(run("run --config " + config("default_scenario.json") + " --out " + a.string()).code, 0);
    ASSERT_EQ(run("run --config " + config("default_scenario.json") + " --out " + b.string() + " --seed 99").code, 0);
    EXPECT_NE(slurp(a / "trust.csv"), slurp(b / "trust.csv"));
    EXPECT_EQ(nlohmann::json::parse(slurp(b / "manifest.json")).at("seed"), 99);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(CliRun, FiveNodeTrustRecordForP4) {
    const auto d = scratch("five_node");
    ASSERT_EQ(run("run --config " + config("five_node_vo.json") + " --out " + d.string()).code, 0);
    std::istringstream in(slurp(d / "trust.csv"));
    std::string line;
    std::getline(in, line);
    const double expect = frtrust::fuzzy::Engine{}.evaluate(0.2, 0.5, 0.8).crisp;
    bool found = false;
    while (std::getline(in, line)) {
        const auto f = frtrust::io::split_fields(line);
        if (f[1] != "3") continue;
        found = true;
        EXPECT_EQ(f[4], "1");
        EXPECT_EQ(frtrust::io::parse_double(f[5]), expect);
    }
    EXPECT_TRUE(found);
    fs::remove_all(d);
}

TEST(CliRun, Errors) {
    const auto d = scratch("err");
    const auto bad = scratch("rounds0.json");
    std::ofstream(bad) << R"({"rounds": 0})";
    EXPECT_EQ(run("run --config " + bad.string() + " --out " + d.string()).code, 2);
    EXPECT_EQ(run("run --config /nonexistent.json --out " + d.string()).code, 2);
    EXPECT_EQ(run("run --out " + d.string()).code, 1);
    EXPECT_FALSE(fs::exists(d / "metrics.csv"));
    fs::remove(bad);
}

TEST(CliExperiment, Table2) {
    const auto r = run("experiment table2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 11u);
    EXPECT_EQ(r.out.rfind("p1,p2,p3,computed,label,reference,reference_other\n", 0), 0u);
}

TEST(CliExperiment, SurfaceGrid) {
    const auto r = run("experiment surface --fixed p3=0.5 --step 0.05");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 22u);
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) EXPECT_EQ(frtrust::io::split_fields(line).size(), 22u);
    EXPECT_EQ(run("experiment surface --fixed p4=0.5").code, 1);
    EXPECT_EQ(run("experiment surface --step 0.3").code, 2);
}

TEST(CliExperiment, Chord) {
    const auto r = run("experiment chord --n 16,64,256");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), 4u);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto f = frtrust::io::split_fields(line);
        EXPECT_LE(std::stod(f[4]), std::stod(f[6]) + 1.0);
        EXPECT_EQ(f[8], "2");
        EXPECT_EQ(f[9], "0");
    }
}

TEST(CliExperiment, Table3ToDirectory) {
    const auto d = scratch("t3");
    ASSERT_EQ(run("experiment table3 --points 11 --out " + d.string()).code, 0);
    EXPECT_EQ(lines(slurp(d / "table3.csv")), 12u);
    EXPECT_TRUE(fs::exists(d / "manifest.json"));
    fs::remove_all(d);
}

TEST(CliExperiment, RmsAndDetectAreDeterministic) {
    const std::string rms = "experiment rms --alphas 0.5 --fractions 0,0.4 --replicas 2 --seed 3";
    const auto a = run(rms);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(lines(a.out), 3u);
    EXPECT_EQ(a.out, run(rms + " --threads 2").out);
    const auto d = run("experiment detect --replicas 2");
    ASSERT_EQ(d.code, 0);
    EXPECT_EQ(lines(d.out), 4u);
}

TEST(CliExperiment, UnknownNameListsValidNames) {
    const std::string cmd = std::string(FRTRUST_CLI_PATH) + " experiment bogus 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[1024];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    EXPECT_EQ(WEXITSTATUS(status), 1);
    for (const char* name : {"table2", "table3", "rms", "detect", "chord", "surface"}) {
        EXPECT_NE(out.find(name), std::string::npos) << name;
    }
}
