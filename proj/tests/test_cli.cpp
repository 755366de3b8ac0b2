#include "muntz_lab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "muntz_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = muntz::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

double value_of(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + "=");
    if (pos == std::string::npos) return -1.0;
    return std::stod(text.substr(pos + key.size() + 1));
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("muntz_lab_test_" + name);
}

} // namespace

TEST(Cli, BernsteinLinear) {
    const Result r = run({"bernstein", "--seq", "0,1", "--a", "0.5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "lower"), 2.0, 1e-3);
}

TEST(Cli, BernsteinBadIntervalIsUsageError) {
    const Result r = run({"bernstein", "--seq", "0,1", "--a", "1.5"});
    EXPECT_EQ(r.code, muntz::cli::kUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, BernsteinJsonIsWellFormed) {
    const Result r = run({"bernstein", "--seq", "0,1", "--a", "0.5", "--json"});
    ASSERT_EQ(r.code, 0);
    const auto j = muntz::json::parse(r.out);
    EXPECT_NEAR(j.at("lower").get<double>(), 2.0, 1e-3);
    EXPECT_EQ(j.get<muntz::BernsteinEstimate>().n, 1u);
}

TEST(Cli, UnknownOptionAndMissingSubcommand) {
    EXPECT_EQ(run({"bernstein", "--bogus"}).code, muntz::cli::kUsage);
    EXPECT_EQ(run({}).code, muntz::cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MuntzCheck) {
    const Result r = run({"muntz-check", "--family", "geometric:2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verdict=convergent"), std::string::npos);
    EXPECT_NE(run({"muntz-check", "--family", "power:1"}).out.find("verdict=divergent"), std::string::npos);
    EXPECT_EQ(run({"muntz-check", "--family", "spiral:2"}).code, muntz::cli::kUsage);
    EXPECT_EQ(run({"muntz-check", "--seq", "0,2,1"}).code, muntz::cli::kUsage);
}

TEST(Cli, GridOneBand) {
    const Result r = run({"grid", "--anchors", "0.5", "--constants", "10", "--eps", "0.1", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto g = muntz::json::parse(r.out).get<muntz::SamplingGrid>();
    EXPECT_EQ(g.points.size(), 52u);
    EXPECT_EQ(muntz::first_spacing_violation(g), g.points.size());
}

TEST(Cli, GridEmbeddedSequenceCsv) {
    const Result r = run({"grid", "--seq", "1", "--anchors", "0.5", "--constants", "2", "--eps", "0.5", "--coef",
                          "1", "--csv", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("index,s,f_s\n0,0,0\n"), std::string::npos);
    EXPECT_NE(r.out.find(",1,1\n"), std::string::npos);
}

TEST(Cli, NormShiftedChebyshev) {
    const Result r = run({"norm", "--seq", "0,1,2", "--coef", "1,-8,8", "--tol", "1e-7"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "lower"), 1.0, 1e-6);
    EXPECT_NEAR(value_of(r.out, "upper"), 1.0, 1e-6);
}

TEST(Cli, VerifyEmbedding) {
    const Result r = run({"verify-embedding", "--eps", "0.2", "--m", "4", "--trials", "40", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(value_of(r.out, "violations"), 0.0);
    EXPECT_EQ(run({"verify-embedding", "--eps", "0", "--seed", "3"}).code, muntz::cli::kUsage);
    EXPECT_EQ(run({"verify-embedding", "--eps", "0.2"}).code, muntz::cli::kUsage);
}

TEST(Cli, VerifyEmbeddingReproducible) {
    const std::vector<std::string> args{"verify-embedding", "--eps", "0.3", "--m", "3", "--trials", "30", "--seed",
                                        "77", "--json"};
    const Result a = run(args);
    const Result b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run({"verify-embedding", "--eps", "0.3", "--m", "3", "--trials", "30", "--seed", "78", "--json"}).out);
}

TEST(Cli, LasqCsvHasOneRow) {
    const auto path = temp_file("lasq.csv");
    const Result r = run({"lasq", "--trials", "100", "--seed", "1", "--csv", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "kind,N,x,a,epsilon_star,extremal_value,violations,trials,seed");
    EXPECT_EQ(row.rfind("lasq,3,", 0), 0u);
    EXPECT_FALSE(std::getline(in, extra));
    std::filesystem::remove(path);
}

TEST(Cli, LasqRejectsZeroTrials) {
    EXPECT_EQ(run({"lasq", "--trials", "0", "--seed", "1"}).code, muntz::cli::kUsage);
}

TEST(Cli, LasqTail) {
    const Result r = run({"lasq", "--n", "5", "--tail", "1", "--trials", "50", "--seed", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(value_of(r.out, "N"), 3.0);
}

TEST(Cli, HalfBallAndOhProbe) {
    const Result h = run({"half-ball", "--trials", "200", "--seed", "5", "--json"});
    ASSERT_EQ(h.code, 0) << h.err;
    const auto report = muntz::json::parse(h.out).get<muntz::DefectReport>();
    EXPECT_LE(report.extremal_value, 0.5 + 1e-6);
    EXPECT_GT(report.c_used, 0.0);

    const Result o = run({"oh-probe", "--trials", "100", "--seed", "5"});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_GT(value_of(o.out, "extremal_value"), 0.0);
}

TEST(Cli, ConfigFileAndOverride) {
    const auto path = temp_file("config.ini");
    {
        std::ofstream cfg(path);
        cfg << "seq=0,1\na=0.5\n";
    }
    const Result r = run({"bernstein", "--config", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "lower"), 2.0, 1e-3);
    // The command line wins over the file.
    const Result o = run({"bernstein", "--config", path.string(), "--a", "1.5"});
    EXPECT_EQ(o.code, muntz::cli::kUsage);
    std::filesystem::remove(path);
}
