#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdh/cli.hpp"
#include "cli/serialize.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = bdh::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("dist CSV for N = 3, rho = 1") {
    const auto r = run({"dist", "--n", "3", "--rho", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "k,survival,pmf");
    CHECK(lines[1] == "1,1,0.333333333333333");
    CHECK(lines[2] == "2,0.666666666666667,0.266666666666667");
    CHECK(lines[3] == "3,0.4,0.4");
    CHECK(r.out.find("# mean=2.06666666666667") != std::string::npos);
    CHECK(r.out.find("# variance=0.728888888888889") != std::string::npos);
    CHECK(r.out.find("# output_checksum=fnv1a64:") != std::string::npos);
}

TEST_CASE("dist JSON carries a manifest with a checksum over the data") {
    const auto r = run({"dist", "-N", "1", "--rho", "0.5"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["data"]["pmf"] == json::array({1.0}));
    CHECK(doc["data"]["mean"] == 1.0);
    CHECK(doc["manifest"]["command"] == "dist");
    CHECK(doc["manifest"]["seed"].is_null());
    CHECK(doc["manifest"]["output_checksum"] == bdh::cli::checksum(doc["data"].dump()));
    CHECK(doc["manifest"].contains("tool_version"));
}

TEST_CASE("dist from rates") {
    const auto a = run({"dist", "--n", "4", "--nu", "2", "--mu", "4", "--format", "csv"});
    const auto b = run({"dist", "--n", "4", "--rho", "0.5", "--format", "csv"});
    REQUIRE(a.code == 0);
    CHECK(data_lines(a.out) == data_lines(b.out));
    CHECK(a.out.find("# param.nu=2") != std::string::npos);
}

TEST_CASE("dist usage errors") {
    CHECK(run({"dist", "--n", "0", "--rho", "1"}).code == 2);
    CHECK(run({"dist", "--n", "5", "--rho", "-1"}).code == 2);
    CHECK(run({"dist", "--n", "5", "--rho", "1", "--nu", "1", "--mu", "1"}).code == 2);
    CHECK(run({"dist", "--n", "5", "--nu", "1"}).code == 2);
    CHECK(run({"dist", "--n", "5"}).code == 2);
    CHECK(run({"dist", "--n", "5", "--rho", "1", "--format", "xml"}).code == 2);
    CHECK(run({"dist", "--n", "5", "--rho", "1", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("alpha") {
    const auto a = run({"alpha", "--rho", "0.25"});
    REQUIRE(a.code == 0);
    const auto doc = json::parse(a.out);
    CHECK(std::fabs(doc["data"]["alpha"].get<double>() - 0.5) <= 1e-12);
    CHECK(doc["data"]["applicable"] == true);

    const auto b = run({"alpha", "--rho", "2"});
    REQUIRE(b.code == 0);
    const auto d2 = json::parse(b.out);
    CHECK(d2["data"]["f"] == 1.0);
    CHECK(d2["data"]["alpha"].is_null());
    CHECK(d2["data"]["applicable"] == false);

    CHECK(run({"alpha", "--rho", "0"}).code == 2);
}

TEST_CASE("verify on the default grid") {
    const auto r = run({"verify"});
    CHECK(r.code == 1);
    const auto doc = json::parse(r.out);
    CHECK(doc["data"]["pass"] == false);
    for (const auto& c : doc["data"]["checks"]) {
        if (c["status"] == "fail" && c["asserted"] == true) CHECK(c["id"] == "lemma2.upper");
    }
    CHECK(r.err.find("FAIL lemma2.upper") != std::string::npos);
    CHECK(r.err.find("FAIL lemma2.lower") == std::string::npos);
    CHECK(r.err.find("lemma3") == std::string::npos);

    const auto c = run({"verify", "--lemma2-rounding", "ceil"});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["data"]["pass"] == true);
}

TEST_CASE("verify at small N reports not-applicable checks") {
    const auto r = run({"verify", "--rho", "0.5", "--n", "10", "--strict", "--lemma2-rounding", "ceil"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["data"]["summary"]["not_applicable"].get<int>() >= 1);
}

TEST_CASE("verify self-test override breaks the mean sandwich") {
    const auto r = run({"verify", "--rho", "0.5", "--n", "10000", "--lemma2-rounding", "ceil",
                        "--test-override-c3", "-1000"});
    CHECK(r.code == 1);
    CHECK(r.err.find("lemma3") != std::string::npos);
}

TEST_CASE("verify rejects bad input") {
    CHECK(run({"verify", "--rho", "0"}).code == 2);
    CHECK(run({"verify", "--n", "abc"}).code == 2);
    CHECK(run({"verify", "--format", "csv"}).code == 2);
}

TEST_CASE("simulate is reproducible and independent of workers") {
    const std::vector<std::string> base = {"simulate", "--n", "50", "--rho", "0.8", "--samples", "100000",
                                           "--seed", "7"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return run(a);
    };
    const auto a = with({"--workers", "1"});
    const auto b = with({"--workers", "1"});
    const auto c = with({"--workers", "8"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto doc = json::parse(a.out);
    CHECK(doc["data"]["dkw_pass"] == true);
    CHECK(doc["data"]["mode"] == "ladder");
    CHECK(doc["manifest"]["seed"] == 7);
    CHECK_FALSE(doc["manifest"]["parameters"].contains("workers"));
    CHECK(with({"--seed", "8"}).out != a.out);
    CHECK(with({"--assert"}).code == 0);
}

TEST_CASE("simulate picks a trajectory sampler when it is cheap") {
    const auto r = run({"simulate", "--n", "4", "--rho", "1", "--samples", "1000", "--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["data"]["mode"] == "jump-chain");
    const auto c = run({"simulate", "--n", "4", "--rho", "1", "--samples", "1000", "--mode", "full-ctmc",
                        "--format", "csv"});
    REQUIRE(c.code == 0);
    CHECK(data_lines(c.out)[0] == "k,count,empirical_pmf,exact_pmf,ecdf,cdf");
}

TEST_CASE("simulate circuit breaker exits 1") {
    const auto r = run({"simulate", "--n", "30", "--rho", "1", "--samples", "100", "--mode", "jump-chain",
                        "--step-limit", "100"});
    CHECK(r.code == 1);
    CHECK(r.err.find("samples completed") != std::string::npos);
}

TEST_CASE("simulate usage errors") {
    CHECK(run({"simulate", "--n", "5", "--rho", "1", "--samples", "0"}).code == 2);
    CHECK(run({"simulate", "--n", "5", "--rho", "1", "--mode", "magic"}).code == 2);
    CHECK(run({"simulate", "--n", "5", "--rho", "1", "--workers", "0"}).code == 2);
    CHECK(run({"simulate", "--n", "5", "--rho", "1", "--delta", "1"}).code == 2);
}

TEST_CASE("sweep") {
    const auto r = run({"sweep", "--rho", "2", "--ns", "100,1000,10000,100000"});
    REQUIRE(r.code == 0);
    const auto rows = json::parse(r.out)["data"]["rows"];
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        const double N = row["N"].get<double>();
        if (N >= 1000) CHECK(row["mean_gap"].get<double>() <= 4.0 / N);
    }
    const auto q = run({"sweep", "--rho", "0.25", "--ns", "1000,10000,100000", "--format", "csv"});
    REQUIRE(q.code == 0);
    CHECK(data_lines(q.out).size() == 4);

    CHECK(run({"sweep", "--rho", "0.5", "--ns", ""}).code == 2);
    CHECK(run({"sweep", "--rho", "0.5", "--ns", "100,10"}).code == 2);
}

TEST_CASE("help and version") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--version"}).code == 0);
    for (const char* sub : {"dist", "alpha", "verify", "simulate", "sweep"}) {
        const auto r = run({sub, "--help"});
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("output paths") {
    const std::string path = "bdh_test_cli_output.csv";
    const auto r = run({"dist", "--n", "3", "--rho", "1", "--format", "csv", "--output", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"dist", "--n", "3", "--rho", "1", "--format", "csv"}).out);
    std::remove(path.c_str());

    CHECK(run({"dist", "--n", "3", "--rho", "1", "-o", "/nonexistent-dir/x.json"}).code == 2);
}
