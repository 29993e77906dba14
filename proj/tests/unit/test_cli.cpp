#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

#include "foldcheck/cli.hpp"
#include "foldcheck/document.hpp"
#include "foldcheck/expression.hpp"

#include "closure.hpp"

using namespace foldcheck;
using cli::Request;
using cli::Response;

namespace {

Response run(std::string command, std::string manifold, std::optional<std::string> target = std::nullopt,
             bool tame = false, std::string format = "text", bool explain = false)
{
    Request r;
    r.command = std::move(command);
    r.manifold = std::move(manifold);
    r.target = std::move(target);
    r.tame = tame;
    r.format = std::move(format);
    r.explain = explain;
    return cli::run(r);
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const std::string path = std::string(FOLDCHECK_TEST_TMP) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("decide emits the documented JSON shape")
{
    const Response r = run("decide", "RP4", "R4", false, "json");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"manifold", "dim", "target", "tame", "verdict", "trace"});
    CHECK(j["verdict"] == "not_exists");
    REQUIRE(j["trace"].size() == 1);
    CHECK(j["trace"][0]["citation"] == "Cor 3.5(ii)");
    CHECK(j["trace"][0]["obstruction"] == "w_4");
    CHECK(Json::parse(run("decide", "RP4", "R4", false, "json", true).out)["trace"].size() > 1);
}

TEST_CASE("text verdicts render one line per entry")
{
    const Response r = run("decide", "3#RP4", "R3", true, "text", true);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("verdict: NOT EXISTS\n") != std::string::npos);
    CHECK(r.out.find("[Thm 5.1] w_4 = a^4 => NOT EXISTS\n") != std::string::npos);
    CHECK(run("invariants", "RP4").out.find("w = 1 + a + a^4\n") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(run("decide", "CP2", "R3").exit_code == 0);  // Unknown is a success
    const Response bad = run("decide", "RP4 # S3", "R3");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("position 5") != std::string::npos);
    CHECK(bad.out.empty());
    CHECK(run("decide", "RP4").exit_code == 1);
    CHECK(run("decide", "RP4", "R9").exit_code == 1);
    CHECK(run("decide", "RP4", "T4").exit_code == 1);
    CHECK(run("decide", "RP4", "R4", false, "yaml").exit_code == 1);
    CHECK(run("frobnicate", "RP4").exit_code == 1);
    CHECK(run("invariants", "").exit_code == 1);
    CHECK(run("invariants", "RP(4)").exit_code == 2);
    CHECK(run("thom", "S3").exit_code == 1);
    CHECK(run("invariants", std::string(FOLDCHECK_TEST_TMP) + "/missing.json").exit_code == 2);
}

TEST_CASE("invariants JSON lists the required fields")
{
    const Json j = Json::parse(run("invariants", "K3", std::nullopt, false, "json").out);
    for (const char* k : {"euler", "signature", "orientable", "w", "p1", "w3_twisted", "pin", "spin", "wu"})
        CHECK(j.contains(k));
    CHECK(j["p1"]["int"] == -48);
    CHECK(j["spin"] == true);
    CHECK(j["w"].size() == 5);
}

TEST_CASE("output is byte-stable")
{
    for (const char* m : {"RP4 x S1", "K3", "2#RP4 # (S2 x S2) # (S1 x S3)"}) {
        for (const char* f : {"text", "json"}) {
            CHECK(run("invariants", m, std::nullopt, false, f).out == run("invariants", m, std::nullopt, false, f).out);
            CHECK(run("span", m, std::nullopt, false, f).out == run("span", m, std::nullopt, false, f).out);
            CHECK(run("decide", m, "R3", true, f, true).out == run("decide", m, "R3", true, f, true).out);
        }
    }
}

TEST_CASE("catalog documents load back through the CLI")
{
    const Response doc = run("catalog", "RP4 x S1");
    REQUIRE(doc.exit_code == 0);
    const std::string path = temp_file("rp4s1.json", doc.out);
    const Response a = run("decide", path, "R5");
    const Response b = run("decide", "RP4 x S1", "R5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(same_invariants(load_manifold_file(path), parse_expression("RP4 x S1")));
    CHECK(run("catalog", "").out.find("K3") != std::string::npos);
}

TEST_CASE("every closure expression survives the CLI")
{
    for (const auto& s : foldcheck::testing::closure()) {
        INFO(s.expression);
        CHECK(run("invariants", s.expression).exit_code == 0);
        CHECK(run("span", s.expression).exit_code == 0);
    }
}

TEST_CASE("pullback targets")
{
    const std::string trivial = temp_file("trivial5.json",
                                          R"({"rank": 5, "w": [[1], [0, 0], [0, 0], [0, 0], [0, 0], [0]], "p1": "zero", "orientable": true})");
    const Response r = run("decide", "RP4 x S1", "pullback:" + trivial, false, "json");
    REQUIRE(r.exit_code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "not_exists");
    CHECK(run("decide", "RP4 x S1", "self").exit_code == 0);
    CHECK(Json::parse(run("decide", "RP4 x S1", "self", false, "json").out)["verdict"] == "exists");
    CHECK(run("decide", "RP4", "pullback:" + trivial).exit_code == 2);
    const Response t = run("thom", "RP4 x S1", "pullback:" + trivial);
    CHECK(t.exit_code == 0);
}
