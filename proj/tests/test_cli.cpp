#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fop/cli.hpp"

using namespace fop;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) {
        if (c == '\n') ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("forests verb") {
    RunResult r = run({"forests", "--weight", "3", "--decorations", "x"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 5);

    RunResult j = run({"forests", "-w", "2", "-D", "2", "--format", "json"});
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.size() == 8);
}

TEST_CASE("product verb") {
    RunResult r = run({"product", "--op", "searrow", "a", "b"});
    CHECK(r.code == 0);
    CHECK(r.out == "b(a)\n");
    CHECK(run({"product", "--op", "nearrow", "a", "b(c) e"}).out == "b(c(a)) e\n");
    CHECK(run({"product", "a", "b"}).out == "a b\n");

    RunResult bad = run({"product", "--op", "searrow", "a(", "b"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("parse error") != std::string::npos);
}

TEST_CASE("factorize verb") {
    RunResult r = run({"factorize", "b(a) c"});
    CHECK(r.code == 0);
    CHECK(r.out == "a\nb c\n");
}

TEST_CASE("dims verb") {
    RunResult r = run({"dims", "--flavor", "searrow", "--dual", "--max-arity", "4", "--format",
                       "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["flavor"] == "searrow-dual");
    CHECK(j["nonsigma"] == nlohmann::json::array({1, 2, 3, 4}));
    CHECK(j["sigma"][2] == "18");
}

TEST_CASE("dual-check verb") {
    CHECK(run({"dual-check", "--flavor", "searrow"}).code == 0);
    CHECK(run({"dual-check", "--flavor", "nearrow", "--format", "json"}).code == 0);
}

TEST_CASE("homology verb matches the spec example") {
    RunResult r = run({"homology", "--flavor", "searrow", "-D", "1", "--max-weight", "5",
                       "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["H0_total"] == 1);
    CHECK(j["max_higher_H"] == 0);
}

TEST_CASE("hochschild verb") {
    RunResult r = run({"hochschild", "--flavor", "nearrow", "--which", "arrow", "-D", "1",
                       "--max-weight", "4", "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["concentrated_in_degree_1"] == true);
    CHECK(j["census_matches"] == true);
}

TEST_CASE("poincare verb") {
    RunResult r = run({"poincare", "--order", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("identical argv gives byte-identical output") {
    std::vector<std::string> args{"homology", "--flavor", "nearrow", "-D", "2", "--max-weight",
                                  "3", "--format", "json"};
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::vector<std::string> args2{"forests", "-w", "4", "-D", "2"};
    CHECK(run(args2).out == run(args2).out);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"forests"}).code == 2);                       // missing --weight
    CHECK(run({"product", "--op", "bogus", "a", "b"}).code == 2);
    CHECK(run({"homology", "--flavor", "bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
