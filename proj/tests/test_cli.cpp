#include "hahnlog/cli.hpp"
#include "hahnlog/polyring.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace hahnlog;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string samples = HAHNLOG_SAMPLES_DIR;

}  // namespace

TEST_CASE("log report") {
    Run r = run({"log", "(inv t1)"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("hahnlog-v1\n", 0) == 0);
    CHECK(r.out.find("value: X1\n") != std::string::npos);
    CHECK(run({"log", "log (tpow 0 -1)"}).out.find("value: X2\n") != std::string::npos);
}

TEST_CASE("json report mirrors the text fields") {
    Run r = run({"--json", "--precision", "2", "--seed", "9", "log", "(+ 2 t1)"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["format"] == "hahnlog-v1");
    CHECK(j["seed"] == 9);
    CHECK(j["value"] == "log(2) + 1/2*t^(1,0) - 1/8*t^(2,0) + O(t^(3,0))");
}

TEST_CASE("connect with a context file") {
    Run ok = run({"--context", samples + "/scaled.json", "connect"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("result: EQUIVALENT") != std::string::npos);
    CHECK(ok.out.find("[1, 3]") != std::string::npos);
    Run bad = run({"--context", samples + "/zeta.json", "connect"});
    CHECK(bad.code == kExitOk);
    CHECK(bad.out.find("result: NOT EQUIVALENT") != std::string::npos);
    CHECK(bad.out.find("witness: generator 2") != std::string::npos);
}

TEST_CASE("measure and integrate") {
    Run m = run({"measure", samples + "/region.sexp"});
    CHECK(m.code == kExitOk);
    CHECK(m.out.find("value: X1\n") != std::string::npos);
    Run f = run({"--both-orders", "integrate", samples + "/fubini.sexp"});
    CHECK(f.code == kExitOk);
    CHECK(f.out.find("fubini: agree") != std::string::npos);
    CHECK(run({"integrate", "(integral x1 1 inf (pow x1 -1))"}).out.find("value: infinity") != std::string::npos);
}

TEST_CASE("exit codes") {
    Run parse = run({"log", "(+ 2 t1"});
    CHECK(parse.code == kExitParse);
    CHECK(parse.err.find('^') != std::string::npos);
    CHECK(run({"frobnicate"}).code == kExitParse);
    CHECK(run({"connect"}).code == kExitDomain);
    CHECK(run({"log", "(- t1)"}).code == kExitDomain);
    CHECK(run({"integrate", "(integral x1 1 2 (L x1))"}).code == kExitCatalogue);
    CHECK(run({"--context", samples + "/missing.json", "connect"}).code == kExitParse);
}

TEST_CASE("undecided comparisons report the scalar") {
    Run r = run({"--context", samples + "/twin.json", "log", "(- twin (pow 2 1/2))"});
    CHECK(r.code == kExitUndecided);
    CHECK(r.err.find("offending scalar: -rpow(2,1/2) + twin") != std::string::npos);
}

TEST_CASE("reports are deterministic and values re-parse") {
    const std::vector<std::string> args{"--context", samples + "/scaled.json", "connect"};
    CHECK(run(args).out == run(args).out);
    Run r = run({"--json", "measure", "(region (x1 1 (* 2 (pow t1 -3/2))) (x2 0 (inv x1)))"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    auto group = ValueGroup::canonical(2);
    PolyElem v = parse_poly(j["value"].get<std::string>(), group);
    CHECK(v.to_string() == j["value"].get<std::string>());
    CHECK(run({"log", "1"}).out.find("value: 0\n") != std::string::npos);
}

TEST_CASE("out-of-catalogue messages name the sub-integrand") {
    Run r = run({"integrate", "(integral x1 1 2 (+ x1 (inv (+ x1 1))))"});
    CHECK(r.code == kExitCatalogue);
    CHECK(r.err.find("(/ 1 (+ x1 1))") != std::string::npos);
}
