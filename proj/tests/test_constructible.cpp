#include "hahnlog/constructible.hpp"
#include "hahnlog/errors.hpp"

#include <doctest.h>

using namespace hahnlog;

namespace {

const GroupPtr& p2() {
    static GroupPtr g = ValueGroup::canonical(2);
    return g;
}

HahnSeries s(const char* text) { return parse_series(text, p2()); }

HahnSeries eval(const char* term, std::vector<HahnSeries> point = {}) {
    return eval_subanalytic(*parse_term(term, p2()), point);
}

}  // namespace

TEST_CASE("s-expression reader") {
    auto items = parse_sexprs("hahnlog-v1\n; comment\n(a (b c) 1/2) d");
    REQUIRE(items.size() == 2);
    CHECK(items[0].head() == "a");
    CHECK(items[0].items[1].to_string() == "(b c)");
    CHECK(items[1].is_atom("d"));
    CHECK(items[0].offset == 21);
    CHECK_THROWS_AS(parse_sexpr("(a b"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("a b"), ParseError);
    CHECK_THROWS_AS(strip_header("hahnlog-v2\n(a)"), ParseError);
    try {
        parse_sexpr("(a))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
}

TEST_CASE("terms evaluate at series points") {
    CHECK(eval("(+ x1 (* 2 x2))", {s("t1"), s("3")}) == s("6 + t1"));
    CHECK(eval("(- x1 1)", {s("4")}) == s("3"));
    CHECK(eval("(- x1)", {s("t2")}) == s("-t2"));
    CHECK(equal_to_precision(eval("(inv x1)", {s("1 - t1")}), invert(s("1 - t1"))));
    CHECK(eval("(pow x1 -1/2)", {s("4*t^(2,0)")}) == s("1/2*t^(-1,0)"));
    CHECK(eval("(tpow 1/2 -1)") == s("t^(1/2,-1)"));
    CHECK(equal_to_precision(eval("(L x1)", {s("1/2*t1")}), series_log1p(s("1/2*t1"))));
    CHECK(equal_to_precision(eval("(E (- x1))", {s("t2")}), series_exp(s("-t2"))));
    CHECK(equal_to_precision(eval("(binom 1/3 x1)", {s("t1")}), power_rational(s("1 + t1"), Rational(1, 3))));
}

TEST_CASE("piecewise terms follow the sign of the guard") {
    const char* abs = "(if (pos x1) x1 (- x1))";
    CHECK(eval(abs, {s("-2 + t1")}) == s("2 - t1"));
    CHECK(eval(abs, {s("t1")}) == s("t1"));
    CHECK(eval("(if (zero x1) 1 (inv x1))", {s("0")}) == s("1"));
}

TEST_CASE("guards raise outside their domain") {
    CHECK_THROWS_AS(eval("(/ 1 x1)", {s("0")}), GuardViolation);
    CHECK_THROWS_AS(eval("(pow x1 1/2)", {s("-1")}), GuardViolation);
    CHECK_THROWS_AS(eval("(L x1)", {s("2")}), DomainError);
    CHECK_THROWS_AS(eval("x2", {s("1")}), DomainError);
    CHECK_THROWS_AS(eval("(log x1)", {s("2")}), DomainError);
    CHECK_THROWS_AS(parse_term("(frobnicate x1)", p2()), ParseError);
    CHECK_THROWS_AS(parse_term("(pow x1 x2)", p2()), ParseError);
}

TEST_CASE("normal form of constructible expressions") {
    ConstructibleExpr f = parse_constructible("(* (+ x1 (log x1)) (log x2))", p2());
    CHECK(f.products.size() == 2);
    CHECK(f.tag == LogTag::Real);
    CHECK(lift(f).tag == LogTag::Mu);
    CHECK_THROWS_AS(parse_constructible("(inv (log x1))", p2()), ParseError);
    CHECK_THROWS_AS(parse_constructible("(L (log x1))", p2()), ParseError);
    CHECK_NOTHROW(parse_constructible("(pow (log x1) 2)", p2()));
}

TEST_CASE("real and lifted evaluation") {
    LogDatum nu = LogDatum::canonical(p2());
    ConstructibleExpr f = parse_constructible("(* x1 (log x1))", p2());
    CHECK(eval_real(f, {s("2")}) == s("2*log(2)"));
    CHECK_THROWS_AS(eval_real(f, {s("t^(-1,0)")}), DomainError);
    CHECK_THROWS_AS(eval_real(f, {s("-2")}), NonPositiveLog);
    CHECK_THROWS_AS(eval_constructible(nu, f, {s("2")}), DomainError);
    ConstructibleExpr g = lift(parse_constructible("(* (log x1) (log x1))", p2()));
    CHECK(eval_constructible(nu, g, {s("t^(-1,0)")}) == parse_poly("X1^2", p2()));
    CHECK(eval_constructible(nu, lift(f), {s("2")}) == PolyElem(s("2*log(2)")));
}

TEST_CASE("transport along a connection") {
    LogDatum nu = LogDatum::canonical(p2());
    SymMatrix t(2, 2);
    t << SymbolicReal(3), SymbolicReal(0), SymbolicReal(0), SymbolicReal(1);
    LogDatum mu(Section(p2(), {s("2*t1"), s("t2")}), t);
    ConnectionResult r = connection(nu, mu);
    REQUIRE(r.equivalent());
    ConstructibleExpr f = lift(parse_constructible("(+ (* x2 (log x1)) (log (+ x1 x2)))", p2()));
    std::vector<HahnSeries> point{s("t^(-1,0) + 1"), s("5*t^(0,-2)")};
    CHECK(equal_to_precision(transport(*r.map, nu, f, point), eval_constructible(mu, f, point)));
}
