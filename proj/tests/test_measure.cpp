#include "hahnlog/errors.hpp"
#include "hahnlog/measure.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

using namespace hahnlog;

namespace {

const GroupPtr& p2() {
    static GroupPtr g = ValueGroup::canonical(2);
    return g;
}

const LogDatum& nu() {
    static LogDatum d = LogDatum::canonical(p2());
    return d;
}

PolyElem p(const char* text) { return parse_poly(text, p2()); }

PolyOrInfinity integral(const char* text, const LogDatum& mu = nu()) {
    IntegralProblem prob = parse_integral(mu, text);
    return integrate_region(mu, prob.integrand, prob.region, prob.order);
}

PolyOrInfinity measure(const char* text) { return measure_region(nu(), parse_region(nu(), text)); }

bool is(const PolyOrInfinity& v, const char* expected) {
    return !is_infinity(v) && equal_to_precision(std::get<PolyElem>(v), p(expected));
}

}  // namespace

TEST_CASE("antiderivatives differentiate back") {
    PolyElem one(HahnSeries::constant(p2(), SymbolicReal(1)));
    for (Rational r : {Rational(-3), Rational(-1, 2), Rational(0), Rational(5, 3)}) {
        for (unsigned k : {0U, 1U, 3U}) {
            auto prim = antiderivative({one, r, k});
            // d/dx c x^s (log x)^b = c s x^(s-1) (log x)^b + c b x^(s-1) (log x)^(b-1)
            std::map<unsigned, SymbolicReal> derivative;
            for (const auto& t : prim) {
                CHECK(t.r == r + 1);
                REQUIRE(t.c.is_constant());
                SymbolicReal c = t.c.constant_part().terms().empty() ? SymbolicReal(0) : t.c.constant_part().terms()[0].coef;
                derivative[t.k] += c * SymbolicReal(t.r);
                if (t.k > 0) derivative[t.k - 1] += c * SymbolicReal(Rational(t.k));
            }
            for (const auto& [b, c] : derivative) CHECK(c == SymbolicReal(b == k ? 1 : 0));
        }
    }
    auto logarithmic = antiderivative({one, Rational(-1), 2});
    REQUIRE(logarithmic.size() == 1);
    CHECK(logarithmic[0].r == 0);
    CHECK(logarithmic[0].k == 3);
}

TEST_CASE("closed forms over the reals") {
    CHECK(is(integral("(integral x1 1 inf (pow x1 -2))"), "1"));
    CHECK(is(integral("(integral x1 0 1 (pow x1 -1/2))"), "2"));
    CHECK(is(integral("(integral x1 0 1 (log x1))"), "-1"));
    CHECK(is(integral("(integral x1 1 2 (/ 1 x1))"), "log(2)"));
    CHECK(is_infinity(integral("(integral x1 1 inf (pow x1 -1))")));
    CHECK(is_infinity(integral("(integral x1 0 1 (pow x1 -1))")));
}

TEST_CASE("integrals with infinitely large bounds land in R[X]") {
    CHECK(is(integral("(integral x1 1 (inv t1) (/ (log x1) x1))"), "1/2*X1^2"));
    CHECK(is(integral("(integral x1 1 (inv t1) (log x1))"), "t^(-1,0)*X1 - t^(-1,0) + 1"));
    CHECK(is(integral("(integral x1 1 (inv t1) (integral x2 1 (inv t2) (/ 1 (* x1 x2))))"), "X1*X2"));
}

TEST_CASE("measures of cylinder regions") {
    CHECK(is(measure("(region (x1 0 1) (x2 0 1))"), "1"));
    CHECK(is(measure("(region (x1 t2 (* 2 t2)))"), "t^(0,1)"));
    CHECK(is(measure("(region (x1 1 (inv t1)) (x2 0 (inv x1)))"), "X1"));
    CHECK(is(measure("(region (x1 1 (* 2 (pow t1 -3/2))) (x2 0 (inv x1)))"), "3/2*X1 + log(2)"));
    CHECK(is(measure("(region (x1 0 2) (x2 0 (pow x1 2)))"), "8/3"));
    CHECK(is(measure("(region (x1 0 1) (x2 0 (+ x1 1)))"), "3/2"));
    CHECK(is_infinity(measure("(region (x1 0 inf))")));
}

TEST_CASE("divergences with opposite signs do not cancel silently") {
    CHECK_THROWS_AS(integral("(integral x1 1 inf (- (pow x1 -1) (pow x1 -1/2)))"), IndeterminateCancellation);
    CHECK(is_infinity(integral("(integral x1 1 inf (+ (pow x1 -1) (pow x1 2)))")));
}

TEST_CASE("catalogue and domain limits") {
    CHECK_THROWS_AS(integral("(integral x1 1 2 (L x1))"), OutOfCatalogue);
    CHECK_THROWS_AS(integral("(integral x1 1 2 (inv (+ x1 1)))"), OutOfCatalogue);
    CHECK_THROWS_AS(measure("(region (x1 1 2) (x2 0 (log (+ x1 1))))"), Error);
    CHECK_THROWS_AS(measure("(region (x1 (- 1) 2))"), DomainError);
    CHECK_THROWS_AS(measure("(region (x1 2 1))"), DomainError);
    CHECK_THROWS_AS(measure("(region (x1 0 x1))"), Error);
    CHECK_THROWS_AS(parse_region(nu(), "(regio (x1 0 1))"), ParseError);
}

TEST_CASE("integrability of constructible functions") {
    PolyElem one(HahnSeries::constant(p2(), SymbolicReal(1)));
    LogPowerPoly inv_sq = LogPowerPoly::term(one, LogPowerKey{{Rational(-2)}, {0}});
    auto r = integrate_constructible(nu(), inv_sq, Endpoint::constant(HahnSeries::constant(p2(), SymbolicReal(1)), 1),
                                     Endpoint::infinity());
    CHECK(r.integrable);
    REQUIRE(r.value);
    CHECK(*r.value == one);
    auto d = integrate_constructible(nu(), inv_sq, Endpoint::zero(), Endpoint::infinity());
    CHECK_FALSE(d.integrable);
}

TEST_CASE("integrability as a function of the upper bound") {
    PolyElem one(HahnSeries::constant(p2(), SymbolicReal(1)));
    auto c = [](const char* v) { return Endpoint::constant(parse_series(v, p2()), 1); };
    std::vector<Endpoint> samples{c("2"), c("t^(-1,0)"), Endpoint::infinity()};
    FinReport a = fin_parametric(nu(), LogPowerPoly::term(one, LogPowerKey{{Rational(-2)}, {0}}), c("1"), samples);
    CHECK(a.condition == "finite for every a");
    CHECK(a.integrable == std::vector<bool>{true, true, true});
    FinReport b = fin_parametric(nu(), LogPowerPoly::term(one, LogPowerKey{{Rational(0)}, {1}}), c("1"), samples);
    CHECK(b.condition == "finite iff a < infinity");
    CHECK(b.integrable == std::vector<bool>{true, true, false});
    FinReport z = fin_parametric(nu(), LogPowerPoly::term(one, LogPowerKey{{Rational(-1)}, {0}}), Endpoint::zero(), samples);
    CHECK(z.integrable == std::vector<bool>{false, false, false});
}

TEST_CASE("Fubini on a product integrand") {
    IntegralProblem prob = parse_integral(nu(), "(integral x1 1 (inv t1) (integral x2 2 (inv t2) (* (pow x1 -2) (log x2))))");
    FubiniReport f = fubini_check(nu(), prob.integrand, prob.region);
    CHECK(f.agree);
    CHECK(poly_compare(f.inner_first, f.inner_last) == Ordering::EQ);
}

TEST_CASE("rank zero integrals match numerical quadrature") {
    GroupPtr g0 = ValueGroup::canonical(0);
    LogDatum real = LogDatum::canonical(g0);
    struct Case {
        const char* text;
        double lo, hi;
        std::function<double(double)> f;
    };
    std::vector<Case> cases{
        {"(integral x1 1/2 3 (* (pow x1 1/3) (log x1)))", 0.5, 3.0, [](double x) { return std::cbrt(x) * std::log(x); }},
        {"(integral x1 1 5 (* (pow x1 -3/2) (pow (log x1) 2)))", 1, 5, [](double x) { return std::pow(x, -1.5) * std::log(x) * std::log(x); }},
        {"(integral x1 1/3 7/2 (- (* 2 x1) (/ (log x1) x1)))", 1.0 / 3, 3.5, [](double x) { return 2 * x - std::log(x) / x; }},
    };
    for (const auto& c : cases) {
        PolyOrInfinity v = integral(c.text, real);
        REQUIRE_FALSE(is_infinity(v));
        const PolyElem& poly = std::get<PolyElem>(v);
        REQUIRE(poly.is_constant());
        double exact = to_double(poly.constant_part().terms().at(0).coef);
        double numeric = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(c.f, c.lo, c.hi, 15, 1e-13);
        CHECK(std::abs(exact - numeric) <= 1e-9 * std::abs(numeric));
    }
}
