#include "hahnlog/errors.hpp"
#include "hahnlog/scalars.hpp"

#include <doctest.h>

#include <cmath>

using namespace hahnlog;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(to_string(Rational(7, 3)) == "7/3");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("factorization and roots") {
    auto f = factorize(Integer(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Integer, long>(Integer(2), 3));
    CHECK(f[1] == std::pair<Integer, long>(Integer(3), 2));
    CHECK(f[2] == std::pair<Integer, long>(Integer(5), 1));
    CHECK(floor_root(Integer(80), 3) == 4);
    CHECK(floor_root(Integer(81), 4) == 3);
}

TEST_CASE("enclosures contain the true value and nest") {
    for (long bits : {8L, 32L, 100L}) {
        Interval l = enclosure::log(Rational(3), bits);
        CHECK(l.width() <= Rational(1, 1) / (Rational(Integer(1) << bits)));
        CHECK(l.lo.get_d() <= std::log(3.0) + 1e-15);
        CHECK(l.hi.get_d() >= std::log(3.0) - 1e-15);
        Interval e = enclosure::exp(Rational(-5, 2), bits);
        CHECK(e.contains_zero() == false);
        const double tol = std::ldexp(1.0, static_cast<int>(-bits)) + 1e-15;
        CHECK(std::abs(e.midpoint().get_d() - std::exp(-2.5)) <= tol);
        Interval r = enclosure::rpow(Rational(2), Rational(1, 3), bits);
        CHECK(std::abs(r.midpoint().get_d() - std::cbrt(2.0)) <= tol);
    }
    auto sym = ConstantRegistry::instance().log_prime(Integer(5));
    Interval coarse = sym->enclose(10), fine = sym->enclose(60);
    CHECK(coarse.contains(fine));
}

TEST_CASE("canonical forms decide equality") {
    SymbolicReal a = parse_scalar("log(6)");
    CHECK(a == parse_scalar("log(2) + log(3)"));
    CHECK(parse_scalar("rpow(2,1/2) * rpow(2,1/2)") == SymbolicReal(2));
    CHECK(parse_scalar("rpow(12,1/2)") == parse_scalar("2*rpow(3,1/2)"));
    CHECK(parse_scalar("exp(1) * exp(-1)") == SymbolicReal(1));
    CHECK(parse_scalar("(log(2) + 1)^2") == parse_scalar("log(2)^2 + 2*log(2) + 1"));
    CHECK(log_of_rational(Rational(8, 9)) == parse_scalar("3*log(2) - 2*log(3)"));
}

TEST_CASE("printing round-trips") {
    for (const char* text : {"0", "-7/3", "log(2)", "2*log(3)^2 - log(2) + 1/5", "rpow(3,2/3)", "exp(1/2)",
                             "exp(2)*rpow(5,1/2) - 3"}) {
        SymbolicReal a = parse_scalar(text);
        CHECK(parse_scalar(a.to_string()) == a);
    }
}

TEST_CASE("exact division stays in the ring or reports") {
    SymbolicReal l2 = parse_scalar("log(2)");
    CHECK(parse_scalar("3*log(2)") / l2 == SymbolicReal(3));
    CHECK(SymbolicReal(1) / parse_scalar("rpow(2,1/2)") == parse_scalar("1/2*rpow(2,1/2)"));
    CHECK_THROWS_AS(SymbolicReal(1) / l2, NotRepresentable);
    CHECK_FALSE(try_divide(SymbolicReal(1), parse_scalar("1 + log(2)")).has_value());
}

TEST_CASE("symbolic log and exp") {
    auto l = log_symbolic(parse_scalar("4*rpow(3,1/2)"));
    REQUIRE(l);
    CHECK(*l == parse_scalar("2*log(2) + 1/2*log(3)"));
    CHECK_FALSE(log_symbolic(parse_scalar("1 + log(2)")).has_value());
    auto e = exp_symbolic(parse_scalar("1/2 + log(2)"));
    REQUIRE(e);
    CHECK(*e == parse_scalar("2*exp(1/2)"));
    CHECK_FALSE(exp_symbolic(parse_scalar("log(2)^2")).has_value());
}

TEST_CASE("sign and comparison against floating point") {
    CHECK(sign(parse_scalar("log(3) - log(2)")) == 1);
    CHECK(sign(parse_scalar("rpow(2,1/2) - 7/5")) == 1);
    CHECK(sign(parse_scalar("exp(1) - 2718281/1000000")) == 1);
    CHECK(sign(parse_scalar("log(2)^2 - 12/25")) == 1);
    CHECK(sign(SymbolicReal(0)) == 0);
    CHECK(compare(parse_scalar("log(5)"), parse_scalar("log(2) + log(3)")) == Ordering::LT);
    CHECK(to_double(parse_scalar("log(7) * rpow(2,1/2)")) == doctest::Approx(std::log(7.0) * std::sqrt(2.0)));
}

TEST_CASE("power of a non-unit adjoins a named root") {
    SymbolicReal x = power(parse_scalar("1 + log(2)"), Rational(1, 2));
    CHECK(x.to_string().find("rpow(") != std::string::npos);
    CHECK(to_double(x) == doctest::Approx(std::sqrt(1 + std::log(2.0))));
    CHECK(power(parse_scalar("1 + log(2)"), Rational(2)) == parse_scalar("1 + 2*log(2) + log(2)^2"));
}

TEST_CASE("comparison gives up at the configured precision") {
    ConstantRegistry::instance().adjoin("twin_root", [](long bits) { return enclosure::rpow(Rational(2), Rational(1, 2), bits); });
    const long saved = max_precision_bits();
    set_max_precision_bits(40);
    SymbolicReal d = parse_scalar("twin_root - rpow(2,1/2)");
    CHECK_THROWS_AS(sign(d), UndecidedComparison);
    try {
        sign(d);
    } catch (const UndecidedComparison& e) {
        CHECK(e.scalar().find("twin_root") != std::string::npos);
    }
    set_max_precision_bits(saved);
}

TEST_CASE("malformed scalar text") {
    CHECK_THROWS_AS(parse_scalar("log(2"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1 / 0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("undefined_name"), ParseError);
    try {
        parse_scalar("1 + + ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() >= 2);
    }
}
