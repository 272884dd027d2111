#include "hahnlog/errors.hpp"
#include "hahnlog/linalg.hpp"
#include "hahnlog/valuegroup.hpp"

#include <doctest.h>

using namespace hahnlog;

namespace {

SymMatrix sym(std::initializer_list<std::initializer_list<const char*>> rows) {
    SymMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto row : rows) {
        Eigen::Index j = 0;
        for (auto e : row) m(i, j++) = parse_scalar(e);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("antilexicographic order on Q^2") {
    auto g = ValueGroup::canonical(2);
    CHECK(g->compare({Rational(5), Rational(0)}, {Rational(0), Rational(1)}) == Ordering::LT);
    CHECK(g->compare({Rational(-1), Rational(1)}, {Rational(100), Rational(1)}) == Ordering::LT);
    CHECK(g->sign({Rational(7), Rational(-1, 2)}) == -1);
    CHECK(g->arch_index({Rational(3), Rational(0)}) == 1);
    CHECK(g->arch_index({Rational(3), Rational(-2)}) == 2);
    CHECK(g->arch_index(g->zero()) == 0);
    CHECK(g->is_identity());
    CHECK(g->full_archimedean_rank());
}

TEST_CASE("irrational generators and coordinates") {
    auto g = ValueGroup::create(1, sym({{"1", "rpow(2,1/2)"}}));
    CHECK(g->size() == 2);
    CHECK_FALSE(g->is_rational());
    CHECK(g->sign({Rational(-3, 2), Rational(1)}) == -1);
    CHECK(g->sign({Rational(-1), Rational(1)}) == 1);
    auto c = g->coordinates_of({parse_scalar("2 - 3*rpow(2,1/2)")});
    REQUIRE(c);
    CHECK((*c == Coords{Rational(2), Rational(-3)}));
    CHECK_FALSE(g->coordinates_of({parse_scalar("log(2)")}).has_value());
}

TEST_CASE("dependent generators are rejected") {
    CHECK_THROWS_AS(ValueGroup::create(1, sym({{"1", "3/2"}})), DomainError);
    CHECK_THROWS_AS(ValueGroup::create(1, sym({{"rpow(2,1/2)", "rpow(8,1/2)"}})), DomainError);
    CHECK(rational_rank(sym({{"1", "log(2)"}, {"0", "0"}})) == 2);
}

TEST_CASE("unpopulated archimedean classes are reported") {
    auto g = ValueGroup::create(2, sym({{"1"}, {"0"}}));
    CHECK_FALSE(g->full_archimedean_rank());
    CHECK(g->unpopulated_classes() == std::vector<std::size_t>{2});
}

TEST_CASE("embedding validation") {
    auto g = ValueGroup::canonical(2);
    CHECK(validate_embedding(sym({{"1", "0"}, {"0", "1"}}), *g).ok());
    CHECK(validate_embedding(sym({{"2", "-5"}, {"0", "log(2)"}}), *g).ok());
    CHECK_FALSE(validate_embedding(sym({{"1", "0"}, {"1", "1"}}), *g).ok());
    CHECK_FALSE(validate_embedding(sym({{"-1", "0"}, {"0", "1"}}), *g).ok());
    auto report = validate_embedding(sym({{"1", "0"}, {"0", "0"}}), *g);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.to_string().empty());
}

TEST_CASE("embedding transition is the lower triangular lambda") {
    auto g = ValueGroup::canonical(2);
    SymMatrix t = sym({{"1", "2"}, {"0", "1"}});
    SymMatrix tp = sym({{"3", "1"}, {"0", "2"}});
    SymMatrix lambda = embedding_transition(t, tp, *g);
    SymMatrix back = multiply(lambda, embedding_on_generators(t, *g));
    CHECK(back == embedding_on_generators(tp, *g));
}

TEST_CASE("fraction-free elimination") {
    RatMatrix a(3, 3);
    a << Rational(2), Rational(1), Rational(-1), Rational(-3), Rational(-1), Rational(2), Rational(-2), Rational(1),
        Rational(2);
    CHECK(rank(a) == 3);
    auto x = solve_rational(a, {Rational(8), Rational(-11), Rational(-3)});
    REQUIRE(x);
    CHECK((*x == std::vector<Rational>{Rational(2), Rational(3), Rational(-1)}));
    RatMatrix s(2, 2);
    s << Rational(1), Rational(2), Rational(2), Rational(4);
    CHECK(rank(s) == 1);
    CHECK(independent_rows(s).size() == 1);
}

TEST_CASE("antilex sign of real vectors") {
    CHECK(antilex_sign({parse_scalar("-100"), parse_scalar("log(2)")}) == 1);
    CHECK(antilex_sign({parse_scalar("0"), parse_scalar("0")}) == 0);
    CHECK(antilex_index({parse_scalar("-1"), parse_scalar("0")}) == 1);
}
