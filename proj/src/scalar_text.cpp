#include "hahnlog/infix.hpp"
#include "hahnlog/scalar_atoms.hpp"
#include "hahnlog/scalars.hpp"

namespace hahnlog {

namespace {

class ScalarParser : public InfixParser<ScalarParser, SymbolicReal> {
public:
    using InfixParser::InfixParser;

    SymbolicReal number(const Rational& q) { return SymbolicReal(q); }
    SymbolicReal add(SymbolicReal a, const SymbolicReal& b) { return a += b; }
    SymbolicReal sub(SymbolicReal a, const SymbolicReal& b) { return a -= b; }
    SymbolicReal mul(const SymbolicReal& a, const SymbolicReal& b) { return a * b; }
    SymbolicReal neg(const SymbolicReal& a) { return -a; }
    SymbolicReal div(const SymbolicReal& a, const SymbolicReal& b) {
        if (b.is_zero()) lex_.fail("division by zero");
        return a * power(b, Rational(-1));
    }
    SymbolicReal pow(const SymbolicReal& a, const SymbolicReal& e, std::size_t at) {
        if (!e.is_rational()) throw ParseError("exponent must be rational", at);
        return power(a, e.rational_part());
    }
    SymbolicReal atom(std::string_view name, std::size_t offset) {
        return parse_scalar_atom(name, offset, lex_, [this] { return parse_expr(); });
    }
};

}  // namespace

SymbolicReal parse_scalar(std::string_view text) { return ScalarParser(text).parse_all(); }

}  // namespace hahnlog
