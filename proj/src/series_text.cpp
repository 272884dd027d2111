#include "hahnlog/errors.hpp"
#include "hahnlog/hahnfield.hpp"
#include "hahnlog/infix.hpp"
#include "hahnlog/polyring.hpp"
#include "hahnlog/scalar_atoms.hpp"

namespace hahnlog {

namespace {

std::string exponent_text(const ValueGroup& g, const Coords& c) {
    std::string out = "t^(";
    auto v = g.real_vector(c);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ",";
        out += v[k].to_string();
    }
    return out + ")";
}

bool negative_single(const SymbolicReal& a) { return a.is_single_term() && sgn(a.terms().begin()->second) < 0; }

}  // namespace

std::string HahnSeries::to_string() const {
    if (terms_.empty() && !precision_) return "0";
    std::string out;
    for (const auto& t : terms_) {
        bool neg = !out.empty() && negative_single(t.coef);
        SymbolicReal c = neg ? -t.coef : t.coef;
        std::string piece;
        if (is_zero(t.exp))
            piece = c.to_string();
        else if (c.is_single_term())
            piece = c.to_string() + "*" + exponent_text(*group_, t.exp);
        else
            piece = "(" + c.to_string() + ")*" + exponent_text(*group_, t.exp);
        if (!out.empty()) out += neg ? " - " : " + ";
        out += piece;
    }
    if (precision_) out += (out.empty() ? "O(" : " + O(") + exponent_text(*group_, *precision_) + ")";
    return out;
}

std::string PolyElem::to_string() const {
    if (terms_.empty()) return "0";
    if (is_constant()) return terms_[0].second.to_string();
    std::string out;
    for (const auto& [alpha, c] : terms_) {
        std::string mono;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "X" + std::to_string(k + 1);
            if (alpha[k] > 1) mono += "^" + std::to_string(alpha[k]);
        }
        bool simple = c.is_constant() && c.has_visible_term() && c.terms()[0].coef.is_single_term();
        bool neg = !out.empty() && simple && negative_single(c.terms()[0].coef);
        HahnSeries shown = neg ? -c : c;
        std::string coef = shown.to_string();
        std::string piece;
        if (mono.empty()) {
            piece = simple ? coef : "(" + coef + ")";
        } else if (shown.is_constant() && shown.terms()[0].coef == SymbolicReal(1)) {
            piece = mono;
        } else if (shown.is_constant() && shown.terms()[0].coef == SymbolicReal(-1)) {
            piece = "-" + mono;
        } else {
            piece = "(" + coef + ")*" + mono;
        }
        if (!out.empty()) out += neg ? " - " : " + ";
        out += piece;
    }
    return out;
}

namespace {

class PolyParser : public InfixParser<PolyParser, PolyElem> {
public:
    PolyParser(std::string_view text, GroupPtr group, SeriesContext ctx)
        : InfixParser(text), group_(std::move(group)), ctx_(ctx) {}

    PolyElem number(const Rational& q) { return constant(SymbolicReal(q)); }
    PolyElem add(PolyElem a, const PolyElem& b) { return a += b; }
    PolyElem sub(PolyElem a, const PolyElem& b) { return a -= b; }
    PolyElem mul(const PolyElem& a, const PolyElem& b) { return a * b; }
    PolyElem neg(const PolyElem& a) { return -a; }

    PolyElem div(const PolyElem& a, const PolyElem& b) {
        std::size_t at = lex_.peek().offset;
        if (!b.is_constant()) throw ParseError("division by a non-constant polynomial", at);
        HahnSeries d = b.constant_part();
        if (d.is_exact_zero()) throw ParseError("division by zero", at);
        if (d.is_constant()) return a * constant(scalar_inverse(d.terms()[0].coef));
        return a * PolyElem(invert(d, ctx_));
    }

    PolyElem pow(const PolyElem& base, const PolyElem& e, std::size_t at) {
        SymbolicReal s = to_scalar(e, at);
        if (!s.is_rational()) throw ParseError("exponent must be rational", at);
        Rational q = s.rational_part();
        if (base.is_constant()) {
            HahnSeries c = base.constant_part();
            if (c.is_constant() && (is_integer(q) || sign(c) > 0))
                return constant(c.is_exact_zero() ? SymbolicReal(0) : hahnlog::power(c.terms()[0].coef, q));
            try {
                return PolyElem(power_rational(c, q, ctx_));
            } catch (const DomainError& err) {
                throw ParseError(err.what(), at);
            }
        }
        if (!is_integer(q) || q < 0) throw ParseError("polynomial exponent must be a natural number", at);
        return hahnlog::power(base, static_cast<unsigned>(q.get_num().get_ui()));
    }

    PolyElem atom(std::string_view name, std::size_t offset) {
        if (name == "t") {
            lex_.expect('^');
            return PolyElem(HahnSeries::monomial(group_, SymbolicReal(1), exponent_vector(offset)));
        }
        if (name == "O") {
            lex_.expect('(');
            auto tok = lex_.next();
            if (tok.kind != Lexer::Kind::Ident || tok.text != "t") throw ParseError("expected t^(...) inside O(...)", tok.offset);
            lex_.expect('^');
            Coords d = exponent_vector(offset);
            lex_.expect(')');
            return PolyElem(HahnSeries::big_o(group_, d));
        }
        if (name.size() >= 2 && (name[0] == 'X' || name[0] == 't') &&
            name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
            std::size_t k = std::stoul(std::string(name.substr(1)));
            if (name[0] == 'X') {
                if (k < 1 || k > group_->rank()) throw ParseError("variable " + std::string(name) + " out of range", offset, name.size());
                return PolyElem::variable(group_, k);
            }
            if (k < 1 || k > group_->size()) throw ParseError("generator " + std::string(name) + " out of range", offset, name.size());
            return PolyElem(HahnSeries::monomial(group_, SymbolicReal(1), group_->generator(k - 1)));
        }
        return constant(parse_scalar_atom(name, offset, lex_, [this] {
            std::size_t at = lex_.peek().offset;
            return to_scalar(parse_expr(), at);
        }));
    }

private:
    PolyElem constant(const SymbolicReal& a) { return PolyElem(HahnSeries::constant(group_, a)); }

    SymbolicReal to_scalar(const PolyElem& p, std::size_t at) {
        if (p.is_zero()) return SymbolicReal();
        if (!p.is_constant() || !p.constant_part().is_constant()) throw ParseError("expected a real constant", at);
        return p.constant_part().terms()[0].coef;
    }

    Coords exponent_vector(std::size_t offset) {
        lex_.expect('(');
        std::vector<SymbolicReal> v;
        if (!lex_.at_punct(')')) {
            for (;;) {
                std::size_t at = lex_.peek().offset;
                v.push_back(to_scalar(parse_expr(), at));
                if (!lex_.accept(',')) break;
            }
        }
        lex_.expect(')');
        if (v.size() != group_->rank())
            throw ParseError("exponent needs " + std::to_string(group_->rank()) + " entries", offset);
        auto c = group_->coordinates_of(v);
        if (!c) throw ParseError("exponent is not in the value group", offset);
        return *c;
    }

    GroupPtr group_;
    SeriesContext ctx_;
};

}  // namespace

PolyElem parse_poly(std::string_view text, const GroupPtr& group, const SeriesContext& ctx) {
    return PolyParser(text, group, ctx).parse_all();
}

HahnSeries parse_series(std::string_view text, const GroupPtr& group, const SeriesContext& ctx) {
    PolyElem p = parse_poly(text, group, ctx);
    if (!p.is_constant()) throw ParseError("expected a series without X variables", 0, text.size());
    return p.is_zero() ? HahnSeries(group) : p.constant_part();
}

}  // namespace hahnlog
