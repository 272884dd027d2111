#include "hahnlog/constructible.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>
#include <cctype>

namespace hahnlog {

namespace {

std::string span_text(const Expr& t) { return " at offset " + std::to_string(t.offset); }

ExprPtr make(ExprOp op, const SExpr& at, std::vector<ExprPtr> children = {}) {
    auto t = std::make_shared<Expr>();
    t->op = op;
    t->children = std::move(children);
    t->offset = at.offset;
    t->length = at.length;
    return t;
}

ExprPtr make_const(const HahnSeries& v, const SExpr& at) {
    auto t = std::make_shared<Expr>();
    t->op = ExprOp::Const;
    t->value = v;
    t->offset = at.offset;
    t->length = at.length;
    return t;
}

bool looks_numeric(const std::string& s) {
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

std::optional<std::size_t> indexed_name(const std::string& s, char prefix) {
    if (s.size() < 2 || s[0] != prefix) return std::nullopt;
    if (s.find_first_not_of("0123456789", 1) != std::string::npos) return std::nullopt;
    return std::stoul(s.substr(1));
}

Rational rational_atom(const SExpr& e) {
    if (e.is_list || !looks_numeric(e.atom)) throw ParseError("expected a rational number", e.offset, e.length);
    try {
        return parse_rational(e.atom);
    } catch (const ParseError&) {
        throw ParseError("malformed rational '" + e.atom + "'", e.offset, e.length);
    }
}

class TermParser {
public:
    explicit TermParser(GroupPtr group) : group_(std::move(group)) {}

    ExprPtr parse(const SExpr& e) {
        if (!e.is_list) return atom(e);
        if (e.items.empty()) throw ParseError("empty list", e.offset, e.length);
        const std::string op = e.head();
        if (op.empty()) throw ParseError("expected an operator", e.items[0].offset, e.items[0].length);
        auto args = [&](std::size_t lo, std::size_t hi) {
            std::size_t n = e.items.size() - 1;
            if (n < lo || n > hi)
                throw ParseError("'" + op + "' takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or more") +
                                     " arguments",
                                 e.offset, e.length);
        };
        auto sub = [&](std::size_t i) { return parse(e.items[i]); };
        auto all = [&](std::size_t from) {
            std::vector<ExprPtr> out;
            for (std::size_t i = from; i < e.items.size(); ++i) out.push_back(parse(e.items[i]));
            return out;
        };
        if (op == "+" || op == "sum") {
            args(1, SIZE_MAX);
            return make(ExprOp::Add, e, all(1));
        }
        if (op == "*" || op == "prod") {
            args(1, SIZE_MAX);
            return make(ExprOp::Mul, e, all(1));
        }
        if (op == "-") {
            args(1, 2);
            if (e.items.size() == 2) return make(ExprOp::Neg, e, {sub(1)});
            return make(ExprOp::Add, e, {sub(1), make(ExprOp::Neg, e.items[2], {sub(2)})});
        }
        if (op == "/") {
            args(2, 2);
            return make(ExprOp::Div, e, {sub(1), sub(2)});
        }
        if (op == "inv") {
            args(1, 1);
            return make(ExprOp::Div, e, {make_const(HahnSeries::constant(group_, SymbolicReal(1)), e), sub(1)});
        }
        if (op == "pow") {
            args(2, 2);
            auto t = std::const_pointer_cast<Expr>(make(ExprOp::Pow, e, {sub(1)}));
            t->exponent = rational_atom(e.items[2]);
            return t;
        }
        if (op == "L" || op == "E") {
            args(1, 1);
            return make(op == "L" ? ExprOp::L : ExprOp::E, e, {sub(1)});
        }
        if (op == "binom") {
            args(2, 2);
            auto t = std::const_pointer_cast<Expr>(make(ExprOp::Binom, e, {sub(2)}));
            t->exponent = rational_atom(e.items[1]);
            return t;
        }
        if (op == "log") {
            args(1, 1);
            return make(ExprOp::Log, e, {sub(1)});
        }
        if (op == "if") {
            args(3, 3);
            const SExpr& c = e.items[1];
            static const std::pair<const char*, Condition> names[] = {
                {"pos", Condition::Pos},       {"neg", Condition::Neg},       {"zero", Condition::Zero},
                {"nonneg", Condition::NonNeg}, {"nonpos", Condition::NonPos}, {"nonzero", Condition::NonZero}};
            auto it = std::find_if(std::begin(names), std::end(names), [&](const auto& p) { return c.head() == p.first; });
            if (it == std::end(names) || c.items.size() != 2)
                throw ParseError("expected a sign condition such as (pos g)", c.offset, c.length);
            auto t = std::const_pointer_cast<Expr>(make(ExprOp::If, e, {parse(c.items[1]), sub(2), sub(3)}));
            t->condition = it->second;
            return t;
        }
        if (op == "tpow") {
            args(group_->rank(), group_->rank());
            std::vector<SymbolicReal> v;
            for (std::size_t i = 1; i < e.items.size(); ++i) v.push_back(scalar_of(e.items[i]));
            auto c = group_->coordinates_of(v);
            if (!c) throw ParseError("exponent is not in the value group", e.offset, e.length);
            return make_const(HahnSeries::monomial(group_, SymbolicReal(1), *c), e);
        }
        throw ParseError("unknown operator '" + op + "'", e.items[0].offset, e.items[0].length);
    }

private:
    SymbolicReal scalar_of(const SExpr& e) {
        ExprPtr t = parse(e);
        HahnSeries v = eval_subanalytic(*t, {});
        if (v.is_exact_zero()) return SymbolicReal();
        if (!v.is_constant()) throw ParseError("expected a real constant", e.offset, e.length);
        return v.terms()[0].coef;
    }

    ExprPtr atom(const SExpr& e) {
        const std::string& s = e.atom;
        if (looks_numeric(s)) return make_const(HahnSeries::constant(group_, SymbolicReal(rational_atom(e))), e);
        if (auto k = indexed_name(s, 'x')) {
            if (*k == 0) throw ParseError("variables are numbered from x1", e.offset, e.length);
            auto t = std::const_pointer_cast<Expr>(make(ExprOp::Var, e));
            t->var = *k;
            return t;
        }
        if (auto k = indexed_name(s, 't')) {
            if (*k == 0 || *k > group_->size()) throw ParseError("generator " + s + " out of range", e.offset, e.length);
            return make_const(HahnSeries::monomial(group_, SymbolicReal(1), group_->generator(*k - 1)), e);
        }
        if (auto sym = ConstantRegistry::instance().find(s); sym && sym->kind() == ConstantKind::Adjoined)
            return make_const(HahnSeries::constant(group_, SymbolicReal::constant(sym)), e);
        throw ParseError("unknown symbol '" + s + "'", e.offset, e.length);
    }

    GroupPtr group_;
};

const char* op_name(ExprOp op) {
    switch (op) {
        case ExprOp::Add: return "+";
        case ExprOp::Mul: return "*";
        case ExprOp::Neg: return "-";
        case ExprOp::Div: return "/";
        case ExprOp::Pow: return "pow";
        case ExprOp::L: return "L";
        case ExprOp::E: return "E";
        case ExprOp::Binom: return "binom";
        case ExprOp::If: return "if";
        case ExprOp::Log: return "log";
        default: return "?";
    }
}

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::Pos: return "pos";
        case Condition::Neg: return "neg";
        case Condition::Zero: return "zero";
        case Condition::NonNeg: return "nonneg";
        case Condition::NonPos: return "nonpos";
        default: return "nonzero";
    }
}

int series_sign(const HahnSeries& x) { return x.is_exact_zero() ? 0 : sign(x); }

}  // namespace

bool Expr::has_log() const {
    return op == ExprOp::Log || std::any_of(children.begin(), children.end(), [](const ExprPtr& c) { return c->has_log(); });
}

std::size_t Expr::max_var() const {
    std::size_t m = op == ExprOp::Var ? var : 0;
    for (const auto& c : children) m = std::max(m, c->max_var());
    return m;
}

std::string Expr::to_string() const {
    switch (op) {
        case ExprOp::Var: return "x" + std::to_string(var);
        case ExprOp::Const: {
            std::string s = value->to_string();
            return s.find(' ') == std::string::npos ? s : "[" + s + "]";
        }
        case ExprOp::Pow: return "(pow " + children[0]->to_string() + " " + hahnlog::to_string(exponent) + ")";
        case ExprOp::Binom: return "(binom " + hahnlog::to_string(exponent) + " " + children[0]->to_string() + ")";
        case ExprOp::If:
            return std::string("(if (") + condition_name(condition) + " " + children[0]->to_string() + ") " +
                   children[1]->to_string() + " " + children[2]->to_string() + ")";
        default: {
            std::string out = std::string("(") + op_name(op);
            for (const auto& c : children) out += " " + c->to_string();
            return out + ")";
        }
    }
}

ExprPtr parse_term(const SExpr& e, const GroupPtr& group) { return TermParser(group).parse(e); }

ExprPtr parse_term(std::string_view text, const GroupPtr& group) { return parse_term(parse_sexpr(text), group); }

HahnSeries eval_subanalytic(const Expr& f, const std::vector<HahnSeries>& point, const SeriesContext& ctx) {
    auto ev = [&](std::size_t i) { return eval_subanalytic(*f.children[i], point, ctx); };
    switch (f.op) {
        case ExprOp::Var:
            if (f.var > point.size()) throw DomainError("the point has no coordinate x" + std::to_string(f.var));
            return point[f.var - 1];
        case ExprOp::Const: return *f.value;
        case ExprOp::Add: {
            HahnSeries acc = ev(0);
            for (std::size_t i = 1; i < f.children.size(); ++i) acc += ev(i);
            return acc;
        }
        case ExprOp::Mul: {
            HahnSeries acc = ev(0);
            for (std::size_t i = 1; i < f.children.size(); ++i) acc *= ev(i);
            return acc;
        }
        case ExprOp::Neg: return -ev(0);
        case ExprOp::Div: {
            HahnSeries b = ev(1);
            if (b.is_exact_zero()) throw GuardViolation("division by zero in " + f.to_string() + span_text(f));
            return ev(0) * invert(b, ctx);
        }
        case ExprOp::Pow: {
            HahnSeries a = ev(0);
            if (is_integer(f.exponent)) {
                if (a.is_exact_zero()) {
                    if (sgn(f.exponent) < 0) throw GuardViolation("0 to a negative power in " + f.to_string() + span_text(f));
                    return sgn(f.exponent) == 0 ? HahnSeries::constant(a.group(), SymbolicReal(1)) : a;
                }
                return power_rational(a, f.exponent, ctx);
            }
            if (series_sign(a) <= 0)
                throw GuardViolation("rational power of a non-positive base in " + f.to_string() + span_text(f));
            return power_rational(a, f.exponent, ctx);
        }
        case ExprOp::L: return series_log1p(ev(0), ctx);
        case ExprOp::E: return series_exp(ev(0), ctx);
        case ExprOp::Binom: return series_binomial(ev(0), f.exponent, ctx);
        case ExprOp::If: {
            int s = series_sign(ev(0));
            bool holds = false;
            switch (f.condition) {
                case Condition::Pos: holds = s > 0; break;
                case Condition::Neg: holds = s < 0; break;
                case Condition::Zero: holds = s == 0; break;
                case Condition::NonNeg: holds = s >= 0; break;
                case Condition::NonPos: holds = s <= 0; break;
                case Condition::NonZero: holds = s != 0; break;
            }
            return ev(holds ? 1 : 2);
        }
        case ExprOp::Log: break;
    }
    throw DomainError("logarithm inside a subanalytic term: " + f.to_string() + span_text(f));
}

namespace {

using Products = std::vector<std::vector<ProductFactor>>;

Products normal_form(const ExprPtr& t, const GroupPtr& group) {
    if (!t->has_log()) return {{ProductFactor{false, t}}};
    switch (t->op) {
        case ExprOp::Log: {
            if (t->children[0]->has_log())
                throw ParseError("logarithm of a logarithmic expression is not constructible", t->offset, t->length);
            return {{ProductFactor{true, t->children[0]}}};
        }
        case ExprOp::Add: {
            Products out;
            for (const auto& c : t->children) {
                Products p = normal_form(c, group);
                out.insert(out.end(), p.begin(), p.end());
            }
            return out;
        }
        case ExprOp::Neg: {
            Products out = normal_form(t->children[0], group);
            auto minus = std::make_shared<Expr>();
            minus->op = ExprOp::Const;
            minus->value = HahnSeries::constant(group, SymbolicReal(-1));
            minus->offset = t->offset;
            minus->length = t->length;
            for (auto& prod : out) prod.insert(prod.begin(), ProductFactor{false, minus});
            return out;
        }
        case ExprOp::Mul: {
            Products out{{}};
            for (const auto& c : t->children) {
                Products p = normal_form(c, group);
                Products next;
                for (const auto& a : out)
                    for (const auto& b : p) {
                        auto ab = a;
                        ab.insert(ab.end(), b.begin(), b.end());
                        next.push_back(std::move(ab));
                    }
                out = std::move(next);
            }
            return out;
        }
        case ExprOp::Pow: {
            if (!is_integer(t->exponent) || sgn(t->exponent) <= 0)
                throw ParseError("a logarithmic factor can only be raised to a positive integer power", t->offset, t->length);
            Products base = normal_form(t->children[0], group);
            Products out = base;
            for (long n = 1; n < t->exponent.get_num().get_si(); ++n) {
                Products next;
                for (const auto& a : out)
                    for (const auto& b : base) {
                        auto ab = a;
                        ab.insert(ab.end(), b.begin(), b.end());
                        next.push_back(std::move(ab));
                    }
                out = std::move(next);
            }
            return out;
        }
        default:
            throw ParseError(std::string("a logarithm under '") + op_name(t->op) + "' is not constructible", t->offset,
                             t->length);
    }
}

}  // namespace

ConstructibleExpr to_constructible(const ExprPtr& term, const GroupPtr& group) {
    ConstructibleExpr out;
    out.products = normal_form(term, group);
    out.group = group;
    return out;
}

ConstructibleExpr parse_constructible(std::string_view text, const GroupPtr& group) {
    return to_constructible(parse_term(text, group), group);
}

std::string ConstructibleExpr::to_string() const {
    std::string out = tag == LogTag::Mu ? "(lift (sum" : "(sum";
    for (const auto& prod : products) {
        out += " (prod";
        for (const auto& f : prod) out += " " + (f.is_log ? "(log " + f.term->to_string() + ")" : f.term->to_string());
        out += ")";
    }
    return out + (tag == LogTag::Mu ? "))" : ")");
}

ConstructibleExpr lift(const ConstructibleExpr& f) {
    ConstructibleExpr out = f;
    out.tag = LogTag::Mu;
    return out;
}

namespace {

HahnSeries positive_argument(const ProductFactor& f, const std::vector<HahnSeries>& point, const SeriesContext& ctx) {
    HahnSeries v = eval_subanalytic(*f.term, point, ctx);
    if (series_sign(v) <= 0)
        throw NonPositiveLog("log of a non-positive value " + v.to_string() + " in " + f.term->to_string() +
                             span_text(*f.term));
    return v;
}

}  // namespace

HahnSeries eval_real(const ConstructibleExpr& f, const std::vector<HahnSeries>& point, const SeriesContext& ctx) {
    if (f.tag != LogTag::Real) throw DomainError("eval_real needs an unlifted expression");
    if (!f.group) throw DomainError("expression has no value group");
    HahnSeries sum(f.group);
    for (const auto& prod : f.products) {
        HahnSeries acc = HahnSeries::constant(f.group, SymbolicReal(1));
        for (const auto& factor : prod)
            acc *= factor.is_log ? partial_log(positive_argument(factor, point, ctx), ctx)
                                 : eval_subanalytic(*factor.term, point, ctx);
        sum += acc;
    }
    return sum;
}

PolyElem eval_constructible(const LogDatum& mu, const ConstructibleExpr& f, const std::vector<HahnSeries>& point,
                            const SeriesContext& ctx) {
    if (f.tag != LogTag::Mu) throw DomainError("eval_constructible needs a lifted expression");
    PolyElem sum(mu.group());
    for (const auto& prod : f.products) {
        PolyElem acc(HahnSeries::constant(mu.group(), SymbolicReal(1)));
        for (const auto& factor : prod) {
            if (factor.is_log)
                acc *= log_mu(mu, positive_argument(factor, point, ctx), ctx);
            else
                acc *= eval_subanalytic(*factor.term, point, ctx);
        }
        sum += acc;
    }
    return sum;
}

PolyElem transport(const AffineMap& phi, const LogDatum& mu, const ConstructibleExpr& f,
                   const std::vector<HahnSeries>& point, const SeriesContext& ctx) {
    return apply_connection(phi, eval_constructible(mu, f, point, ctx));
}

}  // namespace hahnlog
