#include "hahnlog/measure.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hahnlog {

bool LogPowerKey::is_one() const {
    return std::all_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) == 0; }) &&
           std::all_of(k.begin(), k.end(), [](unsigned e) { return e == 0; });
}

bool operator<(const LogPowerKey& a, const LogPowerKey& b) {
    for (std::size_t i = 0; i < a.r.size(); ++i) {
        if (a.r[i] != b.r[i]) return a.r[i] < b.r[i];
        if (a.k[i] != b.k[i]) return a.k[i] < b.k[i];
    }
    return false;
}

namespace {

LogPowerKey one_key(std::size_t n) { return {std::vector<Rational>(n, Rational(0)), std::vector<unsigned>(n, 0)}; }

PolyElem scalar(const GroupPtr& g, const Rational& q) { return PolyElem(HahnSeries::constant(g, SymbolicReal(q))); }

std::string rational_exponent(const Rational& q) {
    std::string s = to_string(q);
    return (sgn(q) < 0 || !is_integer(q)) ? "(" + s + ")" : s;
}

}  // namespace

LogPowerPoly::LogPowerPoly(GroupPtr group, std::size_t nvars) : group_(std::move(group)), nvars_(nvars) {}

LogPowerPoly LogPowerPoly::constant(const PolyElem& c, std::size_t nvars) {
    LogPowerPoly p(c.group(), nvars);
    p.add_term(one_key(nvars), c);
    return p;
}

LogPowerPoly LogPowerPoly::variable(GroupPtr group, std::size_t nvars, std::size_t i) {
    LogPowerKey key = one_key(nvars);
    key.r.at(i) = 1;
    return term(scalar(group, 1), key);
}

LogPowerPoly LogPowerPoly::log_variable(GroupPtr group, std::size_t nvars, std::size_t i) {
    LogPowerKey key = one_key(nvars);
    key.k.at(i) = 1;
    return term(scalar(group, 1), key);
}

LogPowerPoly LogPowerPoly::term(const PolyElem& c, LogPowerKey key) {
    LogPowerPoly p(c.group(), key.r.size());
    p.add_term(key, c);
    return p;
}

void LogPowerPoly::add_term(const LogPowerKey& key, const PolyElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

bool LogPowerPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

PolyElem LogPowerPoly::constant_value() const {
    if (!is_constant()) throw DomainError(to_string() + " still depends on a variable");
    return terms_.empty() ? PolyElem(group_) : terms_.begin()->second;
}

bool LogPowerPoly::depends_on(std::size_t i) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [i](const auto& t) { return sgn(t.first.r[i]) != 0 || t.first.k[i] != 0; });
}

bool LogPowerPoly::is_log_free() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
        return std::all_of(t.first.k.begin(), t.first.k.end(), [](unsigned e) { return e == 0; });
    });
}

LogPowerPoly& LogPowerPoly::operator+=(const LogPowerPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, c);
    return *this;
}

LogPowerPoly& LogPowerPoly::operator-=(const LogPowerPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, -c);
    return *this;
}

LogPowerPoly operator*(const LogPowerPoly& a, const LogPowerPoly& b) {
    LogPowerPoly out(a.group_, a.nvars_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            LogPowerKey k = ka;
            for (std::size_t i = 0; i < k.r.size(); ++i) {
                k.r[i] += kb.r[i];
                k.k[i] += kb.k[i];
            }
            out.add_term(k, ca * cb);
        }
    return out;
}

LogPowerPoly operator-(const LogPowerPoly& a) {
    LogPowerPoly out(a.group_, a.nvars_);
    for (const auto& [key, c] : a.terms_) out.add_term(key, -c);
    return out;
}

LogPowerPoly LogPowerPoly::scaled(const PolyElem& c) const {
    LogPowerPoly out(group_, nvars_);
    for (const auto& [key, d] : terms_) out.add_term(key, d * c);
    return out;
}

std::string LogPowerPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [key, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            std::string x = "x" + std::to_string(i + 1);
            if (sgn(key.r[i]) != 0) mono += (mono.empty() ? "" : "*") + x + (key.r[i] == 1 ? "" : "^" + rational_exponent(key.r[i]));
            if (key.k[i] != 0)
                mono += (mono.empty() ? "" : "*") + ("log(" + x + ")") + (key.k[i] == 1 ? "" : "^" + std::to_string(key.k[i]));
        }
        std::string coef = c.to_string();
        std::string piece = mono.empty() ? coef : (coef == "1" ? mono : "(" + coef + ")*" + mono);
        out += (out.empty() ? "" : " + ") + piece;
    }
    return out;
}

LogPowerPoly power(const LogPowerPoly& p, unsigned n) {
    LogPowerPoly out = LogPowerPoly::constant(scalar(p.group(), 1), p.nvars());
    LogPowerPoly base = p;
    while (n > 0) {
        if (n & 1u) out = out * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return out;
}

std::vector<LogPowerTerm> antiderivative(const LogPowerTerm& t) {
    const GroupPtr& g = t.c.group();
    if (t.r == -1) return {{t.c * scalar(g, Rational(1, t.k + 1)), Rational(0), t.k + 1}};
    const Rational rho = t.r + 1;
    std::vector<LogPowerTerm> out;
    Rational factor(1);  // k!/b! for b = k, k-1, ...
    for (unsigned b = t.k + 1; b-- > 0;) {
        unsigned j = t.k - b;
        Rational coef = factor / pow_int(rho, static_cast<long>(j) + 1);
        if (j % 2) coef = -coef;
        out.push_back({t.c * scalar(g, coef), rho, b});
        factor *= b;
    }
    return out;
}

Endpoint Endpoint::of(const LogPowerPoly& v) {
    if (v.is_zero()) return zero();
    return {Kind::Value, v};
}

Endpoint Endpoint::constant(const HahnSeries& v, std::size_t nvars) {
    return of(LogPowerPoly::constant(PolyElem(v), nvars));
}

std::string Endpoint::to_string() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Infinity: return "infinity";
        default: return value->to_string();
    }
}

std::string Region::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < bounds.size(); ++i)
        out += (i ? ", " : "") + bounds[i].first.to_string() + " <= x" + std::to_string(i + 1) + " <= " +
               bounds[i].second.to_string();
    return out;
}

namespace {

HahnSeries constant_series(const PolyElem& c, const std::string& what) {
    if (!c.is_constant()) throw OutOfCatalogue(what + " has a coefficient involving X");
    return c.is_zero() ? HahnSeries(c.group()) : c.constant_part();
}

/// The single term of a log-free monomial c * prod x_j^s_j.
std::pair<LogPowerKey, HahnSeries> monomial_parts(const LogPowerPoly& p, const std::string& what) {
    if (!p.is_single_term() || !p.is_log_free()) throw OutOfCatalogue(what + ": " + p.to_string() + " is not a monomial");
    const auto& [key, c] = *p.terms().begin();
    return {key, constant_series(c, what)};
}

LogPowerPoly monomial_power(const LogPowerPoly& p, const Rational& q, const SeriesContext& ctx, const std::string& what) {
    auto [key, c] = monomial_parts(p, what);
    if (!is_integer(q) && sign(c) <= 0) throw OutOfCatalogue(what + ": rational power of a non-positive coefficient");
    for (auto& r : key.r) r *= q;
    return LogPowerPoly::term(PolyElem(power_rational(c, q, ctx)), key);
}

LogPowerPoly monomial_log(const LogDatum& mu, const LogPowerPoly& p, const SeriesContext& ctx, const std::string& what) {
    auto [key, c] = monomial_parts(p, what);
    if (sign(c) <= 0) throw NonPositiveLog(what + ": logarithm of a non-positive coefficient");
    LogPowerPoly out = LogPowerPoly::constant(log_mu(mu, c, ctx), p.nvars());
    for (std::size_t j = 0; j < key.r.size(); ++j)
        if (sgn(key.r[j]) != 0)
            out += LogPowerPoly::log_variable(p.group(), p.nvars(), j) * LogPowerPoly::constant(scalar(p.group(), key.r[j]), p.nvars());
    return out;
}

/// x^rho (log x)^b with x replaced by the endpoint value e.
LogPowerPoly substitute(const LogDatum& mu, const LogPowerPoly& e, const Rational& rho, unsigned b, std::size_t i,
                        const SeriesContext& ctx) {
    if (b == 0 && is_integer(rho) && sgn(rho) >= 0) return power(e, static_cast<unsigned>(rho.get_num().get_ui()));
    std::string what = "substituting x" + std::to_string(i + 1) + " = " + e.to_string() + " into x" +
                       std::to_string(i + 1) + "^" + rational_exponent(rho) + "*log(x" + std::to_string(i + 1) + ")^" +
                       std::to_string(b);
    LogPowerPoly out = monomial_power(e, rho, ctx, what);
    if (b) out = out * power(monomial_log(mu, e, ctx, what), b);
    return out;
}

void check_endpoint_sign(const Endpoint& e, std::size_t i) {
    if (e.kind != Endpoint::Kind::Value || !e.value->is_constant()) return;
    HahnSeries v = constant_series(e.value->constant_value(), "bound of x" + std::to_string(i + 1));
    if (sign(v) < 0) throw DomainError("bound " + v.to_string() + " of x" + std::to_string(i + 1) + " is negative");
}

std::string term_text(const Rational& r, unsigned k, std::size_t i) {
    std::string x = "x" + std::to_string(i + 1);
    return x + "^" + rational_exponent(r) + "*log(" + x + ")^" + std::to_string(k);
}

}  // namespace

std::optional<LogPowerPoly> integrate_variable(const LogDatum& mu, const LogPowerPoly& f, std::size_t i,
                                               const Endpoint& lo, const Endpoint& hi, const SeriesContext& ctx) {
    using Kind = Endpoint::Kind;
    const std::size_t n = f.nvars();
    const std::string x = "x" + std::to_string(i + 1);
    if (i >= n) throw DomainError("no variable " + x);
    if (lo.kind == Kind::Infinity) throw DomainError("lower bound of " + x + " is infinity");
    if (lo.depends_on(i) || hi.depends_on(i)) throw DomainError("a bound of " + x + " depends on " + x);
    check_endpoint_sign(lo, i);
    check_endpoint_sign(hi, i);
    if (hi.kind == Kind::Zero) {
        if (lo.kind == Kind::Zero) return LogPowerPoly(f.group(), n);
        throw DomainError("upper bound of " + x + " is below the lower bound");
    }
    if (lo.kind == Kind::Value && hi.kind == Kind::Value && lo.value->is_constant() && hi.value->is_constant()) {
        HahnSeries a = constant_series(lo.value->constant_value(), "bound");
        HahnSeries b = constant_series(hi.value->constant_value(), "bound");
        if (compare_series(a, b) == Ordering::GT)
            throw DomainError("upper bound " + b.to_string() + " of " + x + " is below the lower bound " + a.to_string());
    }

    std::map<std::pair<Rational, unsigned>, LogPowerPoly> split;
    for (const auto& [key, c] : f.terms()) {
        LogPowerKey rest = key;
        rest.r[i] = 0;
        rest.k[i] = 0;
        auto it = split.try_emplace({key.r[i], key.k[i]}, f.group(), n).first;
        it->second += LogPowerPoly::term(c, rest);
    }

    struct Divergent {
        std::string where;
        int sign;
    };
    std::vector<Divergent> divergent;
    for (const auto& [rk, rest] : split) {
        const auto& [r, k] = rk;
        int s = rest.is_constant() ? poly_sign(rest.constant_value()) : 0;
        if (lo.kind == Kind::Zero && r <= -1)
            divergent.push_back({term_text(r, k, i) + " at 0", (k % 2) ? -s : s});
        if (hi.kind == Kind::Infinity && r >= -1) divergent.push_back({term_text(r, k, i) + " at infinity", s});
    }
    if (!divergent.empty()) {
        bool same = divergent[0].sign != 0 &&
                    std::all_of(divergent.begin(), divergent.end(), [&](const Divergent& d) { return d.sign == divergent[0].sign; });
        if (divergent.size() == 1 || same) return std::nullopt;
        std::string list;
        for (const auto& d : divergent) list += (list.empty() ? "" : ", ") + d.where;
        throw IndeterminateCancellation("divergent terms of mixed or unknown sign could cancel: " + list);
    }

    LogPowerPoly out(f.group(), n);
    for (const auto& [rk, rest] : split) {
        for (const auto& t : antiderivative({scalar(f.group(), 1), rk.first, rk.second})) {
            LogPowerPoly value(f.group(), n);
            if (hi.kind == Kind::Value) value += substitute(mu, *hi.value, t.r, t.k, i, ctx);
            if (lo.kind == Kind::Value) value -= substitute(mu, *lo.value, t.r, t.k, i, ctx);
            out += value.scaled(t.c) * rest;
        }
    }
    return out;
}

PolyOrInfinity integrate_1d(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lo, const Endpoint& hi,
                            const SeriesContext& ctx) {
    if (f.nvars() != 1) throw DomainError("integrate_1d needs an integrand in one variable");
    auto r = integrate_variable(mu, f, 0, lo, hi, ctx);
    if (!r) return Infinity{};
    return r->constant_value();
}

PolyOrInfinity integrate_region(const LogDatum& mu, const LogPowerPoly& f, const Region& region,
                                std::vector<std::size_t> order, const SeriesContext& ctx) {
    const std::size_t n = region.nvars();
    if (f.nvars() != n) throw DomainError("integrand and region have different numbers of variables");
    if (order.empty()) {
        order.resize(n);
        std::iota(order.rbegin(), order.rend(), std::size_t(0));
    }
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i || sorted.size() != n) throw DomainError("integration order is not a permutation of the variables");
    LogPowerPoly current = f;
    std::vector<bool> done(n, false);
    for (std::size_t i : order) {
        const auto& [lo, hi] = region.bounds[i];
        for (std::size_t j = 0; j < n; ++j)
            if (done[j] && (lo.depends_on(j) || hi.depends_on(j)))
                throw DomainError("bound of x" + std::to_string(i + 1) + " depends on x" + std::to_string(j + 1) +
                                  ", which is integrated first");
        auto r = integrate_variable(mu, current, i, lo, hi, ctx);
        if (!r) return Infinity{};
        current = std::move(*r);
        done[i] = true;
    }
    return current.constant_value();
}

PolyOrInfinity measure_region(const LogDatum& mu, const Region& region, const SeriesContext& ctx) {
    LogPowerPoly one = LogPowerPoly::constant(scalar(mu.group(), 1), region.nvars());
    return integrate_region(mu, one, region, {}, ctx);
}

IntegrabilityResult integrate_constructible(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lo,
                                            const Endpoint& hi, const SeriesContext& ctx) {
    PolyOrInfinity v = integrate_1d(mu, f, lo, hi, ctx);
    if (is_infinity(v)) return {false, std::nullopt};
    return {true, std::get<PolyElem>(v)};
}

FubiniReport fubini_check(const LogDatum& mu, const LogPowerPoly& f, const Region& region, const SeriesContext& ctx) {
    const std::size_t n = region.nvars();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (region.bounds[i].first.depends_on(j) || region.bounds[i].second.depends_on(j))
                throw DomainError("both integration orders need a box region");
    std::vector<std::size_t> forward(n);
    std::iota(forward.begin(), forward.end(), std::size_t(0));
    std::vector<std::size_t> backward(forward.rbegin(), forward.rend());
    FubiniReport report{integrate_region(mu, f, region, backward, ctx), integrate_region(mu, f, region, forward, ctx), false};
    if (is_infinity(report.inner_last) || is_infinity(report.inner_first))
        report.agree = is_infinity(report.inner_last) && is_infinity(report.inner_first);
    else
        report.agree = equal_to_precision(std::get<PolyElem>(report.inner_last), std::get<PolyElem>(report.inner_first));
    return report;
}

FinReport fin_parametric(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lower,
                         const std::vector<Endpoint>& samples, const SeriesContext& ctx) {
    if (f.nvars() != 1) throw DomainError("fin_parametric needs an integrand in one variable");
    bool at_zero = false, at_infinity = false;
    for (const auto& [key, c] : f.terms()) {
        if (lower.kind == Endpoint::Kind::Zero && key.r[0] <= -1) at_zero = true;
        if (key.r[0] >= -1) at_infinity = true;
    }
    FinReport report;
    if (at_zero)
        report.condition = "never finite: the integrand is not integrable at 0";
    else if (at_infinity)
        report.condition = "finite iff a < infinity";
    else
        report.condition = "finite for every a";
    for (const auto& a : samples) report.integrable.push_back(!is_infinity(integrate_1d(mu, f, lower, a, ctx)));
    return report;
}

LogPowerPoly to_log_power(const LogDatum& mu, const ExprPtr& e, std::size_t nvars, const SeriesContext& ctx) {
    const GroupPtr& group = mu.group();
    if (e->max_var() == 0) {
        if (!e->has_log()) return LogPowerPoly::constant(PolyElem(eval_subanalytic(*e, {}, ctx)), nvars);
        return LogPowerPoly::constant(eval_constructible(mu, lift(to_constructible(e, group)), {}, ctx), nvars);
    }
    if (e->max_var() > nvars)
        throw DomainError("x" + std::to_string(e->max_var()) + " is not an integration variable");
    auto sub = [&](std::size_t k) { return to_log_power(mu, e->children[k], nvars, ctx); };
    const std::string what = e->to_string();
    switch (e->op) {
        case ExprOp::Var: return LogPowerPoly::variable(group, nvars, e->var - 1);
        case ExprOp::Add: {
            LogPowerPoly acc = sub(0);
            for (std::size_t k = 1; k < e->children.size(); ++k) acc += sub(k);
            return acc;
        }
        case ExprOp::Mul: {
            LogPowerPoly acc = sub(0);
            for (std::size_t k = 1; k < e->children.size(); ++k) acc = acc * sub(k);
            return acc;
        }
        case ExprOp::Neg: return -sub(0);
        case ExprOp::Div: return sub(0) * monomial_power(sub(1), Rational(-1), ctx, what);
        case ExprOp::Pow:
            if (is_integer(e->exponent) && sgn(e->exponent) >= 0)
                return power(sub(0), static_cast<unsigned>(e->exponent.get_num().get_ui()));
            return monomial_power(sub(0), e->exponent, ctx, what);
        case ExprOp::Log: return monomial_log(mu, sub(0), ctx, what);
        default: throw OutOfCatalogue(what + " leaves the log-power catalogue");
    }
}

Endpoint parse_endpoint(const LogDatum& mu, const SExpr& e, std::size_t nvars, const SeriesContext& ctx) {
    if (e.is_atom("inf") || e.is_atom("infinity")) return Endpoint::infinity();
    return Endpoint::of(to_log_power(mu, parse_term(e, mu.group()), nvars, ctx));
}

namespace {

std::size_t variable_index(const SExpr& e) {
    if (e.is_list || e.atom.size() < 2 || e.atom[0] != 'x' || e.atom.find_first_not_of("0123456789", 1) != std::string::npos)
        throw ParseError("expected a variable x1, x2, ...", e.offset, e.length);
    std::size_t k = std::stoul(e.atom.substr(1));
    if (k == 0) throw ParseError("variables are numbered from x1", e.offset, e.length);
    return k;
}

}  // namespace

Region parse_region(const LogDatum& mu, std::string_view text, const SeriesContext& ctx) {
    SExpr e = parse_sexpr(text);
    if (e.head() != "region") throw ParseError("expected (region (x1 lower upper) ...)", e.offset, e.length);
    const std::size_t n = e.items.size() - 1;
    std::vector<const SExpr*> entries(n, nullptr);
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const SExpr& b = e.items[i];
        if (!b.is_list || b.items.size() != 3) throw ParseError("expected (x lower upper)", b.offset, b.length);
        std::size_t k = variable_index(b.items[0]);
        if (k > n) throw ParseError("variable x" + std::to_string(k) + " exceeds the dimension", b.offset, b.length);
        if (entries[k - 1]) throw ParseError("x" + std::to_string(k) + " is bounded twice", b.offset, b.length);
        entries[k - 1] = &b;
    }
    Region region{mu.group(), {}};
    for (const SExpr* b : entries)
        region.bounds.emplace_back(parse_endpoint(mu, b->items[1], n, ctx), parse_endpoint(mu, b->items[2], n, ctx));
    return region;
}

IntegralProblem parse_integral(const LogDatum& mu, std::string_view text, const SeriesContext& ctx) {
    SExpr e = parse_sexpr(text);
    std::vector<const SExpr*> chain;
    const SExpr* body = &e;
    while (body->head() == "integral") {
        if (body->items.size() != 5) throw ParseError("expected (integral x lower upper body)", body->offset, body->length);
        chain.push_back(body);
        body = &body->items[4];
    }
    if (chain.empty()) throw ParseError("expected (integral x lower upper body)", e.offset, e.length);
    const std::size_t n = chain.size();
    std::vector<std::size_t> vars;
    std::set<std::size_t> seen;
    for (const SExpr* c : chain) {
        std::size_t k = variable_index(c->items[1]);
        if (k > n) throw ParseError("variable x" + std::to_string(k) + " exceeds the number of integrals", c->items[1].offset, c->items[1].length);
        if (!seen.insert(k).second) throw ParseError("x" + std::to_string(k) + " is integrated twice", c->items[1].offset, c->items[1].length);
        vars.push_back(k - 1);
    }
    Region region{mu.group(), std::vector<std::pair<Endpoint, Endpoint>>(n)};
    for (std::size_t j = 0; j < n; ++j)
        region.bounds[vars[j]] = {parse_endpoint(mu, chain[j]->items[2], n, ctx), parse_endpoint(mu, chain[j]->items[3], n, ctx)};
    LogPowerPoly integrand = to_log_power(mu, parse_term(*body, mu.group()), n, ctx);
    return {integrand, region, std::vector<std::size_t>(vars.rbegin(), vars.rend())};
}

}  // namespace hahnlog
