#include "hahnlog/hahnfield.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>
#include <map>

namespace hahnlog {

namespace {

int cmp_exp(const ValueGroup& g, const Coords& a, const Coords& b) {
    if (g.is_identity()) {
        for (std::size_t k = a.size(); k-- > 0;) {
            int c = cmp(a[k], b[k]);
            if (c != 0) return c < 0 ? -1 : 1;
        }
        return 0;
    }
    return static_cast<int>(g.compare(a, b));
}

bool below(const ValueGroup& g, const Coords& e, const std::optional<Coords>& bound) {
    return !bound || cmp_exp(g, e, *bound) < 0;
}

void require_same(const HahnSeries& a, const HahnSeries& b) {
    if (a.group() != b.group()) throw DomainError("series over different value groups");
}

HahnSeries multiply_bounded(const HahnSeries& x, const HahnSeries& y, const std::optional<Coords>& cap) {
    require_same(x, y);
    const ValueGroup& g = *x.group();
    if (x.is_exact_zero() || y.is_exact_zero()) return HahnSeries(x.group());
    std::optional<Coords> prec;
    if (x.precision()) prec = *x.precision() + *y.valuation_bound();
    if (y.precision()) prec = min_precision(g, prec, *y.precision() + *x.valuation_bound());
    prec = min_precision(g, prec, cap);

    std::map<Coords, SymbolicReal> acc;
    for (const auto& a : x.terms()) {
        for (const auto& b : y.terms()) {
            Coords e = a.exp + b.exp;
            if (!below(g, e, prec)) continue;
            auto [it, inserted] = acc.try_emplace(std::move(e), a.coef * b.coef);
            if (!inserted) it->second += a.coef * b.coef;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) terms.push_back({e, std::move(c)});
    return HahnSeries(x.group(), std::move(terms), prec);
}

// sum_{n <= N} c_n h^n with the honest truncation (N + 1) v(h).
HahnSeries expand(const std::vector<SymbolicReal>& c, const HahnSeries& h) {
    const GroupPtr& group = h.group();
    HahnSeries result = HahnSeries::constant(group, c.at(0));
    if (h.is_exact_zero()) return result;
    Coords vb = *h.valuation_bound();
    if (group->sign(vb) <= 0) throw OutsideDomain("series expansion needs an infinitesimal argument");
    const std::size_t order = c.size() - 1;
    Coords cap = Rational(static_cast<long>(order + 1)) * vb;
    HahnSeries p = HahnSeries::constant(group, SymbolicReal(1));
    for (std::size_t n = 1; n <= order; ++n) {
        p = multiply_bounded(p, h, cap);
        if (!c[n].is_zero()) result += p * c[n];
    }
    return result.truncated(cap);
}

std::vector<SymbolicReal> log_coefficients(unsigned order) {
    std::vector<SymbolicReal> c(order + 1);
    for (unsigned n = 1; n <= order; ++n) c[n] = SymbolicReal(Rational(n % 2 ? 1 : -1, static_cast<long>(n)));
    return c;
}

std::vector<SymbolicReal> exp_coefficients(unsigned order) {
    std::vector<SymbolicReal> c(order + 1);
    Rational f(1);
    for (unsigned n = 0; n <= order; ++n) {
        if (n) f /= n;
        c[n] = SymbolicReal(f);
    }
    return c;
}

std::vector<SymbolicReal> binomial_coefficients(const Rational& r, unsigned order) {
    std::vector<SymbolicReal> c(order + 1);
    Rational b(1);
    for (unsigned n = 0; n <= order; ++n) {
        if (n) b = b * (r - (n - 1)) / n;
        c[n] = SymbolicReal(b);
    }
    return c;
}

LeadingDecomposition decompose_any(const HahnSeries& x) {
    const Term& lead = x.leading();
    SymbolicReal inv = scalar_inverse(lead.coef);
    HahnSeries h = x.shifted(-lead.exp) * inv - HahnSeries::constant(x.group(), SymbolicReal(1));
    return {lead.coef, lead.exp, std::move(h)};
}

}  // namespace

std::optional<Coords> min_precision(const ValueGroup& g, const std::optional<Coords>& a, const std::optional<Coords>& b) {
    if (!a) return b;
    if (!b) return a;
    return cmp_exp(g, *a, *b) <= 0 ? a : b;
}

SymbolicReal scalar_inverse(const SymbolicReal& a) {
    if (auto q = try_divide(SymbolicReal(1), a)) return *q;
    int s = sign(a);
    SymbolicReal inv = power(s < 0 ? -a : a, Rational(-1));
    return s < 0 ? -inv : inv;
}

HahnSeries::HahnSeries(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw DomainError("series needs a value group");
}

HahnSeries::HahnSeries(GroupPtr group, std::vector<Term> terms, std::optional<Coords> precision)
    : group_(std::move(group)), terms_(std::move(terms)), precision_(std::move(precision)) {
    if (!group_) throw DomainError("series needs a value group");
    normalize();
}

void HahnSeries::normalize() {
    const ValueGroup& g = *group_;
    for (const auto& t : terms_)
        if (t.exp.size() != g.size()) throw DomainError("exponent does not belong to the value group");
    if (precision_ && precision_->size() != g.size()) throw DomainError("precision does not belong to the value group");
    std::map<Coords, SymbolicReal> acc;
    for (auto& t : terms_) {
        auto [it, inserted] = acc.try_emplace(t.exp, t.coef);
        if (!inserted) it->second += t.coef;
    }
    terms_.clear();
    for (auto& [e, c] : acc)
        if (!c.is_zero() && below(g, e, precision_)) terms_.push_back({e, std::move(c)});
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return cmp_exp(g, a.exp, b.exp) < 0; });
}

HahnSeries HahnSeries::constant(GroupPtr group, const SymbolicReal& a) {
    std::vector<Term> t;
    Coords zero = group->zero();
    if (!a.is_zero()) t.push_back({zero, a});
    return HahnSeries(std::move(group), std::move(t));
}

HahnSeries HahnSeries::monomial(GroupPtr group, const SymbolicReal& a, const Coords& exp) {
    std::vector<Term> t;
    if (!a.is_zero()) t.push_back({exp, a});
    return HahnSeries(std::move(group), std::move(t));
}

HahnSeries HahnSeries::big_o(GroupPtr group, const Coords& precision) { return HahnSeries(std::move(group), {}, precision); }

bool HahnSeries::is_constant() const {
    if (precision_) return false;
    return terms_.empty() || (terms_.size() == 1 && is_zero(terms_[0].exp));
}

const Term& HahnSeries::leading() const {
    if (terms_.empty()) {
        if (precision_) throw ZeroToPrecision("series " + to_string() + " has no visible term");
        throw DomainError("the zero series has no leading term");
    }
    return terms_.front();
}

std::optional<Coords> HahnSeries::valuation_bound() const {
    if (!terms_.empty()) return terms_.front().exp;
    return precision_;
}

SymbolicReal HahnSeries::coefficient(const Coords& g) const {
    if (!below(*group_, g, precision_)) throw ZeroToPrecision("coefficient of t^" + hahnlog::to_string(g) + " is beyond the precision");
    for (const auto& t : terms_)
        if (t.exp == g) return t.coef;
    return SymbolicReal();
}

HahnSeries HahnSeries::truncated(const Coords& d) const {
    return HahnSeries(group_, terms_, min_precision(*group_, precision_, d));
}

HahnSeries HahnSeries::shifted(const Coords& g) const {
    std::vector<Term> t = terms_;
    for (auto& term : t) term.exp = term.exp + g;
    std::optional<Coords> p;
    if (precision_) p = *precision_ + g;
    return HahnSeries(group_, std::move(t), std::move(p));
}

HahnSeries& HahnSeries::operator+=(const HahnSeries& o) {
    require_same(*this, o);
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    *this = HahnSeries(group_, std::move(t), min_precision(*group_, precision_, o.precision_));
    return *this;
}

HahnSeries& HahnSeries::operator-=(const HahnSeries& o) { return *this += -o; }

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) { return multiply_bounded(a, b, std::nullopt); }

HahnSeries& HahnSeries::operator*=(const HahnSeries& o) { return *this = *this * o; }

HahnSeries& HahnSeries::operator*=(const SymbolicReal& a) {
    if (a.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= a;
    return *this;
}

HahnSeries& HahnSeries::operator/=(const HahnSeries& o) { return *this = *this * invert(o); }

HahnSeries operator-(const HahnSeries& a) {
    HahnSeries out = a;
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
}

bool operator==(const HahnSeries& a, const HahnSeries& b) {
    if (a.group_ != b.group_ || a.precision_ != b.precision_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

LeadingDecomposition decompose(const HahnSeries& x) {
    const Term& lead = x.leading();
    if (sign(lead.coef) <= 0) throw NonPositiveLeading("leading coefficient " + lead.coef.to_string() + " is not positive");
    return decompose_any(x);
}

HahnSeries invert(const HahnSeries& x, const SeriesContext& ctx) {
    if (x.is_exact_zero()) throw DomainError("inverse of zero");
    auto d = decompose_any(x);
    std::vector<SymbolicReal> c(ctx.order + 1);
    for (unsigned n = 0; n <= ctx.order; ++n) c[n] = SymbolicReal(n % 2 ? -1 : 1);
    return expand(c, d.h).shifted(-d.gamma) * scalar_inverse(d.a);
}

HahnSeries power_rational(const HahnSeries& x, const Rational& e, const SeriesContext& ctx) {
    const GroupPtr& group = x.group();
    if (e == 0) return HahnSeries::constant(group, SymbolicReal(1));
    if (is_integer(e)) {
        Integer n = abs(e.get_num());
        HahnSeries base = x, out = HahnSeries::constant(group, SymbolicReal(1));
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) out *= base;
            n /= 2;
            if (n > 0) base *= base;
        }
        return e > 0 ? out : invert(out, ctx);
    }
    auto d = decompose(x);
    return expand(binomial_coefficients(e, ctx.order), d.h).shifted(e * d.gamma) * power(d.a, e);
}

HahnSeries series_log1p(const HahnSeries& x, const SeriesContext& ctx) { return expand(log_coefficients(ctx.order), x); }

HahnSeries series_exp(const HahnSeries& x, const SeriesContext& ctx) { return expand(exp_coefficients(ctx.order), x); }

HahnSeries series_binomial(const HahnSeries& x, const Rational& r, const SeriesContext& ctx) {
    return expand(binomial_coefficients(r, ctx.order), x);
}

HahnSeries partial_log(const HahnSeries& x, const SeriesContext& ctx) {
    if (x.is_exact_zero()) throw OutsideDomain("log of zero");
    const Term& lead = x.leading();
    if (!is_zero(lead.exp)) throw OutsideDomain("partial log needs valuation 0, got " + hahnlog::to_string(lead.exp));
    if (sign(lead.coef) <= 0) throw NonPositiveLeading("partial log of a negative element");
    auto la = log_symbolic(lead.coef);
    if (!la) throw NonRationalLeading("log(" + lead.coef.to_string() + ") is not representable");
    HahnSeries h = x * scalar_inverse(lead.coef) - HahnSeries::constant(x.group(), SymbolicReal(1));
    return HahnSeries::constant(x.group(), *la) + series_log1p(h, ctx);
}

HahnSeries partial_exp(const HahnSeries& x, const SeriesContext& ctx) {
    const GroupPtr& group = x.group();
    if (x.is_exact_zero()) return HahnSeries::constant(group, SymbolicReal(1));
    if (x.has_visible_term() && group->sign(x.leading().exp) < 0)
        throw OutsideDomain("partial exp needs valuation >= 0, got " + hahnlog::to_string(x.leading().exp));
    SymbolicReal a = x.coefficient(group->zero());
    HahnSeries m = x - HahnSeries::constant(group, a);
    auto ea = exp_symbolic(a);
    if (!ea) throw NotRepresentable("exp(" + a.to_string() + ") is not representable");
    return series_exp(m, ctx) * *ea;
}

Ordering compare_series(const HahnSeries& x, const HahnSeries& y) {
    int s = sign(x - y);
    return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

int sign(const HahnSeries& x) {
    if (x.is_exact_zero()) return 0;
    return sign(x.leading().coef);
}

bool equal_to_precision(const HahnSeries& x, const HahnSeries& y) {
    require_same(x, y);
    return (x - y).terms().empty();
}

}  // namespace hahnlog
