#include "hahnlog/polyring.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>

namespace hahnlog {

int compare_monomials(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
    return 0;
}

PolyElem::PolyElem(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw DomainError("polynomial needs a value group");
}

PolyElem::PolyElem(const HahnSeries& constant) : group_(constant.group()) {
    add_entry(MultiIndex(nvars(), 0), constant);
}

PolyElem PolyElem::variable(GroupPtr group, std::size_t k) {
    PolyElem p(group);
    if (k < 1 || k > p.nvars()) throw DomainError("variable X" + std::to_string(k) + " out of range");
    MultiIndex alpha(p.nvars(), 0);
    alpha[k - 1] = 1;
    p.add_entry(alpha, HahnSeries::constant(group, SymbolicReal(1)));
    return p;
}

PolyElem PolyElem::monomial(const HahnSeries& c, MultiIndex alpha) {
    PolyElem p(c.group());
    if (alpha.size() != p.nvars()) throw DomainError("monomial has the wrong number of variables");
    p.add_entry(alpha, c);
    return p;
}

void PolyElem::add_entry(const MultiIndex& alpha, const HahnSeries& c) {
    if (c.group() != group_) throw DomainError("polynomial coefficients over different value groups");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Entry& e, const MultiIndex& a) { return compare_monomials(e.first, a) > 0; });
    if (it != terms_.end() && it->first == alpha) {
        it->second += c;
        if (it->second.is_exact_zero()) terms_.erase(it);
        return;
    }
    if (!c.is_exact_zero()) terms_.insert(it, {alpha, c});
}

bool PolyElem::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_[0].first.begin(), terms_[0].first.end(),
                                                                 [](unsigned e) { return e == 0; }));
}

unsigned PolyElem::degree() const {
    unsigned d = 0;
    for (const auto& [alpha, c] : terms_) {
        unsigned s = 0;
        for (unsigned e : alpha) s += e;
        d = std::max(d, s);
    }
    return d;
}

HahnSeries PolyElem::coefficient(const MultiIndex& alpha) const {
    for (const auto& [a, c] : terms_)
        if (a == alpha) return c;
    return HahnSeries(group_);
}

PolyElem& PolyElem::operator+=(const PolyElem& o) {
    for (const auto& [alpha, c] : o.terms_) add_entry(alpha, c);
    return *this;
}

PolyElem& PolyElem::operator-=(const PolyElem& o) {
    for (const auto& [alpha, c] : o.terms_) add_entry(alpha, -c);
    return *this;
}

PolyElem operator*(const PolyElem& a, const PolyElem& b) {
    if (a.group_ != b.group_) throw DomainError("polynomials over different value groups");
    PolyElem out(a.group_);
    for (const auto& [x, c] : a.terms_)
        for (const auto& [y, d] : b.terms_) {
            MultiIndex z(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) z[k] = x[k] + y[k];
            out.add_entry(z, c * d);
        }
    return out;
}

PolyElem& PolyElem::operator*=(const PolyElem& o) { return *this = *this * o; }

PolyElem& PolyElem::operator*=(const HahnSeries& c) {
    std::vector<Entry> old;
    old.swap(terms_);
    for (auto& [alpha, d] : old) add_entry(alpha, d * c);
    return *this;
}

PolyElem operator-(const PolyElem& a) {
    PolyElem out = a;
    for (auto& [alpha, c] : out.terms_) c = -c;
    return out;
}

bool operator==(const PolyElem& a, const PolyElem& b) {
    if (a.group_ != b.group_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

PolyElem power(const PolyElem& p, unsigned n) {
    PolyElem out(HahnSeries::constant(p.group(), SymbolicReal(1)));
    PolyElem base = p;
    while (n > 0) {
        if (n & 1u) out *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return out;
}

bool equal_to_precision(const PolyElem& a, const PolyElem& b) {
    PolyElem d = a - b;
    return std::all_of(d.terms().begin(), d.terms().end(), [](const auto& e) { return e.second.terms().empty(); });
}

int poly_sign(const PolyElem& p) {
    if (p.is_zero()) return 0;
    const ValueGroup& g = *p.group();
    std::optional<Coords> best;
    for (const auto& [alpha, c] : p.terms()) {
        if (!c.has_visible_term()) continue;
        const Coords& v = c.leading().exp;
        if (!best || g.compare(v, *best) == Ordering::LT) best = v;
    }
    if (!best) throw ZeroToPrecision("no coefficient of " + p.to_string() + " has a visible term");
    for (const auto& [alpha, c] : p.terms())
        if (!c.has_visible_term() && g.compare(*c.precision(), *best) != Ordering::GT)
            throw ZeroToPrecision("coefficient of " + p.to_string() + " is unknown at the dominant valuation");
    // terms are in descending monomial order: the first with valuation best wins
    for (const auto& [alpha, c] : p.terms())
        if (c.has_visible_term() && c.leading().exp == *best) return sign(c.leading().coef);
    return 0;
}

bool is_infinity(const PolyOrInfinity& p) { return std::holds_alternative<Infinity>(p); }

Ordering poly_compare(const PolyOrInfinity& p, const PolyOrInfinity& q) {
    bool pi = is_infinity(p), qi = is_infinity(q);
    if (pi && qi) return Ordering::EQ;
    if (pi) return Ordering::GT;
    if (qi) return Ordering::LT;
    const auto& a = std::get<PolyElem>(p);
    const auto& b = std::get<PolyElem>(q);
    if (a == b) return Ordering::EQ;
    int s = poly_sign(a - b);
    return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

std::string to_string(const PolyOrInfinity& p) {
    if (is_infinity(p)) return "infinity";
    return std::get<PolyElem>(p).to_string();
}

}  // namespace hahnlog
