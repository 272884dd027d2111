#include "hahnlog/scalars.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <shared_mutex>
#include <unordered_map>

namespace hahnlog {

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

Interval ConstantSymbol::enclose(long bits, const Rational& exponent) const {
    std::lock_guard<std::mutex> lock(mutex_);
    Rational target(1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    auto it = cache_.find(exponent);
    if (it != cache_.end() && it->second.width() <= target) return it->second;

    Interval fresh;
    switch (kind_) {
        case ConstantKind::LogPrime:
            fresh = enclosure::log(Rational(prime_), bits);
            break;
        case ConstantKind::PrimeRoot:
            fresh = enclosure::rpow(Rational(prime_), exponent, bits);
            break;
        case ConstantKind::Euler:
            fresh = enclosure::exp(exponent, bits);
            break;
        case ConstantKind::Adjoined:
            fresh = fn_(bits);
            break;
    }
    if ((kind_ == ConstantKind::LogPrime || kind_ == ConstantKind::Adjoined) && exponent != 1) {
        if (!is_integer(exponent) || exponent < 0)
            throw DomainError("transcendental constant " + name_ + " raised to a non-natural power");
        unsigned long n = exponent.get_num().get_ui();
        Interval base = fresh;
        auto bit = cache_.find(Rational(1));
        if (bit != cache_.end()) base = base.intersect(bit->second);
        cache_[Rational(1)] = base;
        fresh = pow(base, n);
    }
    if (it != cache_.end()) fresh = fresh.intersect(it->second);
    cache_[exponent] = fresh;
    return fresh;
}

struct ConstantRegistry::Impl {
    mutable std::shared_mutex mutex;
    std::deque<std::unique_ptr<ConstantSymbol>> symbols;
    std::unordered_map<std::string, const ConstantSymbol*> by_name;
};

ConstantRegistry& ConstantRegistry::instance() {
    static ConstantRegistry registry;
    return registry;
}

ConstantRegistry::Impl& ConstantRegistry::impl() const {
    static Impl state;
    return state;
}

const ConstantSymbol* ConstantRegistry::insert(std::unique_ptr<ConstantSymbol> sym) {
    Impl& st = impl();
    std::unique_lock lock(st.mutex);
    auto it = st.by_name.find(sym->name_);
    if (it != st.by_name.end()) return it->second;
    const ConstantSymbol* raw = sym.get();
    st.by_name.emplace(sym->name_, raw);
    st.symbols.push_back(std::move(sym));
    return raw;
}

const ConstantSymbol* ConstantRegistry::find(std::string_view name) const {
    Impl& st = impl();
    std::shared_lock lock(st.mutex);
    auto it = st.by_name.find(std::string(name));
    return it == st.by_name.end() ? nullptr : it->second;
}

const ConstantSymbol* ConstantRegistry::log_prime(const Integer& p) {
    std::string name = "log(" + p.get_str() + ")";
    if (auto s = find(name)) return s;
    auto sym = std::unique_ptr<ConstantSymbol>(new ConstantSymbol());
    sym->name_ = name;
    sym->kind_ = ConstantKind::LogPrime;
    sym->prime_ = p;
    return insert(std::move(sym));
}

const ConstantSymbol* ConstantRegistry::prime_root(const Integer& p) {
    std::string name = "rpow(" + p.get_str() + ")";
    if (auto s = find(name)) return s;
    auto sym = std::unique_ptr<ConstantSymbol>(new ConstantSymbol());
    sym->name_ = name;
    sym->kind_ = ConstantKind::PrimeRoot;
    sym->prime_ = p;
    return insert(std::move(sym));
}

const ConstantSymbol* ConstantRegistry::euler() {
    if (auto s = find("exp")) return s;
    auto sym = std::unique_ptr<ConstantSymbol>(new ConstantSymbol());
    sym->name_ = "exp";
    sym->kind_ = ConstantKind::Euler;
    return insert(std::move(sym));
}

const ConstantSymbol* ConstantRegistry::adjoin(const std::string& name, ConstantSymbol::EnclosureFn fn,
                                               const SymbolicReal* log_value) {
    if (auto s = find(name)) return s;
    if (name.empty()) throw DomainError("adjoined constant needs a name");
    auto sym = std::unique_ptr<ConstantSymbol>(new ConstantSymbol());
    sym->name_ = name;
    sym->kind_ = ConstantKind::Adjoined;
    sym->fn_ = std::move(fn);
    if (log_value) sym->log_ = std::make_shared<const SymbolicReal>(*log_value);
    return insert(std::move(sym));
}

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

namespace {

bool is_unit_kind(ConstantKind k) { return k == ConstantKind::PrimeRoot || k == ConstantKind::Euler; }

std::string exponent_text(const Rational& e) {
    if (is_integer(e)) return e.get_str();
    return "(" + e.get_str() + ")";
}

}  // namespace

Monomial Monomial::of(const ConstantSymbol* s, Rational exponent) {
    Monomial m;
    if (exponent != 0) m.factors_.push_back({s, std::move(exponent)});
    return m;
}

long Monomial::degree() const {
    long d = 0;
    for (const auto& f : factors_) d += is_unit_kind(f.symbol->kind()) ? 1 : f.exponent.get_num().get_si();
    return d;
}

bool Monomial::is_unit() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return is_unit_kind(f.symbol->kind()); });
}

std::string Monomial::to_string() const {
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += "*";
        switch (f.symbol->kind()) {
            case ConstantKind::PrimeRoot:
                out += "rpow(" + f.symbol->prime().get_str() + "," + f.exponent.get_str() + ")";
                break;
            case ConstantKind::Euler:
                out += "exp(" + f.exponent.get_str() + ")";
                break;
            default:
                out += f.symbol->name();
                if (f.exponent != 1) out += "^" + exponent_text(f.exponent);
        }
    }
    return out;
}

std::pair<Rational, Monomial> multiply(const Monomial& a, const Monomial& b) {
    Rational coef(1);
    Monomial out;
    auto emit = [&](const ConstantSymbol* s, Rational e) {
        if (s->kind() == ConstantKind::PrimeRoot) {
            Integer whole = floor_of(e);
            e -= whole;
            coef *= pow_int(Rational(s->prime()), whole.get_si());
        }
        if (e != 0) out.factors_.push_back({s, std::move(e)});
    };
    std::size_t i = 0, j = 0;
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].symbol->name() < fb[j].symbol->name())) {
            emit(fa[i].symbol, fa[i].exponent);
            ++i;
        } else if (i == fa.size() || fb[j].symbol->name() < fa[i].symbol->name()) {
            emit(fb[j].symbol, fb[j].exponent);
            ++j;
        } else {
            emit(fa[i].symbol, fa[i].exponent + fb[j].exponent);
            ++i;
            ++j;
        }
    }
    return {coef, out};
}

bool operator==(const Monomial& a, const Monomial& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
        if (a.factors_[i].symbol != b.factors_[i].symbol || a.factors_[i].exponent != b.factors_[i].exponent)
            return false;
    return true;
}

bool canonical_less(const Monomial& a, const Monomial& b) {
    long da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = a.factors_[i];
        const auto& y = b.factors_[i];
        if (x.symbol != y.symbol) return x.symbol->name() < y.symbol->name();
        if (x.exponent != y.exponent) return x.exponent > y.exponent;
    }
    return a.factors_.size() < b.factors_.size();
}

// ---------------------------------------------------------------------------
// SymbolicReal
// ---------------------------------------------------------------------------

SymbolicReal::SymbolicReal(const Rational& q) {
    if (q != 0) terms_.emplace(Monomial(), q);
}

SymbolicReal::SymbolicReal(const Rational& c, const Monomial& m) {
    if (c != 0) terms_.emplace(m, c);
}

bool SymbolicReal::is_rational() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational SymbolicReal::rational_value() const {
    if (!is_rational()) throw DomainError("scalar " + to_string() + " is not rational");
    return rational_part();
}

Rational SymbolicReal::rational_part() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rational(0) : it->second;
}

void SymbolicReal::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymbolicReal& SymbolicReal::operator+=(const SymbolicReal& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymbolicReal& SymbolicReal::operator-=(const SymbolicReal& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SymbolicReal operator*(const SymbolicReal& a, const SymbolicReal& b) {
    SymbolicReal out;
    if (a.is_rational() && !a.is_zero()) {
        out = b;
        return out *= a.rational_part();
    }
    if (b.is_rational() && !b.is_zero()) {
        out = a;
        return out *= b.rational_part();
    }
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto [k, m] = multiply(ma, mb);
            out.add_term(m, k * ca * cb);
        }
    return out;
}

SymbolicReal& SymbolicReal::operator*=(const SymbolicReal& o) { return *this = *this * o; }

SymbolicReal& SymbolicReal::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= q;
    return *this;
}

SymbolicReal& SymbolicReal::operator/=(const SymbolicReal& o) {
    auto q = try_divide(*this, o);
    if (!q) throw NotRepresentable("quotient (" + to_string() + ")/(" + o.to_string() + ") is not representable");
    return *this = std::move(*q);
}

SymbolicReal operator-(const SymbolicReal& a) {
    SymbolicReal out = a;
    return out *= Rational(-1);
}

bool operator==(const SymbolicReal& a, const SymbolicReal& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
}

std::string SymbolicReal::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = sgn(c) < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (m.empty())
            out += a.get_str();
        else if (a == 1)
            out += m.to_string();
        else
            out += a.get_str() + "*" + m.to_string();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Division
// ---------------------------------------------------------------------------

namespace {

// Split a monomial into its transcendental part and its unit part.
std::pair<Monomial, Monomial> split_units(const Monomial& m) {
    Monomial trans, unit;
    for (const auto& f : m.factors()) {
        Monomial one = Monomial::of(f.symbol, f.exponent);
        if (is_unit_kind(f.symbol->kind()))
            unit = multiply(unit, one).second;
        else
            trans = multiply(trans, one).second;
    }
    return {trans, unit};
}

Monomial unit_inverse(const Monomial& u, Rational& coef) {
    Monomial out;
    for (const auto& f : u.factors()) {
        if (f.symbol->kind() == ConstantKind::PrimeRoot) {
            coef /= Rational(f.symbol->prime());
            out = multiply(out, Monomial::of(f.symbol, 1 - f.exponent)).second;
        } else {
            out = multiply(out, Monomial::of(f.symbol, -f.exponent)).second;
        }
    }
    return out;
}

// Transcendental quotient a/b when every exponent of b is dominated.
std::optional<Monomial> trans_divide(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& fb : b.factors()) {
        while (i < a.factors().size() && a.factors()[i].symbol->name() < fb.symbol->name()) {
            const auto& fa = a.factors()[i++];
            out = multiply(out, Monomial::of(fa.symbol, fa.exponent)).second;
        }
        if (i == a.factors().size() || a.factors()[i].symbol != fb.symbol) return std::nullopt;
        Rational e = a.factors()[i].exponent - fb.exponent;
        if (e < 0) return std::nullopt;
        out = multiply(out, Monomial::of(fb.symbol, e)).second;
        ++i;
    }
    for (; i < a.factors().size(); ++i)
        out = multiply(out, Monomial::of(a.factors()[i].symbol, a.factors()[i].exponent)).second;
    return out;
}

long trans_degree(const Monomial& m) {
    long d = 0;
    for (const auto& f : m.factors()) d += f.exponent.get_num().get_si();
    return d;
}

// Graded order on transcendental monomials, compatible with multiplication.
bool trans_greater(const Monomial& a, const Monomial& b) {
    long da = trans_degree(a), db = trans_degree(b);
    if (da != db) return da > db;
    std::size_t n = std::min(a.factors().size(), b.factors().size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = a.factors()[i];
        const auto& y = b.factors()[i];
        if (x.symbol != y.symbol) return x.symbol->name() < y.symbol->name();
        if (x.exponent != y.exponent) return x.exponent > y.exponent;
    }
    return a.factors().size() > b.factors().size();
}

// Leading transcendental monomial and its coefficient in Q[units].
std::pair<Monomial, SymbolicReal> leading(const SymbolicReal& a) {
    Monomial best;
    bool have = false;
    for (const auto& [m, c] : a.terms()) {
        Monomial t = split_units(m).first;
        if (!have || trans_greater(t, best)) {
            best = t;
            have = true;
        }
    }
    SymbolicReal coef;
    for (const auto& [m, c] : a.terms()) {
        auto [t, u] = split_units(m);
        if (t == best) coef += SymbolicReal(c, u);
    }
    return {best, coef};
}

}  // namespace

std::optional<SymbolicReal> try_divide(const SymbolicReal& a, const SymbolicReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return SymbolicReal();
    if (b.is_rational()) {
        SymbolicReal out = a;
        return out *= 1 / b.rational_part();
    }
    auto [lt_b, lc_b] = leading(b);
    if (!lc_b.is_single_term()) return std::nullopt;
    const auto& [lc_m, lc_c] = *lc_b.terms().begin();
    Rational inv_c = 1 / lc_c;
    Monomial inv_u = unit_inverse(lc_m, inv_c);
    SymbolicReal lc_inverse(inv_c, inv_u);

    SymbolicReal rem = a;
    SymbolicReal quotient;
    for (int guard = 0; !rem.is_zero(); ++guard) {
        if (guard > 10000) return std::nullopt;
        auto [lt_r, lc_r] = leading(rem);
        auto t = trans_divide(lt_r, lt_b);
        if (!t) return std::nullopt;
        SymbolicReal step = lc_r * lc_inverse * SymbolicReal(Rational(1), *t);
        quotient += step;
        rem -= step * b;
    }
    return quotient;
}

// ---------------------------------------------------------------------------
// Logarithms, exponentials and powers
// ---------------------------------------------------------------------------

SymbolicReal log_of_rational(const Rational& q) {
    if (sgn(q) <= 0) throw DomainError("log of a non-positive rational " + q.get_str());
    SymbolicReal out;
    auto& reg = ConstantRegistry::instance();
    for (const auto& [p, e] : factorize(q.get_num()))
        out += SymbolicReal(Rational(e), Monomial::of(reg.log_prime(p)));
    for (const auto& [p, e] : factorize(q.get_den()))
        out -= SymbolicReal(Rational(e), Monomial::of(reg.log_prime(p)));
    return out;
}

std::optional<SymbolicReal> log_symbolic(const SymbolicReal& a) {
    if (!a.is_single_term()) return std::nullopt;
    const auto& [m, c] = *a.terms().begin();
    if (sgn(c) <= 0) return std::nullopt;
    SymbolicReal out = log_of_rational(c);
    auto& reg = ConstantRegistry::instance();
    for (const auto& f : m.factors()) {
        switch (f.symbol->kind()) {
            case ConstantKind::PrimeRoot:
                out += SymbolicReal(f.exponent, Monomial::of(reg.log_prime(f.symbol->prime())));
                break;
            case ConstantKind::Euler:
                out += SymbolicReal(f.exponent);
                break;
            case ConstantKind::Adjoined:
                if (!f.symbol->declared_log()) return std::nullopt;
                out += *f.symbol->declared_log() * SymbolicReal(f.exponent);
                break;
            case ConstantKind::LogPrime:
                return std::nullopt;
        }
    }
    return out;
}

namespace {

// Rational q^e as rational times prime-root monomial.
SymbolicReal rational_power(const Rational& q, const Rational& e) {
    if (is_integer(e)) return SymbolicReal(pow_int(q, e.get_num().get_si()));
    auto& reg = ConstantRegistry::instance();
    Rational coef(1);
    Monomial m;
    auto take = [&](const Integer& n, long sign_) {
        for (const auto& [p, k] : factorize(n)) {
            Rational x = e * Rational(k * sign_);
            auto [c, mm] = multiply(m, Monomial::of(reg.prime_root(p), x));
            coef *= c;
            m = mm;
        }
    };
    take(q.get_num(), 1);
    take(q.get_den(), -1);
    return SymbolicReal(coef, m);
}

}  // namespace

std::optional<SymbolicReal> exp_symbolic(const SymbolicReal& a) {
    auto& reg = ConstantRegistry::instance();
    SymbolicReal out(1);
    for (const auto& [m, c] : a.terms()) {
        if (m.empty()) {
            out *= SymbolicReal(Rational(1), Monomial::of(reg.euler(), c));
            continue;
        }
        if (m.factors().size() != 1 || m.factors()[0].exponent != 1 ||
            m.factors()[0].symbol->kind() != ConstantKind::LogPrime)
            return std::nullopt;
        out *= rational_power(Rational(m.factors()[0].symbol->prime()), c);
    }
    return out;
}

SymbolicReal power(const SymbolicReal& a, const Rational& e) {
    if (e == 0) return SymbolicReal(1);
    if (e == 1) return a;
    if (is_integer(e) && e > 0) {
        SymbolicReal base = a, out(1);
        Integer n = e.get_num();
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) out *= base;
            n /= 2;
            if (n > 0) base *= base;
        }
        return out;
    }
    if (a.is_zero()) throw DomainError("zero raised to a non-positive power");
    if (a.is_single_term() && a.terms().begin()->first.is_unit()) {
        const auto& [m, c] = *a.terms().begin();
        if (sgn(c) < 0 && !is_integer(e)) throw DomainError("fractional power of a negative scalar");
        Rational sign_fix = (sgn(c) < 0 && mpz_odd_p(e.get_num().get_mpz_t())) ? Rational(-1) : Rational(1);
        SymbolicReal out = rational_power(abs(c), e);
        Rational coef(1);
        Monomial mm;
        for (const auto& f : m.factors()) {
            auto [k, prod] = multiply(mm, Monomial::of(f.symbol, f.exponent * e));
            coef *= k;
            mm = prod;
        }
        out *= SymbolicReal(coef * sign_fix, mm);
        return out;
    }
    if (is_integer(e)) {
        auto inv = try_divide(SymbolicReal(1), power(a, -e));
        if (inv) return *inv;
    }
    int s = sign(a);
    if (s < 0) {
        if (!is_integer(e)) throw DomainError("fractional power of a negative scalar");
        SymbolicReal out = power(-a, e);
        return mpz_odd_p(e.get_num().get_mpz_t()) ? -out : out;
    }
    std::string name = "rpow(" + a.to_string() + "," + e.get_str() + ")";
    std::optional<SymbolicReal> log_value;
    if (auto l = log_symbolic(a)) log_value = *l * SymbolicReal(e);
    SymbolicReal base = a;
    Rational expo = e;
    auto fn = [base, expo](long bits) {
        Rational target(1);
        mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
        for (long b = bits + 8;; b += 32) {
            Interval r = enclosure::rpow(evaluate_bits(base, b), expo, b);
            if (r.width() <= target) return r;
        }
    };
    return SymbolicReal::constant(ConstantRegistry::instance().adjoin(name, fn, log_value ? &*log_value : nullptr));
}

// ---------------------------------------------------------------------------
// Evaluation and comparison
// ---------------------------------------------------------------------------

namespace {

std::atomic<long> g_max_bits{256};

Rational two_pow_neg(long bits) {
    Rational r(1);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    return r;
}

}  // namespace

long max_precision_bits() { return g_max_bits.load(); }
void set_max_precision_bits(long bits) { g_max_bits.store(std::max<long>(bits, 8)); }

Interval evaluate_bits(const SymbolicReal& a, long bits) {
    Interval sum(Rational(0));
    long inner = bits + 8 + static_cast<long>(a.terms().size());
    for (const auto& [m, c] : a.terms()) {
        Interval prod(Rational(1));
        for (const auto& f : m.factors()) prod = prod * f.symbol->enclose(inner + 4 * m.degree(), f.exponent);
        sum = sum + c * prod;
    }
    return sum;
}

Interval evaluate(const SymbolicReal& a, const Rational& width) {
    if (sgn(width) <= 0) throw DomainError("evaluation width must be positive");
    if (a.is_rational()) return Interval(a.rational_part());
    long bits = 8;
    while (two_pow_neg(bits) > width) ++bits;
    for (long b = bits;; b += 16) {
        Interval r = evaluate_bits(a, b);
        if (r.width() <= width) return r;
    }
}

Ordering compare(const SymbolicReal& a, const SymbolicReal& b) {
    SymbolicReal d = a - b;
    int s = sign(d);
    return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

int sign(const SymbolicReal& a) {
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sgn(a.rational_part());
    if (a.is_single_term() && a.terms().begin()->first.is_unit()) return sgn(a.terms().begin()->second);
    long max_bits = max_precision_bits();
    Rational floor_width = two_pow_neg(max_bits);
    for (long b = 32;; b *= 2) {
        long bits = std::min(b, max_bits + 16);
        Interval r = evaluate_bits(a, bits);
        if (sgn(r.lo) > 0) return 1;
        if (sgn(r.hi) < 0) return -1;
        if (r.width() <= floor_width || bits >= max_bits + 16)
            throw UndecidedComparison(a.to_string(), "enclosure [" + r.lo.get_str() + ", " + r.hi.get_str() +
                                                         "] still contains 0 at " + std::to_string(bits) + " bits");
    }
}

double to_double(const SymbolicReal& a) {
    Interval r = evaluate_bits(a, 64);
    return r.midpoint().get_d();
}

}  // namespace hahnlog
