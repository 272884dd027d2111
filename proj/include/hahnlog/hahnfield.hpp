#pragma once

// Truncated Hahn series  sum a_g t^g + O(t^d)  over a value group.
//
// A series stores finitely many terms with exponents strictly below its
// precision d; every term of the true element with exponent below d is
// displayed, terms at or above d are unknown. `precision == nullopt` marks an
// exact element (the finite sum is the whole element). Operations propagate
// precision honestly, so two computations of the same element always agree
// on the terms both display. This is the sense in which identities of the
// field hold "to precision".
//
// Infinite expansions (inverse, powers, log, exp) are cut after the terms
// h^n, n <= order, of a series in an infinitesimal h; the result then carries
// precision (order + 1) v(h).

#include "hahnlog/scalars.hpp"
#include "hahnlog/valuegroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hahnlog {

struct SeriesContext {
    unsigned order = 8;
};

struct Term {
    Coords exp;
    SymbolicReal coef;
};

class HahnSeries {
public:
    /// Exact zero.
    explicit HahnSeries(GroupPtr group);
    HahnSeries(GroupPtr group, std::vector<Term> terms, std::optional<Coords> precision = std::nullopt);

    static HahnSeries constant(GroupPtr group, const SymbolicReal& a);
    static HahnSeries monomial(GroupPtr group, const SymbolicReal& a, const Coords& exp);
    /// O(t^d): no visible terms, precision d.
    static HahnSeries big_o(GroupPtr group, const Coords& precision);

    const GroupPtr& group() const noexcept { return group_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const std::optional<Coords>& precision() const noexcept { return precision_; }
    bool is_exact() const noexcept { return !precision_; }
    bool is_exact_zero() const noexcept { return terms_.empty() && !precision_; }
    bool has_visible_term() const noexcept { return !terms_.empty(); }
    /// Exact and supported in exponent 0 only.
    bool is_constant() const;

    /// Leading term; ZeroToPrecision when nothing is visible, DomainError on exact zero.
    const Term& leading() const;
    Coords valuation() const { return leading().exp; }
    /// Lower bound for the valuation: leading exponent, else the precision;
    /// nullopt for exact zero (valuation +infinity).
    std::optional<Coords> valuation_bound() const;
    /// Coefficient of t^g (0 if absent); ZeroToPrecision if g is not below the precision.
    SymbolicReal coefficient(const Coords& g) const;

    /// Drop terms at or above d and lower the precision to d.
    HahnSeries truncated(const Coords& d) const;
    HahnSeries shifted(const Coords& g) const;  // multiply by t^g

    HahnSeries& operator+=(const HahnSeries& o);
    HahnSeries& operator-=(const HahnSeries& o);
    HahnSeries& operator*=(const HahnSeries& o);
    HahnSeries& operator*=(const SymbolicReal& a);
    /// x * invert(y) with the default context.
    HahnSeries& operator/=(const HahnSeries& o);

    friend HahnSeries operator+(HahnSeries a, const HahnSeries& b) { return a += b; }
    friend HahnSeries operator-(HahnSeries a, const HahnSeries& b) { return a -= b; }
    friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator*(HahnSeries a, const SymbolicReal& s) { return a *= s; }
    friend HahnSeries operator/(HahnSeries a, const HahnSeries& b) { return a /= b; }
    friend HahnSeries operator-(const HahnSeries& a);

    /// Identical terms and precision.
    friend bool operator==(const HahnSeries& a, const HahnSeries& b);
    friend bool operator!=(const HahnSeries& a, const HahnSeries& b) { return !(a == b); }

    std::string to_string() const;

private:
    void normalize();
    GroupPtr group_;
    std::vector<Term> terms_;  // ascending exponents
    std::optional<Coords> precision_;
};

/// Lower of two precisions (nullopt = exact).
std::optional<Coords> min_precision(const ValueGroup& g, const std::optional<Coords>& a, const std::optional<Coords>& b);

struct LeadingDecomposition {
    SymbolicReal a;
    Coords gamma;
    HahnSeries h;
};

/// x = a t^gamma (1 + h) with v(h) > 0.
LeadingDecomposition decompose(const HahnSeries& x);

HahnSeries invert(const HahnSeries& x, const SeriesContext& ctx = {});
/// x^(p/q) for x > 0 (integer exponents also for x < 0).
HahnSeries power_rational(const HahnSeries& x, const Rational& e, const SeriesContext& ctx = {});
/// log(a + m) = log(a) + L(m/a) for v(x) = 0 and a representable log(a).
HahnSeries partial_log(const HahnSeries& x, const SeriesContext& ctx = {});
/// exp(a + m) = e^a E(m) for v(x) >= 0.
HahnSeries partial_exp(const HahnSeries& x, const SeriesContext& ctx = {});

/// Restricted series on infinitesimals: L(x) = log(1+x), E(x) = exp(x),
/// B_r(x) = (1+x)^r.
HahnSeries series_log1p(const HahnSeries& x, const SeriesContext& ctx = {});
HahnSeries series_exp(const HahnSeries& x, const SeriesContext& ctx = {});
HahnSeries series_binomial(const HahnSeries& x, const Rational& r, const SeriesContext& ctx = {});

/// Sign of the leading coefficient of x - y (EQ for exact equality).
Ordering compare_series(const HahnSeries& x, const HahnSeries& y);
int sign(const HahnSeries& x);
/// x and y agree on every term both display.
bool equal_to_precision(const HahnSeries& x, const HahnSeries& y);

/// Inverse of the leading coefficient, staying inside the scalar ring when possible.
SymbolicReal scalar_inverse(const SymbolicReal& a);

/// Parse the text form "3*t^(-1/2,0) + 1*t^(1,0) + O(t^(8,8))".
HahnSeries parse_series(std::string_view text, const GroupPtr& group, const SeriesContext& ctx = {});

inline std::ostream& operator<<(std::ostream& os, const HahnSeries& x) { return os << x.to_string(); }

}  // namespace hahnlog
