#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hahnlog {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline int sign(const Rational& q) { return sgn(q); }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);
Rational pow_int(const Rational& base, long exponent);

/// Prime factorization of a positive integer by trial division.
std::vector<std::pair<Integer, long>> factorize(const Integer& n);

/// Floor of the q-th root of a non-negative integer.
Integer floor_root(const Integer& n, unsigned long q);

/// Closed interval with rational endpoints.
struct Interval {
    Rational lo{0};
    Rational hi{0};

    Interval() = default;
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
    explicit Interval(const Rational& point) : lo(point), hi(point) {}

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    /// Widen outward to a dyadic grid of spacing 2^-bits.
    Interval rounded(long bits) const;
    Interval intersect(const Interval& o) const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& c, const Interval& a);
Interval pow(const Interval& a, unsigned long n);

namespace enclosure {

/// Enclosure of log(x), x > 0, of width at most 2^-bits.
Interval log(const Rational& x, long bits);
/// Enclosure of exp(x) of width at most 2^-bits.
Interval exp(const Rational& x, long bits);
/// Enclosure of x^e, x > 0, of width at most 2^-bits.
Interval rpow(const Rational& x, const Rational& e, long bits);
/// Enclosure of I^e for a positive interval I (monotone in the endpoints).
Interval rpow(const Interval& x, const Rational& e, long bits);

}  // namespace enclosure

}  // namespace hahnlog
