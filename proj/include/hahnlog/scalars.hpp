#pragma once

// Exact real scalars: rational polynomials in named constants.
//
// Representable subfield. A SymbolicReal is a finite Q-linear combination of
// monomials in three kinds of constants:
//   * transcendental symbols, raised to natural powers: log(p) for primes p
//     and user-adjoined constants (e.g. an irrational "zeta");
//   * prime roots p^f with 0 < f < 1, printed rpow(p,f); products reduce
//     (p^(1/2) * p^(1/2) = p), so Q-linear combinations of root monomials are
//     unique (roots of distinct primes are linearly independent over Q);
//   * a single Euler factor e^r, r != 0 rational, printed exp(r).
// Symbols of different kinds are treated as algebraically independent. Two
// values are equal iff their canonical forms coincide; comparison of distinct
// forms refines interval enclosures and raises UndecidedComparison when the
// configured maximum precision is exhausted.

#include "hahnlog/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hahnlog {

enum class ConstantKind { LogPrime, Adjoined, PrimeRoot, Euler };

/// A named real constant with a refinable enclosure.
class ConstantSymbol {
public:
    using EnclosureFn = std::function<Interval(long bits)>;

    const std::string& name() const noexcept { return name_; }
    ConstantKind kind() const noexcept { return kind_; }
    /// The prime for LogPrime and PrimeRoot symbols.
    const Integer& prime() const noexcept { return prime_; }

    /// Enclosure of the constant (or, for PrimeRoot/Euler symbols, of the
    /// power with the given exponent) of width <= 2^-bits. Results nest.
    Interval enclose(long bits, const Rational& exponent = Rational(1)) const;

    /// Logarithm of the constant, if declared (adjoined symbols only).
    const class SymbolicReal* declared_log() const noexcept { return log_.get(); }

private:
    friend class ConstantRegistry;
    ConstantSymbol() = default;

    std::string name_;
    ConstantKind kind_{ConstantKind::Adjoined};
    Integer prime_{0};
    EnclosureFn fn_;
    std::shared_ptr<const SymbolicReal> log_;
    mutable std::mutex mutex_;
    mutable std::map<Rational, Interval> cache_;
};

/// Append-only, thread-safe table of constants.
class ConstantRegistry {
public:
    static ConstantRegistry& instance();

    const ConstantSymbol* log_prime(const Integer& p);
    const ConstantSymbol* prime_root(const Integer& p);
    const ConstantSymbol* euler();
    /// Adjoin a named constant. Re-adjoining an existing name returns the
    /// existing symbol.
    const ConstantSymbol* adjoin(const std::string& name, ConstantSymbol::EnclosureFn fn,
                                 const SymbolicReal* log_value = nullptr);
    const ConstantSymbol* find(std::string_view name) const;

private:
    ConstantRegistry() = default;
    const ConstantSymbol* insert(std::unique_ptr<ConstantSymbol> sym);

    struct Impl;
    Impl& impl() const;
};

/// One factor of a monomial: symbol^exponent.
struct Factor {
    const ConstantSymbol* symbol;
    Rational exponent;
};

/// Product of factors sorted by symbol name.
class Monomial {
public:
    Monomial() = default;
    static Monomial of(const ConstantSymbol* s, Rational exponent = Rational(1));

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    long degree() const;
    /// Only prime roots and Euler factors (invertible in the ring).
    bool is_unit() const;
    std::string to_string() const;

    /// Product; reduction of prime roots contributes a rational factor.
    friend std::pair<Rational, Monomial> multiply(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b);
    /// Canonical order: descending degree, then factor names.
    friend bool canonical_less(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return canonical_less(a, b); }
};

enum class Ordering { LT = -1, EQ = 0, GT = 1 };

class SymbolicReal {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    SymbolicReal() = default;
    SymbolicReal(int v) : SymbolicReal(Rational(v)) {}  // NOLINT
    SymbolicReal(long v) : SymbolicReal(Rational(v)) {}  // NOLINT
    SymbolicReal(const Rational& q);  // NOLINT
    SymbolicReal(const Rational& c, const Monomial& m);

    static SymbolicReal constant(const ConstantSymbol* s) { return SymbolicReal(Rational(1), Monomial::of(s)); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const noexcept;
    /// The pure-rational part when `is_rational()`.
    Rational rational_value() const;
    /// Coefficient of the empty monomial.
    Rational rational_part() const;
    bool is_single_term() const noexcept { return terms_.size() == 1; }

    SymbolicReal& operator+=(const SymbolicReal& o);
    SymbolicReal& operator-=(const SymbolicReal& o);
    SymbolicReal& operator*=(const SymbolicReal& o);
    SymbolicReal& operator*=(const Rational& q);
    /// Exact division; throws NotRepresentable when the quotient is not in the ring.
    SymbolicReal& operator/=(const SymbolicReal& o);

    friend SymbolicReal operator+(SymbolicReal a, const SymbolicReal& b) { return a += b; }
    friend SymbolicReal operator-(SymbolicReal a, const SymbolicReal& b) { return a -= b; }
    friend SymbolicReal operator*(const SymbolicReal& a, const SymbolicReal& b);
    friend SymbolicReal operator/(SymbolicReal a, const SymbolicReal& b) { return a /= b; }
    friend SymbolicReal operator-(const SymbolicReal& a);

    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b);
    friend bool operator!=(const SymbolicReal& a, const SymbolicReal& b) { return !(a == b); }

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

/// Exact quotient a/b when it exists in the ring.
std::optional<SymbolicReal> try_divide(const SymbolicReal& a, const SymbolicReal& b);

/// Sum of e_p log(p) over the factorization of q.
SymbolicReal log_of_rational(const Rational& q);

/// log(a) when a is a positive rational times a unit monomial (or an
/// adjoined constant with a declared logarithm); nullopt otherwise.
std::optional<SymbolicReal> log_symbolic(const SymbolicReal& a);

/// exp(a) when a = r + sum q_p log(p); nullopt otherwise.
std::optional<SymbolicReal> exp_symbolic(const SymbolicReal& a);

/// a^e for a > 0. Exact when a is a rational times a unit monomial, or when e
/// is a natural number; otherwise a canonically named adjoined constant
/// rpow(<a>,<e>) is introduced.
SymbolicReal power(const SymbolicReal& a, const Rational& e);

/// Enclosure of width <= `width` containing the real value of a.
Interval evaluate(const SymbolicReal& a, const Rational& width);
Interval evaluate_bits(const SymbolicReal& a, long bits);

/// Maximum refinement precision used by `compare` (bits, default 256:
/// enclosure width 2^-256).
long max_precision_bits();
void set_max_precision_bits(long bits);

Ordering compare(const SymbolicReal& a, const SymbolicReal& b);
int sign(const SymbolicReal& a);
double to_double(const SymbolicReal& a);

/// Parse the canonical text form (and ordinary infix arithmetic on it).
SymbolicReal parse_scalar(std::string_view text);

inline std::ostream& operator<<(std::ostream& os, const SymbolicReal& a) { return os << a.to_string(); }

}  // namespace hahnlog
