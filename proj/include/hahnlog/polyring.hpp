#pragma once

// The ordered ring R[X_1, ..., X_l].
//
// The order is the one generated by 1 << X_1 << ... << X_l << (infinite
// elements of R): every X_k exceeds every bounded element of R, lies below
// every infinite element, and X_k^m < X_{k+1} for all m. These relations are
// realized by any embedding X_k -> log(t^-1) * Z_k into a field of
// logarithmic-exponential series, where log(t^-1) is larger than every
// constant and smaller than every t^g with g < 0, and Z_1 << ... << Z_l are
// separated multiplicatively. Under such an embedding, a term c X^a behaves
// like c times a positive element of "valuation zero but logarithmically
// large" size, so:
//   1. the coefficient valuations decide first: the terms whose coefficient
//      has the least valuation d* dominate all others, whatever their
//      monomials;
//   2. among those, the monomial largest in the antilexicographic order of
//      exponent vectors (X_l decides first) dominates;
//   3. the sign of that coefficient's leading coefficient is the sign of p.
// Any order satisfying the defining relations agrees with this algorithm.

#include "hahnlog/hahnfield.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hahnlog {

using MultiIndex = std::vector<unsigned>;

/// Antilexicographic comparison of exponent vectors (-1, 0, 1).
int compare_monomials(const MultiIndex& a, const MultiIndex& b);

class PolyElem {
public:
    using Entry = std::pair<MultiIndex, HahnSeries>;

    explicit PolyElem(GroupPtr group);
    PolyElem(const HahnSeries& constant);  // NOLINT
    static PolyElem variable(GroupPtr group, std::size_t k);  // X_k, k = 1..l
    static PolyElem monomial(const HahnSeries& c, MultiIndex alpha);

    const GroupPtr& group() const noexcept { return group_; }
    std::size_t nvars() const noexcept { return group_->rank(); }
    /// Descending monomial order.
    const std::vector<Entry>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    unsigned degree() const;
    HahnSeries coefficient(const MultiIndex& alpha) const;
    HahnSeries constant_part() const { return coefficient(MultiIndex(nvars(), 0)); }

    PolyElem& operator+=(const PolyElem& o);
    PolyElem& operator-=(const PolyElem& o);
    PolyElem& operator*=(const PolyElem& o);
    PolyElem& operator*=(const HahnSeries& c);

    friend PolyElem operator+(PolyElem a, const PolyElem& b) { return a += b; }
    friend PolyElem operator-(PolyElem a, const PolyElem& b) { return a -= b; }
    friend PolyElem operator*(const PolyElem& a, const PolyElem& b);
    friend PolyElem operator-(const PolyElem& a);

    friend bool operator==(const PolyElem& a, const PolyElem& b);
    friend bool operator!=(const PolyElem& a, const PolyElem& b) { return !(a == b); }

    std::string to_string() const;

private:
    void add_entry(const MultiIndex& alpha, const HahnSeries& c);
    GroupPtr group_;
    std::vector<Entry> terms_;
};

PolyElem power(const PolyElem& p, unsigned n);

/// Coefficientwise agreement on all displayed terms.
bool equal_to_precision(const PolyElem& a, const PolyElem& b);

/// Sign under the order of R[X]: -1, 0 or 1.
int poly_sign(const PolyElem& p);

/// The element larger than every polynomial.
struct Infinity {
    friend bool operator==(Infinity, Infinity) { return true; }
};
using PolyOrInfinity = std::variant<PolyElem, Infinity>;

Ordering poly_compare(const PolyOrInfinity& p, const PolyOrInfinity& q);
bool is_infinity(const PolyOrInfinity& p);
std::string to_string(const PolyOrInfinity& p);

/// Parse the text form "X2 + (log(2))*X1 + (1 + 1/2*t^(1,0))".
PolyElem parse_poly(std::string_view text, const GroupPtr& group, const SeriesContext& ctx = {});

inline std::ostream& operator<<(std::ostream& os, const PolyElem& p) { return os << p.to_string(); }

}  // namespace hahnlog
