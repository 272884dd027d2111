#pragma once

#include "hahnlog/eigen_support.hpp"
#include "hahnlog/scalars.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hahnlog {

/// Rational coordinates with respect to the generators of a value group.
using Coords = std::vector<Rational>;

Coords operator+(const Coords& a, const Coords& b);
Coords operator-(const Coords& a, const Coords& b);
Coords operator-(const Coords& a);
Coords operator*(const Rational& q, const Coords& a);
bool is_zero(const Coords& a);
std::string to_string(const Coords& a);

/// Divisible hull of a finitely generated subgroup of R^l, ordered
/// antilexicographically (the last coordinate decides).
///
/// The generator matrix G is l x m (columns are generators). Generators must
/// be linearly independent over Q; independence is decided by expanding every
/// entry in the monomial basis of the scalar ring.
class ValueGroup {
public:
    static std::shared_ptr<const ValueGroup> create(std::size_t rank, const SymMatrix& generators);
    /// Q^l with the unit vectors as generators.
    static std::shared_ptr<const ValueGroup> canonical(std::size_t rank);

    std::size_t rank() const noexcept { return rank_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(g_.cols()); }
    const SymMatrix& generators() const noexcept { return g_; }
    bool is_rational() const noexcept { return rational_; }
    bool is_identity() const noexcept { return identity_; }

    /// Archimedean classes 1..l not populated by any element (reported, not
    /// rejected).
    const std::vector<std::size_t>& unpopulated_classes() const noexcept { return unpopulated_; }
    bool full_archimedean_rank() const noexcept { return unpopulated_.empty(); }

    Coords zero() const { return Coords(size(), Rational(0)); }
    Coords generator(std::size_t i) const;

    std::vector<SymbolicReal> real_vector(const Coords& c) const;
    /// Sign in the antilexicographic order; may raise UndecidedComparison.
    int sign(const Coords& c) const;
    Ordering compare(const Coords& a, const Coords& b) const;
    /// 0 for the zero element, otherwise the largest k with a nonzero k-th
    /// real coordinate.
    std::size_t arch_index(const Coords& c) const;

    /// Rational coordinates of a real vector, if it lies in the group.
    std::optional<Coords> coordinates_of(const std::vector<SymbolicReal>& real) const;

    std::string to_string() const;

private:
    ValueGroup() = default;

    std::size_t rank_{0};
    SymMatrix g_;
    bool rational_{false};
    bool identity_{false};
    std::vector<std::vector<Rational>> g_rational_;
    std::vector<std::size_t> unpopulated_;
};

using GroupPtr = std::shared_ptr<const ValueGroup>;

/// An element of a value group: owning group and coordinates.
struct GroupElement {
    GroupPtr group;
    Coords coords;

    std::vector<SymbolicReal> real_vector() const { return group->real_vector(coords); }
    std::size_t arch_index() const { return group->arch_index(coords); }

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.group == b.group && a.coords == b.coords;
    }
};

Ordering compare_group(const GroupElement& a, const GroupElement& b);

/// Q-rank of the columns of a scalar matrix.
std::size_t rational_rank(const SymMatrix& m);

/// Linear solve over Q: rows of `a` times x equal `b`, for a matrix whose
/// columns are independent. nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, const std::vector<Rational>& b);

struct EmbeddingReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
    std::string to_string() const;
};

/// Checks that T (l x l) is zero below the diagonal, has positive diagonal,
/// is injective on the group, and preserves sign and archimedean index on
/// the generators.
EmbeddingReport validate_embedding(const SymMatrix& t, const ValueGroup& group);

/// T applied to the real vector of an element.
std::vector<SymbolicReal> apply_embedding(const SymMatrix& t, const ValueGroup& group, const Coords& c);

/// The matrix of the embedding on the generators, T G (l x m).
SymMatrix embedding_on_generators(const SymMatrix& t, const ValueGroup& group);

/// For m = l: the unique lambda with T' G = lambda T G.
SymMatrix embedding_transition(const SymMatrix& t, const SymMatrix& t_prime, const ValueGroup& group);

/// Antilexicographic sign of a real vector.
int antilex_sign(const std::vector<SymbolicReal>& v);
std::size_t antilex_index(const std::vector<SymbolicReal>& v);

}  // namespace hahnlog
