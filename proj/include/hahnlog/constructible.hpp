#pragma once

// Subanalytic terms and constructible expressions.
//
// Terms are a decidable fragment: variables x1.., real and series constants,
// ring operations, guarded division and rational powers, the restricted
// series L(a) = log(1+a), E(a) = exp(a), (binom r a) = (1+a)^r on
// infinitesimal arguments, and piecewise definitions by a sign condition.
// A constructible expression is a finite sum of finite products whose factors
// are terms or logarithms of terms.
//
// S-expression syntax:
//   numbers      3  -1/2            constants   zeta (adjoined names)
//   variables    x1 x2 ...          series      t1 t2 ...  (tpow c1 ... cl)
//   arithmetic   (+ a ...) (- a b) (- a) (* a ...) (/ a b) (inv a) (pow a r)
//                (sum a ...) (prod a ...)
//   restricted   (L a) (E a) (binom r a)
//   piecewise    (if (pos g) a b)   conditions pos neg zero nonneg nonpos nonzero
//   logarithm    (log a)

#include "hahnlog/logarithm.hpp"
#include "hahnlog/sexpr.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hahnlog {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprOp { Var, Const, Add, Mul, Neg, Div, Pow, L, E, Binom, If, Log };
enum class Condition { Pos, Neg, Zero, NonNeg, NonPos, NonZero };

struct Expr {
    ExprOp op;
    std::size_t var{0};                      // Var: 1-based index
    std::optional<HahnSeries> value;         // Const
    Rational exponent{0};                    // Pow, Binom
    Condition condition{Condition::Pos};     // If: children = {guard, then, else}
    std::vector<ExprPtr> children;
    std::size_t offset{0}, length{0};

    bool has_log() const;
    std::size_t max_var() const;
    std::string to_string() const;
};

/// Parse one term (logarithms allowed) over the series of `group`.
ExprPtr parse_term(const SExpr& e, const GroupPtr& group);
ExprPtr parse_term(std::string_view text, const GroupPtr& group);

/// Value at a point; a missing variable or violated guard raises.
HahnSeries eval_subanalytic(const Expr& f, const std::vector<HahnSeries>& point, const SeriesContext& ctx = {});

struct ProductFactor {
    bool is_log{false};
    ExprPtr term;  // log-free
};

enum class LogTag { Real, Mu };

struct ConstructibleExpr {
    std::vector<std::vector<ProductFactor>> products;
    LogTag tag{LogTag::Real};
    GroupPtr group;

    std::string to_string() const;
};

/// Sum-of-products normal form of a term; ParseError when a logarithm sits
/// under a division, a non-natural power, a restricted series or a guard.
ConstructibleExpr to_constructible(const ExprPtr& term, const GroupPtr& group);
ConstructibleExpr parse_constructible(std::string_view text, const GroupPtr& group);

/// Logarithms re-tagged to evaluate through log_mu; the terms are unchanged.
ConstructibleExpr lift(const ConstructibleExpr& f);

/// Value of a real expression at a real point (the logarithm of a positive
/// real constant).
HahnSeries eval_real(const ConstructibleExpr& f, const std::vector<HahnSeries>& point, const SeriesContext& ctx = {});

/// Value of a lifted expression; logarithms evaluate through log_mu.
PolyElem eval_constructible(const LogDatum& mu, const ConstructibleExpr& f, const std::vector<HahnSeries>& point,
                            const SeriesContext& ctx = {});

/// apply_connection(phi, value under mu).
PolyElem transport(const AffineMap& phi, const LogDatum& mu, const ConstructibleExpr& f,
                   const std::vector<HahnSeries>& point, const SeriesContext& ctx = {});

}  // namespace hahnlog
