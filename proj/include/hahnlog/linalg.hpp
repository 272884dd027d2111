#pragma once

// Fraction-free elimination over exact rings.
//
// Works on Eigen dense matrices of any exact scalar with a RingOps
// specialization. Row operations are of the cross-multiplication form
//     r_i <- p * r_i - a_ic * r_k
// so no division is ever required during forward elimination; the Bareiss
// division by the previous pivot is attempted and skipped when it is not
// exact in the ring (rows then stay scaled, which changes nothing about the
// row space). Division happens only in back substitution.

#include "hahnlog/eigen_support.hpp"
#include "hahnlog/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace hahnlog {

template <class S>
struct RingOps;

template <>
struct RingOps<Rational> {
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static std::optional<Rational> try_div(const Rational& a, const Rational& b) { return Rational(a / b); }
    static std::size_t complexity(const Rational&) { return 0; }
    static std::string text(const Rational& a) { return a.get_str(); }
};

template <>
struct RingOps<SymbolicReal> {
    static bool is_zero(const SymbolicReal& a) { return a.is_zero(); }
    static std::optional<SymbolicReal> try_div(const SymbolicReal& a, const SymbolicReal& b) { return try_divide(a, b); }
    static std::size_t complexity(const SymbolicReal& a) { return a.is_rational() ? 0 : a.terms().size(); }
    static std::string text(const SymbolicReal& a) { return a.to_string(); }
};

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
struct Echelon {
    DenseMatrix<S> rows;                 // row echelon form (fraction-free)
    std::vector<Eigen::Index> pivot_col;  // pivot column of row r, r < rank
    std::vector<Eigen::Index> origin;     // original index of each echelon row
    Eigen::Index rank{0};
};

/// Fraction-free row echelon form. Pivots prefer the simplest entry of the
/// column; ties go to the earliest row, so the result depends only on the
/// input order.
template <class S>
Echelon<S> echelon(DenseMatrix<S> a) {
    using Ops = RingOps<S>;
    Echelon<S> out;
    out.origin.resize(static_cast<std::size_t>(a.rows()));
    std::iota(out.origin.begin(), out.origin.end(), Eigen::Index(0));
    S prev(1);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
        Eigen::Index best = -1;
        for (Eigen::Index i = r; i < a.rows(); ++i) {
            if (Ops::is_zero(a(i, c))) continue;
            if (best < 0 || Ops::complexity(a(i, c)) < Ops::complexity(a(best, c))) best = i;
        }
        if (best < 0) continue;
        if (best != r) {
            a.row(r).swap(a.row(best));
            std::swap(out.origin[static_cast<std::size_t>(r)], out.origin[static_cast<std::size_t>(best)]);
        }
        const S p = a(r, c);
        for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
            if (Ops::is_zero(a(i, c))) continue;
            const S f = a(i, c);
            std::vector<S> fresh;
            for (Eigen::Index j = c; j < a.cols(); ++j) fresh.push_back(p * a(i, j) - f * a(r, j));
            std::vector<S> divided;
            for (const S& v : fresh) {
                auto q = Ops::try_div(v, prev);
                if (!q) break;
                divided.push_back(*q);
            }
            const std::vector<S>& keep = divided.size() == fresh.size() ? divided : fresh;
            for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) = keep[static_cast<std::size_t>(j - c)];
        }
        prev = p;
        out.pivot_col.push_back(c);
        ++r;
    }
    out.rank = r;
    out.rows = std::move(a);
    return out;
}

template <class S>
Eigen::Index rank(const DenseMatrix<S>& a) {
    return echelon<S>(a).rank;
}

/// Indices of the first maximal set of linearly independent rows, scanning
/// in the given order.
template <class S>
std::vector<Eigen::Index> independent_rows(const DenseMatrix<S>& a) {
    using Ops = RingOps<S>;
    std::vector<Eigen::Index> chosen;
    std::vector<std::vector<S>> basis;  // reduced rows
    std::vector<Eigen::Index> lead;     // leading column of each basis row
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        std::vector<S> row(static_cast<std::size_t>(a.cols()));
        for (Eigen::Index j = 0; j < a.cols(); ++j) row[static_cast<std::size_t>(j)] = a(i, j);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            auto c = static_cast<std::size_t>(lead[b]);
            if (Ops::is_zero(row[c])) continue;
            S f = row[c];
            S p = basis[b][c];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = p * row[j] - f * basis[b][j];
        }
        auto it = std::find_if(row.begin(), row.end(), [](const S& x) { return !Ops::is_zero(x); });
        if (it == row.end()) continue;
        chosen.push_back(i);
        lead.push_back(static_cast<Eigen::Index>(it - row.begin()));
        basis.push_back(std::move(row));
    }
    return chosen;
}

/// Solve A X = B for square nonsingular A. Throws DomainError when A is
/// singular and NotRepresentable when a quotient leaves the ring.
template <class S>
DenseMatrix<S> solve(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    using Ops = RingOps<S>;
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) throw DomainError("solve: dimension mismatch");
    DenseMatrix<S> aug(n, n + b.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (Eigen::Index j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    Echelon<S> e = echelon<S>(aug);
    for (Eigen::Index r = 0; r < n; ++r)
        if (r >= e.rank || e.pivot_col[static_cast<std::size_t>(r)] != r) throw DomainError("solve: singular matrix");
    const DenseMatrix<S>& u = e.rows;
    DenseMatrix<S> x(n, b.cols());
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            S acc = u(i, n + k);
            for (Eigen::Index j = i + 1; j < n; ++j) acc = acc - u(i, j) * x(j, k);
            auto q = Ops::try_div(acc, u(i, i));
            if (!q) throw NotRepresentable("solve: (" + Ops::text(acc) + ")/(" + Ops::text(u(i, i)) + ") is not representable");
            x(i, k) = *q;
        }
    }
    return x;
}

/// Exact product of two dense matrices (elementwise loops keep gmpxx
/// expression templates out of Eigen's kernels).
template <class S>
DenseMatrix<S> multiply(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (a.cols() != b.rows()) throw DomainError("multiply: dimension mismatch");
    DenseMatrix<S> out(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            S acc(0);
            for (Eigen::Index k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace hahnlog
