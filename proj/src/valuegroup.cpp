#include "hahnlog/valuegroup.hpp"

#include "hahnlog/errors.hpp"
#include "hahnlog/linalg.hpp"

#include <map>

namespace hahnlog {

Coords operator+(const Coords& a, const Coords& b) {
    if (a.size() != b.size()) throw DomainError("coordinate vectors of different groups");
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Coords operator-(const Coords& a, const Coords& b) {
    if (a.size() != b.size()) throw DomainError("coordinate vectors of different groups");
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Coords operator-(const Coords& a) {
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

Coords operator*(const Rational& q, const Coords& a) {
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = q * a[i];
    return out;
}

bool is_zero(const Coords& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::string to_string(const Coords& a) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += a[i].get_str();
    }
    return out + ")";
}

namespace {

// Rows indexed by (matrix row, monomial); one column per matrix column.
RatMatrix expand(const SymMatrix& m, Eigen::Index first_row = 0) {
    std::map<std::pair<Eigen::Index, Monomial>, std::size_t,
             bool (*)(const std::pair<Eigen::Index, Monomial>&, const std::pair<Eigen::Index, Monomial>&)>
        index([](const std::pair<Eigen::Index, Monomial>& a, const std::pair<Eigen::Index, Monomial>& b) {
            if (a.first != b.first) return a.first < b.first;
            return canonical_less(a.second, b.second);
        });
    for (Eigen::Index i = first_row; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (const auto& [mono, c] : m(i, j).terms()) index.try_emplace({i, mono}, index.size());
    RatMatrix out = RatMatrix::Constant(static_cast<Eigen::Index>(index.size()), m.cols(), Rational(0));
    for (Eigen::Index i = first_row; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (const auto& [mono, c] : m(i, j).terms()) out(static_cast<Eigen::Index>(index.at({i, mono})), j) = c;
    return out;
}

}  // namespace

std::size_t rational_rank(const SymMatrix& m) {
    RatMatrix e = expand(m);
    if (e.rows() == 0) return 0;
    return static_cast<std::size_t>(rank<Rational>(e));
}

std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, const std::vector<Rational>& b) {
    const Eigen::Index n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[static_cast<std::size_t>(i)];
    }
    Echelon<Rational> e = echelon<Rational>(aug);
    for (Eigen::Index c : e.pivot_col)
        if (c == n) return std::nullopt;
    if (e.rank != n) throw DomainError("solve_rational: dependent columns");
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        Rational acc = e.rows(i, n);
        for (Eigen::Index j = i + 1; j < n; ++j) acc -= e.rows(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / e.rows(i, i);
    }
    return x;
}

int antilex_sign(const std::vector<SymbolicReal>& v) {
    for (std::size_t k = v.size(); k-- > 0;)
        if (!v[k].is_zero()) return sign(v[k]);
    return 0;
}

std::size_t antilex_index(const std::vector<SymbolicReal>& v) {
    for (std::size_t k = v.size(); k-- > 0;)
        if (!v[k].is_zero()) return k + 1;
    return 0;
}

std::shared_ptr<const ValueGroup> ValueGroup::create(std::size_t rank, const SymMatrix& generators) {
    if (static_cast<std::size_t>(generators.rows()) != rank)
        throw DomainError("generator matrix must have one row per archimedean class");
    auto g = std::shared_ptr<ValueGroup>(new ValueGroup());
    g->rank_ = rank;
    g->g_ = generators;
    const auto m = static_cast<std::size_t>(generators.cols());
    if (rational_rank(generators) != m) throw DomainError("generators are not linearly independent over Q");

    g->rational_ = true;
    for (Eigen::Index i = 0; i < generators.rows(); ++i)
        for (Eigen::Index j = 0; j < generators.cols(); ++j)
            if (!generators(i, j).is_rational()) g->rational_ = false;
    if (g->rational_) {
        g->g_rational_.assign(rank, std::vector<Rational>(m));
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < m; ++j)
                g->g_rational_[i][j] = generators(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).rational_part();
    }
    g->identity_ = g->rational_ && m == rank;
    for (std::size_t i = 0; g->identity_ && i < rank; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (g->g_rational_[i][j] != (i == j ? 1 : 0)) g->identity_ = false;

    // class k is populated iff the Q-rank of rows k..l exceeds that of rows k+1..l
    std::size_t above = 0;
    for (std::size_t k = rank; k >= 1; --k) {
        SymMatrix tail = generators.bottomRows(static_cast<Eigen::Index>(rank - k + 1));
        std::size_t r = rational_rank(tail);
        if (r == above) g->unpopulated_.insert(g->unpopulated_.begin(), k);
        above = r;
    }
    return g;
}

std::shared_ptr<const ValueGroup> ValueGroup::canonical(std::size_t rank) {
    SymMatrix id = SymMatrix::Constant(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank), SymbolicReal(0));
    for (std::size_t i = 0; i < rank; ++i) id(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = SymbolicReal(1);
    return create(rank, id);
}

Coords ValueGroup::generator(std::size_t i) const {
    Coords c = zero();
    c.at(i) = 1;
    return c;
}

std::vector<SymbolicReal> ValueGroup::real_vector(const Coords& c) const {
    if (c.size() != size()) throw DomainError("coordinate vector does not belong to this group");
    std::vector<SymbolicReal> out(rank_);
    if (identity_) {
        for (std::size_t k = 0; k < rank_; ++k) out[k] = SymbolicReal(c[k]);
        return out;
    }
    if (rational_) {
        for (std::size_t k = 0; k < rank_; ++k) {
            Rational acc(0);
            for (std::size_t j = 0; j < c.size(); ++j) acc += g_rational_[k][j] * c[j];
            out[k] = SymbolicReal(acc);
        }
        return out;
    }
    for (std::size_t k = 0; k < rank_; ++k) {
        SymbolicReal acc;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (sgn(c[j]) != 0) acc += g_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * SymbolicReal(c[j]);
        out[k] = std::move(acc);
    }
    return out;
}

int ValueGroup::sign(const Coords& c) const {
    if (identity_) {
        for (std::size_t k = c.size(); k-- > 0;)
            if (sgn(c[k]) != 0) return sgn(c[k]);
        return 0;
    }
    return antilex_sign(real_vector(c));
}

Ordering ValueGroup::compare(const Coords& a, const Coords& b) const {
    if (a == b) return Ordering::EQ;
    int s = sign(a - b);
    return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

std::size_t ValueGroup::arch_index(const Coords& c) const {
    if (identity_) {
        for (std::size_t k = c.size(); k-- > 0;)
            if (sgn(c[k]) != 0) return k + 1;
        return 0;
    }
    return antilex_index(real_vector(c));
}

std::optional<Coords> ValueGroup::coordinates_of(const std::vector<SymbolicReal>& real) const {
    if (real.size() != rank_) return std::nullopt;
    if (identity_) {
        Coords c(rank_);
        for (std::size_t k = 0; k < rank_; ++k) {
            if (!real[k].is_rational()) return std::nullopt;
            c[k] = real[k].rational_part();
        }
        return c;
    }
    const auto m = static_cast<Eigen::Index>(size());
    SymMatrix aug(static_cast<Eigen::Index>(rank_), m + 1);
    aug.leftCols(m) = g_;
    for (std::size_t k = 0; k < rank_; ++k) aug(static_cast<Eigen::Index>(k), m) = real[k];
    RatMatrix e = expand(aug);
    if (e.rows() == 0) return zero();
    std::vector<Rational> rhs(static_cast<std::size_t>(e.rows()));
    for (Eigen::Index i = 0; i < e.rows(); ++i) rhs[static_cast<std::size_t>(i)] = e(i, m);
    return solve_rational(e.leftCols(m), rhs);
}

std::string ValueGroup::to_string() const {
    std::string out = "rank " + std::to_string(rank_) + "; generators";
    for (std::size_t j = 0; j < size(); ++j) {
        out += j ? "; (" : " (";
        for (std::size_t k = 0; k < rank_; ++k) {
            if (k) out += ", ";
            out += g_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)).to_string();
        }
        out += ")";
    }
    return out;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw DomainError("group elements of different groups");
    return {a.group, a.coords + b.coords};
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw DomainError("group elements of different groups");
    return {a.group, a.coords - b.coords};
}

Ordering compare_group(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw DomainError("group elements of different groups");
    return a.group->compare(a.coords, b.coords);
}

std::string EmbeddingReport::to_string() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& v : violations) out += (out.empty() ? "" : "; ") + v;
    return out;
}

SymMatrix embedding_on_generators(const SymMatrix& t, const ValueGroup& group) {
    return multiply<SymbolicReal>(t, group.generators());
}

std::vector<SymbolicReal> apply_embedding(const SymMatrix& t, const ValueGroup& group, const Coords& c) {
    std::vector<SymbolicReal> v = group.real_vector(c);
    std::vector<SymbolicReal> out(static_cast<std::size_t>(t.rows()));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        SymbolicReal acc;
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            if (!t(i, j).is_zero() && !v[static_cast<std::size_t>(j)].is_zero()) acc += t(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return out;
}

EmbeddingReport validate_embedding(const SymMatrix& t, const ValueGroup& group) {
    EmbeddingReport report;
    const auto l = static_cast<Eigen::Index>(group.rank());
    if (t.rows() != l || t.cols() != l) {
        report.violations.push_back("embedding matrix must be " + std::to_string(l) + "x" + std::to_string(l));
        return report;
    }
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (!t(i, j).is_zero())
                report.violations.push_back("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ") below the diagonal is " + t(i, j).to_string() + ", not 0");
    for (Eigen::Index j = 0; j < l; ++j)
        if (sign(t(j, j)) <= 0)
            report.violations.push_back("diagonal entry (" + std::to_string(j + 1) + "," + std::to_string(j + 1) +
                                        ") is " + t(j, j).to_string() + ", not positive");
    SymMatrix tg = embedding_on_generators(t, group);
    if (rational_rank(tg) != group.size()) report.violations.push_back("embedding is not injective on the group");
    if (!report.ok()) return report;

    for (std::size_t i = 0; i < group.size(); ++i) {
        Coords gi = group.generator(i);
        auto image = apply_embedding(t, group, gi);
        if (antilex_index(image) != group.arch_index(gi))
            report.violations.push_back("archimedean index of generator " + std::to_string(i + 1) + " not preserved");
        if (antilex_sign(image) != group.sign(gi))
            report.violations.push_back("sign of generator " + std::to_string(i + 1) + " not preserved");
        for (std::size_t j = 0; j < i; ++j) {
            Coords d = gi - group.generator(j);
            if (antilex_sign(apply_embedding(t, group, d)) != group.sign(d))
                report.violations.push_back("order of generators " + std::to_string(j + 1) + " and " +
                                            std::to_string(i + 1) + " not preserved");
        }
    }
    return report;
}

SymMatrix embedding_transition(const SymMatrix& t, const SymMatrix& t_prime, const ValueGroup& group) {
    if (group.size() != group.rank()) throw DomainError("embedding transition needs as many generators as classes");
    SymMatrix a = embedding_on_generators(t, group);
    SymMatrix b = embedding_on_generators(t_prime, group);
    // lambda a = b  <=>  a^T lambda^T = b^T
    SymMatrix at = a.transpose();
    SymMatrix bt = b.transpose();
    SymMatrix x = solve<SymbolicReal>(at, bt);
    return x.transpose();
}

}  // namespace hahnlog
