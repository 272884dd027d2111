#include "hahnlog/logarithm.hpp"

#include "hahnlog/errors.hpp"
#include "hahnlog/linalg.hpp"

#include <map>
#include <random>

namespace hahnlog {

namespace {

std::string matrix_text(const SymMatrix& m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).to_string();
        out += "]";
    }
    return out + "]";
}

PolyElem scalar_times_variable(const GroupPtr& group, const SymbolicReal& c, std::size_t k) {
    MultiIndex alpha(group->rank(), 0);
    alpha[k] = 1;
    return PolyElem::monomial(HahnSeries::constant(group, c), alpha);
}

}  // namespace

Section::Section(GroupPtr group, std::vector<HahnSeries> images) : group_(std::move(group)), images_(std::move(images)) {
    if (!group_) throw DomainError("section needs a value group");
    if (images_.size() != group_->size())
        throw DomainError("section needs " + std::to_string(group_->size()) + " generator images");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const HahnSeries& x = images_[i];
        if (x.group() != group_) throw DomainError("section image over a different value group");
        if (x.is_exact_zero() || !x.has_visible_term())
            throw DomainError("section image s(g_" + std::to_string(i + 1) + ") has no leading term");
        if (x.valuation() != group_->generator(i))
            throw DomainError("section image s(g_" + std::to_string(i + 1) + ") = " + x.to_string() + " has the wrong valuation");
        if (sign(x) <= 0) throw DomainError("section image s(g_" + std::to_string(i + 1) + ") is not positive");
    }
}

Section Section::canonical(GroupPtr group) {
    std::vector<HahnSeries> images;
    for (std::size_t i = 0; i < group->size(); ++i)
        images.push_back(HahnSeries::monomial(group, SymbolicReal(1), group->generator(i)));
    return Section(group, std::move(images));
}

HahnSeries Section::apply(const Coords& gamma, const SeriesContext& ctx) const {
    if (gamma.size() != images_.size()) throw DomainError("section: element has the wrong number of coordinates");
    HahnSeries out = HahnSeries::constant(group_, SymbolicReal(1));
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (sgn(gamma[i]) == 0) continue;
        out *= gamma[i] == 1 ? images_[i] : power_rational(images_[i], gamma[i], ctx);
    }
    return out;
}

LogDatum::LogDatum(Section section, SymMatrix embedding) : section_(std::move(section)), tau_(std::move(embedding)) {
    auto l = static_cast<Eigen::Index>(group()->rank());
    if (tau_.rows() != l || tau_.cols() != l) throw DomainError("embedding must be " + std::to_string(l) + " x " + std::to_string(l));
    EmbeddingReport report = validate_embedding(tau_, *group());
    if (!report) throw DomainError("invalid embedding: " + report.to_string());
}

LogDatum LogDatum::canonical(GroupPtr group) {
    auto l = static_cast<Eigen::Index>(group->rank());
    SymMatrix id(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < l; ++j) id(i, j) = SymbolicReal(i == j ? 1 : 0);
    return LogDatum(Section::canonical(group), id);
}

std::string LogDatum::to_string() const {
    std::string out = "section [";
    for (std::size_t i = 0; i < section_.images().size(); ++i) out += (i ? "; " : "") + section_.images()[i].to_string();
    return out + "], embedding " + matrix_text(tau_);
}

HahnSeries section_apply(const LogDatum& mu, const Coords& gamma, const SeriesContext& ctx) {
    return mu.section().apply(gamma, ctx);
}

PolyElem log_mu(const LogDatum& mu, const HahnSeries& x, const SeriesContext& ctx) {
    if (x.group() != mu.group()) throw DomainError("log_mu: series over a different value group");
    if (x.is_exact_zero()) throw NonPositiveLeading("log_mu of 0");
    const Coords v = x.valuation();
    if (sign(x.leading().coef) <= 0) throw NonPositiveLeading("log_mu needs a positive argument, got " + x.to_string());
    HahnSeries unit = x * section_apply(mu, -v, ctx);
    PolyElem out(partial_log(unit, ctx));
    auto c = apply_embedding(mu.embedding(), *mu.group(), v);
    for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) out -= scalar_times_variable(mu.group(), c[k], k);
    return out;
}

HahnSeries log_mu_preimage(const LogDatum& mu, const PolyElem& target, const SeriesContext& ctx) {
    const GroupPtr& group = mu.group();
    if (target.group() != group) throw DomainError("preimage: polynomial over a different value group");
    if (target.degree() > 1) throw NotInImage(target.to_string() + " is not of degree <= 1");
    const std::size_t l = group->rank();
    std::vector<SymbolicReal> c(l);
    for (std::size_t k = 0; k < l; ++k) {
        MultiIndex alpha(l, 0);
        alpha[k] = 1;
        HahnSeries a = target.coefficient(alpha);
        if (a.is_exact_zero()) continue;
        if (!a.is_constant()) throw NotInImage("coefficient of X" + std::to_string(k + 1) + " is not a real constant");
        c[k] = a.terms()[0].coef;
    }
    const SymMatrix& t = mu.embedding();
    std::vector<SymbolicReal> r(l);
    for (std::size_t k = l; k-- > 0;) {
        SymbolicReal acc = c[k];
        for (std::size_t j = k + 1; j < l; ++j)
            acc -= t(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * r[j];
        auto q = try_divide(acc, t(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
        if (!q) throw NotInImage("linear part of " + target.to_string() + " is not in tau(Gamma)");
        r[k] = *q;
    }
    auto gamma = group->coordinates_of(r);
    if (!gamma) throw NotInImage("linear part of " + target.to_string() + " is not in tau(Gamma)");
    HahnSeries g = target.constant_part();
    auto vb = g.valuation_bound();
    if (vb && group->sign(*vb) < 0) throw NotInImage("constant part " + g.to_string() + " is not bounded");
    return section_apply(mu, -*gamma, ctx) * partial_exp(g, ctx);
}

AffineMap AffineMap::identity(const GroupPtr& group) {
    auto l = static_cast<Eigen::Index>(group->rank());
    AffineMap phi;
    phi.m = SymMatrix(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < l; ++j) phi.m(i, j) = SymbolicReal(i == j ? 1 : 0);
    phi.g.assign(static_cast<std::size_t>(l), HahnSeries(group));
    return phi;
}

std::string AffineMap::to_string() const {
    std::string out = "M = " + matrix_text(m) + "; g = [";
    for (std::size_t k = 0; k < g.size(); ++k) out += (k ? ", " : "") + g[k].to_string();
    return out + "]";
}

std::vector<std::string> affine_shape_violations(const AffineMap& phi) {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < phi.m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < phi.m.cols(); ++j)
            if (!phi.m(i, j).is_zero())
                out.push_back("M(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + phi.m(i, j).to_string() +
                              " above the diagonal");
    for (Eigen::Index i = 0; i < phi.m.rows(); ++i)
        if (sign(phi.m(i, i)) <= 0)
            out.push_back("diagonal entry M(" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ") is not positive");
    for (std::size_t k = 0; k < phi.g.size(); ++k) {
        auto vb = phi.g[k].valuation_bound();
        if (vb && phi.g[k].group()->sign(*vb) < 0) out.push_back("g_" + std::to_string(k + 1) + " is not in O_R");
    }
    return out;
}

PolyElem apply_connection(const AffineMap& phi, const PolyElem& p) {
    const GroupPtr& group = p.group();
    const std::size_t l = group->rank();
    std::vector<PolyElem> images;
    for (std::size_t k = 0; k < l; ++k) {
        PolyElem y(phi.g.at(k));
        for (std::size_t j = 0; j < l; ++j) {
            const SymbolicReal& mkj = phi.m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
            if (!mkj.is_zero()) y += scalar_times_variable(group, mkj, j);
        }
        images.push_back(std::move(y));
    }
    std::map<std::pair<std::size_t, unsigned>, PolyElem> powers;
    auto power_of = [&](std::size_t k, unsigned e) -> const PolyElem& {
        auto key = std::make_pair(k, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, power(images[k], e)).first;
        return it->second;
    };
    PolyElem out(group);
    for (const auto& [alpha, c] : p.terms()) {
        PolyElem term(c);
        for (std::size_t k = 0; k < l; ++k)
            if (alpha[k]) term *= power_of(k, alpha[k]);
        out += term;
    }
    return out;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    AffineMap out;
    out.m = multiply<SymbolicReal>(inner.m, outer.m);
    for (std::size_t k = 0; k < inner.g.size(); ++k) {
        HahnSeries acc = inner.g[k];
        for (std::size_t j = 0; j < outer.g.size(); ++j)
            acc += outer.g[j] * inner.m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        out.g.push_back(std::move(acc));
    }
    return out;
}

bool equal_to_precision(const AffineMap& a, const AffineMap& b) {
    if (a.m.rows() != b.m.rows() || a.m.cols() != b.m.cols() || a.g.size() != b.g.size()) return false;
    for (Eigen::Index i = 0; i < a.m.rows(); ++i)
        for (Eigen::Index j = 0; j < a.m.cols(); ++j)
            if (a.m(i, j) != b.m(i, j)) return false;
    for (std::size_t k = 0; k < a.g.size(); ++k)
        if (!equal_to_precision(a.g[k], b.g[k])) return false;
    return true;
}

namespace {

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
    std::uniform_int_distribution<long> num(lo * max_den, hi * max_den);
    std::uniform_int_distribution<long> den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

Coords random_positive_element(const ValueGroup& group, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    std::uniform_int_distribution<long> mult(1, 3);
    Coords g = group.generator(pick(rng));
    Coords out = Rational(mult(rng)) * g;
    return group.sign(out) > 0 ? out : -out;
}

HahnSeries random_unit(const GroupPtr& group, std::mt19937_64& rng) {
    HahnSeries u = HahnSeries::constant(group, SymbolicReal(random_rational(rng, 1, 6, 3) + Rational(1, 7)));
    for (int j = 0; j < 2; ++j) {
        Rational b = random_rational(rng, -3, 3, 4);
        if (sgn(b) == 0) continue;
        u += HahnSeries::monomial(group, SymbolicReal(b), random_positive_element(*group, rng));
    }
    return u;
}

}  // namespace

ConnectionResult connection(const LogDatum& mu, const LogDatum& mu_prime, std::uint64_t seed, const SeriesContext& ctx) {
    const GroupPtr& group = mu.group();
    if (mu_prime.group() != group) throw DomainError("connection: data over different value groups");
    const auto l = static_cast<Eigen::Index>(group->rank());
    const std::size_t m = group->size();

    ConnectionResult result;
    result.seed = seed;

    SymMatrix a = embedding_on_generators(mu.embedding(), *group).transpose();
    SymMatrix a_prime = embedding_on_generators(mu_prime.embedding(), *group).transpose();
    std::vector<Eigen::Index> rows = independent_rows<SymbolicReal>(a);
    if (static_cast<Eigen::Index>(rows.size()) < l)
        throw DomainError("connection: the generators do not span all " + std::to_string(l) + " archimedean classes");

    SymMatrix ap(l, l), ap_prime(l, l), id(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < l; ++j) {
            ap(i, j) = a(rows[static_cast<std::size_t>(i)], j);
            ap_prime(i, j) = a_prime(rows[static_cast<std::size_t>(i)], j);
            id(i, j) = SymbolicReal(i == j ? 1 : 0);
        }

    AffineMap phi;
    phi.m = solve<SymbolicReal>(ap, ap_prime);
    SymMatrix inv = solve<SymbolicReal>(ap, id);
    std::vector<HahnSeries> h;
    for (Eigen::Index i = 0; i < l; ++i) {
        auto gi = static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]);
        const HahnSeries& s = mu.section().images()[gi];
        const HahnSeries& s_prime = mu_prime.section().images()[gi];
        h.push_back(partial_log(s_prime * invert(s, ctx), ctx));
    }
    for (Eigen::Index k = 0; k < l; ++k) {
        HahnSeries acc(group);
        for (Eigen::Index j = 0; j < l; ++j)
            if (!inv(k, j).is_zero()) acc += h[static_cast<std::size_t>(j)] * inv(k, j);
        phi.g.push_back(std::move(acc));
    }

    for (std::size_t i = 0; i < m; ++i) {
        const HahnSeries& b = mu.section().images()[i];
        PolyElem lhs = apply_connection(phi, log_mu(mu, b, ctx));
        PolyElem rhs = log_mu(mu_prime, b, ctx);
        std::string label = "generator " + std::to_string(i + 1) + ": Phi(log_mu(s(g_" + std::to_string(i + 1) +
                            "))) = " + lhs.to_string() + ", log_mu'(s(g_" + std::to_string(i + 1) + ")) = " + rhs.to_string();
        if (!equal_to_precision(lhs, rhs)) {
            result.witness = label;
            result.checks.push_back(label + " [fails]");
            return result;
        }
        result.checks.push_back(label + " [ok]");
    }

    auto shape = affine_shape_violations(phi);
    if (!shape.empty()) {
        std::string msg;
        for (const auto& s : shape) msg += (msg.empty() ? "" : "; ") + s;
        throw DomainError("connection has an invalid shape: " + msg);
    }
    result.checks.push_back("shape: M lower triangular with positive diagonal, g in O_R [ok]");

    std::mt19937_64 rng(seed);
    for (int n = 0; n < 5; ++n) {
        HahnSeries u = random_unit(group, rng);
        PolyElem lhs = apply_connection(phi, log_mu(mu, u, ctx));
        PolyElem rhs = log_mu(mu_prime, u, ctx);
        bool ok = equal_to_precision(lhs, rhs);
        result.checks.push_back("unit sample " + std::to_string(n + 1) + " " + u.to_string() + (ok ? " [ok]" : " [fails]"));
        if (!ok) throw DomainError("connection fails on the unit " + u.to_string());
    }
    result.map = std::move(phi);
    return result;
}

}  // namespace hahnlog
