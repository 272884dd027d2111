#pragma once

// Logarithmic data mu = (s, tau) and the mu-logarithm
//
//     log_mu(x) = -<tau(v(x)), X> + log(x / s(v(x)))
//
// with values in the ordered ring R[X_1, ..., X_l]. A connection between two
// data is the affine substitution X -> M X + g, fixing R, that carries log_mu
// to log_mu'. On a generator image s(g_i) the logarithm is purely linear,
// so the connection is forced by
//
//     tau(g_i)^T M = tau'(g_i)^T,      <tau(g_i), g> = log(s'(g_i) / s(g_i)),
//
// which is solved exactly on a maximal independent set of generators and then
// checked on every generator. When the group has more generators than
// archimedean classes the system can be inconsistent; the failing equation is
// returned as a witness.

#include "hahnlog/hahnfield.hpp"
#include "hahnlog/polyring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hahnlog {

/// A section given on generators: images[i] is s(g_i).
class Section {
public:
    Section(GroupPtr group, std::vector<HahnSeries> images);
    /// t^(g_i) for every generator.
    static Section canonical(GroupPtr group);

    const GroupPtr& group() const noexcept { return group_; }
    const std::vector<HahnSeries>& images() const noexcept { return images_; }

    /// s(gamma) = prod s(g_i)^(c_i).
    HahnSeries apply(const Coords& gamma, const SeriesContext& ctx = {}) const;

private:
    GroupPtr group_;
    std::vector<HahnSeries> images_;
};

class LogDatum {
public:
    LogDatum(Section section, SymMatrix embedding);
    /// Canonical section and tau = identity.
    static LogDatum canonical(GroupPtr group);

    const GroupPtr& group() const noexcept { return section_.group(); }
    const Section& section() const noexcept { return section_; }
    const SymMatrix& embedding() const noexcept { return tau_; }
    std::string to_string() const;

private:
    Section section_;
    SymMatrix tau_;
};

HahnSeries section_apply(const LogDatum& mu, const Coords& gamma, const SeriesContext& ctx = {});

PolyElem log_mu(const LogDatum& mu, const HahnSeries& x, const SeriesContext& ctx = {});

/// x with log_mu(x) = target, for target = <c, X> + g, c in tau(Gamma), v(g) >= 0.
HahnSeries log_mu_preimage(const LogDatum& mu, const PolyElem& target, const SeriesContext& ctx = {});

/// X_k -> sum_j M(k, j) X_j + g_k.
struct AffineMap {
    SymMatrix m;
    std::vector<HahnSeries> g;

    static AffineMap identity(const GroupPtr& group);
    std::string to_string() const;
};

/// Lower triangular with positive diagonal, and g in O_R^l.
std::vector<std::string> affine_shape_violations(const AffineMap& phi);

PolyElem apply_connection(const AffineMap& phi, const PolyElem& p);

/// outer o inner.
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// Same matrix and the same displayed terms of g.
bool equal_to_precision(const AffineMap& a, const AffineMap& b);

struct ConnectionResult {
    std::optional<AffineMap> map;
    std::string witness;              // set when not equivalent
    std::vector<std::string> checks;  // verification log
    std::uint64_t seed{0};

    bool equivalent() const noexcept { return map.has_value(); }
};

ConnectionResult connection(const LogDatum& mu, const LogDatum& mu_prime, std::uint64_t seed = 0,
                            const SeriesContext& ctx = {});

}  // namespace hahnlog
