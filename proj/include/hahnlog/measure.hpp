#pragma once

// Measures and integrals with values in R[X] u {infinity}.
//
// Integrands are log-power polynomials: finite sums of c * prod_i x_i^r_i
// (log x_i)^k_i with c in R[X]. One-dimensional integration uses the closed
// antiderivatives
//
//   int x^r (log x)^k dx = sum_{b=0}^{k} (-1)^(k-b) k!/b! x^(r+1) (log x)^b / (r+1)^(k-b+1)   (r != -1)
//   int x^-1 (log x)^k dx = (log x)^(k+1) / (k+1)
//
// and evaluates them at the endpoints with log replaced by log_mu. A term
// diverges at 0 iff r <= -1 and at infinity iff r >= -1; a divergent
// integral is reported as infinity. Several divergent terms whose signs are
// mixed or unknown raise IndeterminateCancellation.
//
// Endpoints are 0, infinity, or log-power polynomials in the other variables.
// A bound that is a sum of several terms can only be substituted into
// x^n with n natural (no logarithm); anything else leaves the catalogue.
//
// Files (S-expressions, optional "hahnlog-v1" header):
//   (region (x1 lower upper) (x2 lower upper) ...)   outermost variable first
//   (integral x1 lower upper body)                   nested for iterated integrals
// Bounds are 0, inf, or terms in the outer variables, e.g. (inv x1).

#include "hahnlog/constructible.hpp"
#include "hahnlog/logarithm.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hahnlog {

struct LogPowerKey {
    std::vector<Rational> r;
    std::vector<unsigned> k;

    bool is_one() const;
    friend bool operator<(const LogPowerKey& a, const LogPowerKey& b);
    friend bool operator==(const LogPowerKey& a, const LogPowerKey& b) { return a.r == b.r && a.k == b.k; }
};

class LogPowerPoly {
public:
    LogPowerPoly(GroupPtr group, std::size_t nvars);
    static LogPowerPoly constant(const PolyElem& c, std::size_t nvars);
    /// x_i (0-based i).
    static LogPowerPoly variable(GroupPtr group, std::size_t nvars, std::size_t i);
    /// log x_i.
    static LogPowerPoly log_variable(GroupPtr group, std::size_t nvars, std::size_t i);
    static LogPowerPoly term(const PolyElem& c, LogPowerKey key);

    const GroupPtr& group() const noexcept { return group_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const std::map<LogPowerKey, PolyElem>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    PolyElem constant_value() const;
    bool depends_on(std::size_t i) const;
    bool is_single_term() const noexcept { return terms_.size() == 1; }
    bool is_log_free() const;

    LogPowerPoly& operator+=(const LogPowerPoly& o);
    LogPowerPoly& operator-=(const LogPowerPoly& o);
    friend LogPowerPoly operator+(LogPowerPoly a, const LogPowerPoly& b) { return a += b; }
    friend LogPowerPoly operator-(LogPowerPoly a, const LogPowerPoly& b) { return a -= b; }
    friend LogPowerPoly operator*(const LogPowerPoly& a, const LogPowerPoly& b);
    friend LogPowerPoly operator-(const LogPowerPoly& a);
    LogPowerPoly scaled(const PolyElem& c) const;

    std::string to_string() const;

private:
    void add_term(const LogPowerKey& key, const PolyElem& c);
    GroupPtr group_;
    std::size_t nvars_;
    std::map<LogPowerKey, PolyElem> terms_;
};

LogPowerPoly power(const LogPowerPoly& p, unsigned n);

/// c x^r (log x)^k in one variable.
struct LogPowerTerm {
    PolyElem c;
    Rational r;
    unsigned k{0};
};

/// Closed antiderivative; differentiating the result gives t back.
std::vector<LogPowerTerm> antiderivative(const LogPowerTerm& t);

struct Endpoint {
    enum class Kind { Zero, Infinity, Value };
    Kind kind{Kind::Zero};
    std::optional<LogPowerPoly> value;

    static Endpoint zero() { return {}; }
    static Endpoint infinity() { return {Kind::Infinity, std::nullopt}; }
    static Endpoint of(const LogPowerPoly& v);
    static Endpoint constant(const HahnSeries& v, std::size_t nvars);
    bool depends_on(std::size_t i) const { return value && value->depends_on(i); }
    std::string to_string() const;
};

/// bounds[i] = (lower, upper) of x_{i+1}.
struct Region {
    GroupPtr group;
    std::vector<std::pair<Endpoint, Endpoint>> bounds;

    std::size_t nvars() const noexcept { return bounds.size(); }
    std::string to_string() const;
};

/// Integral of f over x_i from lo to hi; nullopt when it diverges.
std::optional<LogPowerPoly> integrate_variable(const LogDatum& mu, const LogPowerPoly& f, std::size_t i,
                                               const Endpoint& lo, const Endpoint& hi, const SeriesContext& ctx = {});

PolyOrInfinity integrate_1d(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lo, const Endpoint& hi,
                            const SeriesContext& ctx = {});

/// Iterated integral; `order` lists variables (0-based) innermost first.
/// The default order integrates the last variable first.
PolyOrInfinity integrate_region(const LogDatum& mu, const LogPowerPoly& f, const Region& region,
                                std::vector<std::size_t> order = {}, const SeriesContext& ctx = {});

PolyOrInfinity measure_region(const LogDatum& mu, const Region& region, const SeriesContext& ctx = {});

struct IntegrabilityResult {
    bool integrable{false};
    std::optional<PolyElem> value;
};

IntegrabilityResult integrate_constructible(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lo,
                                            const Endpoint& hi, const SeriesContext& ctx = {});

struct FubiniReport {
    PolyOrInfinity inner_last;   // last variable integrated first
    PolyOrInfinity inner_first;  // first variable integrated first
    bool agree{false};
};

FubiniReport fubini_check(const LogDatum& mu, const LogPowerPoly& f, const Region& region, const SeriesContext& ctx = {});

struct FinReport {
    std::string condition;
    std::vector<bool> integrable;
};

/// Integrability of int_lower^a f(x) dx for each sample upper bound a.
FinReport fin_parametric(const LogDatum& mu, const LogPowerPoly& f, const Endpoint& lower,
                         const std::vector<Endpoint>& samples, const SeriesContext& ctx = {});

/// A term in x1..x_nvars as a log-power polynomial; OutOfCatalogue otherwise.
LogPowerPoly to_log_power(const LogDatum& mu, const ExprPtr& e, std::size_t nvars, const SeriesContext& ctx = {});

Endpoint parse_endpoint(const LogDatum& mu, const SExpr& e, std::size_t nvars, const SeriesContext& ctx = {});

Region parse_region(const LogDatum& mu, std::string_view text, const SeriesContext& ctx = {});

struct IntegralProblem {
    LogPowerPoly integrand;
    Region region;
    std::vector<std::size_t> order;  // innermost first
};

IntegralProblem parse_integral(const LogDatum& mu, std::string_view text, const SeriesContext& ctx = {});

}  // namespace hahnlog
