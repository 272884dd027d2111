#include "hahnlog/rational.hpp"

#include "hahnlog/errors.hpp"

#include <algorithm>
#include <cctype>

namespace hahnlog {

namespace {

Integer pow2(unsigned long bits) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
    return r;
}

Rational pow2q(long bits) {
    if (bits >= 0) return Rational(pow2(static_cast<unsigned long>(bits)));
    return Rational(Integer(1), pow2(static_cast<unsigned long>(-bits)));
}

long bit_length(const Integer& z) {
    if (z == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw ParseError("malformed rational '" + s + "'", 0, s.size()); };
    if (s.empty()) fail();
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0) fail();
        std::string d = s.substr(slash + 1);
        if (!d.empty() && d[0] == '+') d.erase(0, 1);
        if (den.set_str(d, 10) != 0 || den == 0) fail();
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    std::size_t epos = s.find_first_of("eE");
    long exp10 = 0;
    std::string mant = s;
    if (epos != std::string::npos) {
        try {
            exp10 = std::stol(s.substr(epos + 1));
        } catch (...) {
            fail();
        }
        mant = s.substr(0, epos);
    }
    std::size_t dot = mant.find('.');
    if (dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        mant = mant.substr(0, dot) + frac;
        exp10 -= static_cast<long>(frac.size());
    }
    if (mant == "-" || mant == "+" || mant.empty()) fail();
    if (mant[0] == '+') mant.erase(0, 1);
    Integer num;
    if (num.set_str(mant, 10) != 0) fail();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational pow_int(const Rational& base, long exponent) {
    Rational result(1);
    Integer num, den;
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    result = exponent >= 0 ? Rational(num, den) : Rational(den, num);
    result.canonicalize();
    return result;
}

std::vector<std::pair<Integer, long>> factorize(const Integer& n) {
    if (n <= 0) throw DomainError("factorize: argument must be positive");
    std::vector<std::pair<Integer, long>> out;
    Integer m = n;
    auto take = [&](const Integer& p) {
        long e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    take(Integer(2));
    take(Integer(3));
    for (Integer p = 5; p * p <= m; p += 6) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 2) break;
        take(p);
        Integer p2 = p + 2;
        take(p2);
    }
    if (m > 1) out.emplace_back(m, 1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Integer floor_root(const Integer& n, unsigned long q) {
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), q);
    return r;
}

Interval Interval::rounded(long bits) const {
    Rational scale = pow2q(bits);
    Rational a = lo * scale;
    Rational b = hi * scale;
    return Interval(Rational(floor_of(a)) / scale, Rational(ceil_of(b)) / scale);
}

Interval Interval::intersect(const Interval& o) const {
    Interval r(std::max(lo, o.lo), std::min(hi, o.hi));
    if (r.lo > r.hi) return *this;  // disjoint enclosures cannot happen for sound inputs
    return r;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator*(const Rational& c, const Interval& a) {
    if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

Interval pow(const Interval& a, unsigned long n) {
    Interval r(Rational(1));
    for (unsigned long i = 0; i < n; ++i) r = r * a;
    if (n % 2 == 0 && n > 0 && a.contains_zero()) r.lo = 0;
    return r;
}

namespace enclosure {

namespace {

// atanh(z) for 0 <= z <= 1/3 as an interval of width <= 2^-bits.
Interval atanh_small(const Rational& z, long bits) {
    if (z == 0) return Interval(Rational(0));
    Rational eps = pow2q(-(bits + 4));
    Rational z2 = z * z;
    Rational power = z;
    Rational sum = 0;
    for (unsigned long n = 0;; ++n) {
        sum += power / Rational(2 * n + 1);
        power *= z2;
        Rational tail = power / (Rational(2 * n + 3) * (1 - z2));
        if (tail <= eps) return Interval(sum, sum + tail).rounded(bits + 2);
    }
}

}  // namespace

Interval log(const Rational& x, long bits) {
    if (sgn(x) <= 0) throw DomainError("log enclosure of a non-positive rational");
    if (x == 1) return Interval(Rational(0));
    long k = bit_length(x.get_num()) - bit_length(x.get_den());
    Rational y = x / pow2q(k);
    while (y >= 2) {
        y /= 2;
        ++k;
    }
    while (y < 1) {
        y *= 2;
        --k;
    }
    long extra = 4 + bit_length(Integer(k < 0 ? -k : k));
    for (long b = bits + extra;; b += 32) {
        Interval ly = Rational(2) * atanh_small((y - 1) / (y + 1), b);
        Interval r = ly;
        if (k != 0) r = r + Rational(2 * k) * atanh_small(Rational(1, 3), b);
        r = r.rounded(bits + 2);
        if (r.width() <= pow2q(-bits)) return r;
    }
}

Interval exp(const Rational& x, long bits) {
    if (x == 0) return Interval(Rational(1));
    Rational ax = abs(x);
    long m = std::max<long>(0, bit_length(ceil_of(ax)) + 1);
    Rational y = x / pow2q(m);
    // log2(e^|x|) < 2|x|
    long magnitude = 2 * ceil_of(ax).get_si() + 2;
    for (long b = bits + m + magnitude + 8;; b += 32) {
        Rational eps = pow2q(-(b + 4));
        Rational term(1), sum(0);
        for (unsigned long j = 0;; ++j) {
            sum += term;
            term = term * y / Rational(j + 1);
            Rational tail = 2 * abs(term);
            if (tail <= eps) {
                Interval r = Interval(sum - tail, sum + tail).rounded(b);
                for (long i = 0; i < m; ++i) r = (r * r).rounded(b);
                r = r.rounded(bits + 2);
                if (r.width() <= pow2q(-bits)) return r;
                break;
            }
        }
    }
}

Interval rpow(const Rational& x, const Rational& e, long bits) {
    if (sgn(x) <= 0) throw DomainError("rpow enclosure of a non-positive base");
    Integer p = e.get_num();
    Integer q = e.get_den();
    Rational xp = pow_int(x, p.get_si());
    if (q == 1) return Interval(xp);
    const Integer& u = xp.get_num();
    const Integer& v = xp.get_den();
    unsigned long qq = q.get_ui();
    long B = std::max<long>(bits, 1) + 2;
    Integer vq1;
    mpz_pow_ui(vq1.get_mpz_t(), v.get_mpz_t(), qq - 1);
    Integer scaled = u * vq1;
    Integer shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), 2, static_cast<unsigned long>(B) * qq);
    scaled *= shift;
    Integer r = floor_root(scaled, qq);
    Integer den = v * pow2(static_cast<unsigned long>(B));
    Integer rq;
    mpz_pow_ui(rq.get_mpz_t(), r.get_mpz_t(), qq);
    Rational lo(r, den);
    lo.canonicalize();
    if (rq == scaled) return Interval(lo);
    Rational hi(r + 1, den);
    hi.canonicalize();
    return Interval(lo, hi);
}

Interval rpow(const Interval& x, const Rational& e, long bits) {
    if (sgn(x.lo) <= 0) throw DomainError("rpow enclosure of an interval that is not positive");
    if (sgn(e) >= 0) return Interval(rpow(x.lo, e, bits).lo, rpow(x.hi, e, bits).hi);
    return Interval(rpow(x.hi, e, bits).lo, rpow(x.lo, e, bits).hi);
}

}  // namespace enclosure

}  // namespace hahnlog
