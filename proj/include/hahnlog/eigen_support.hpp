#pragma once

#include "hahnlog/scalars.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<hahnlog::SymbolicReal> : GenericNumTraits<hahnlog::SymbolicReal> {
    typedef hahnlog::SymbolicReal Real;
    typedef hahnlog::SymbolicReal NonInteger;
    typedef hahnlog::SymbolicReal Nested;
    typedef hahnlog::SymbolicReal Literal;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 40,
        MulCost = 100
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    typedef mpq_class Literal;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 20,
        MulCost = 40
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace hahnlog {

using SymMatrix = Eigen::Matrix<SymbolicReal, Eigen::Dynamic, Eigen::Dynamic>;
using SymVector = Eigen::Matrix<SymbolicReal, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline SymVector to_sym_vector(const std::vector<Rational>& v) {
    SymVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = SymbolicReal(v[i]);
    return out;
}

inline bool is_zero(const SymMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

}  // namespace hahnlog
