#pragma once

#include <Eigen/Core>

#include "npk/complex.hpp"
#include "npk/enclosure.hpp"
#include "npk/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<npk::Rational> : GenericNumTraits<npk::Rational> {
    typedef npk::Rational Real;
    typedef npk::Rational NonInteger;
    typedef npk::Rational Nested;
    typedef npk::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40
    };
    static Real epsilon() { return Real(0); }
    static Real dummy_precision() { return Real(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<npk::Enclosure> : GenericNumTraits<npk::Enclosure> {
    typedef npk::Enclosure Real;
    typedef npk::Enclosure NonInteger;
    typedef npk::Enclosure Nested;
    typedef npk::Enclosure Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 60
    };
    static Real epsilon() { return Real(); }
    static Real dummy_precision() { return Real(); }
    static int digits10() { return 0; }
};

template <class S>
struct NumTraits<npk::Cx<S>> : GenericNumTraits<npk::Cx<S>> {
    typedef S Real;
    typedef npk::Cx<S> NonInteger;
    typedef npk::Cx<S> Nested;
    typedef npk::Cx<S> Literal;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 80,
        MulCost = 240
    };
    static Real epsilon() { return Real(); }
    static Real dummy_precision() { return Real(); }
    static int digits10() { return 0; }
};

}  // namespace Eigen

namespace npk {

using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatE = Eigen::Matrix<Enclosure, Eigen::Dynamic, Eigen::Dynamic>;
using VecE = Eigen::Matrix<Enclosure, Eigen::Dynamic, 1>;
using MatCE = Eigen::Matrix<CxE, Eigen::Dynamic, Eigen::Dynamic>;
using VecCE = Eigen::Matrix<CxE, Eigen::Dynamic, 1>;
using MatCQ = Eigen::Matrix<CxQ, Eigen::Dynamic, Eigen::Dynamic>;

inline MatE to_enclosure(const MatQ& m, long bits) {
    MatE r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r(i, j) = Enclosure::from_rational(m(i, j), bits);
    return r;
}

}  // namespace npk
