#pragma once

#include "isores/cli.hpp"

#include <doctest.h>

#include <cmath>

namespace testing {

using namespace isores;

inline const TolerancePolicy kTol{};

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (Complex x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

inline ComplexVector vec(std::initializer_list<Complex> xs) {
    ComplexVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v;
}

/// E1: D(V) = span{e1}, V e1 = e2 on C^2.
inline IsometricOperator e1_operator() {
    return IsometricOperator(mat({{1.0}, {0.0}}), mat({{0.0}, {1.0}}), kTol);
}

/// V = identity on C^1.
inline IsometricOperator identity_c1() {
    return IsometricOperator(mat({{1.0}}), mat({{1.0}}), kTol);
}

/// 2x2 inverse by the adjugate.
inline ComplexMatrix adjugate_inverse(const ComplexMatrix& m) {
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return mat({{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}}) / det;
}

inline ComplexMatrix scalar_c(Complex c) { return mat({{c}}); }

inline double dev(const ComplexMatrix& a, const ComplexMatrix& b) { return max_deviation(a, b); }

inline ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline constexpr Complex I{0.0, 1.0};

}  // namespace testing
