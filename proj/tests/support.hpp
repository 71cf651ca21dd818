#pragma once
// Independent reference computations used by the test binaries.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "raysym/linalg.hpp"

namespace testing_support {

using raysym::Matrix;
using raysym::Scalar;

inline constexpr Scalar I{0.0, 1.0};

inline Matrix conj_if(bool conj, const Matrix& m) { return conj ? Matrix(m.conjugate()) : m; }

/// A h(P) A^{-1}, computed by full-pivot LU.
inline Matrix conjugated(const Matrix& a, bool conj, const Matrix& p) {
    return a * conj_if(conj, p) * a.fullPivLu().inverse();
}

/// min over complex lambda of ||b/||b|| - lambda a/||a|| ||_F.
inline double scalar_gap(const Matrix& b, const Matrix& a) {
    const Matrix bn = b / b.norm();
    const Matrix an = a / a.norm();
    const Scalar lambda = (an.array().conjugate() * bn.array()).sum();
    return (bn - lambda * an).norm();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Matrix rank by counting singular values above tol * sigma_max.
inline Eigen::Index svd_rank(const Matrix& m, double tol = 1e-9) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > tol * s(0) ? 1 : 0;
    return r;
}

inline raysym::Coords coords(std::initializer_list<Scalar> v) {
    raysym::Coords c(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (Scalar s : v) c(i++) = s;
    return c;
}

inline raysym::Vector vec(std::initializer_list<Scalar> v) { return raysym::Vector(coords(v)); }
inline raysym::Functional fun(std::initializer_list<Scalar> v) { return raysym::Functional(coords(v)); }

inline Matrix real_matrix(Eigen::Index n, std::initializer_list<double> rowmajor) {
    Matrix m(n, n);
    Eigen::Index k = 0;
    for (double v : rowmajor) {
        m(k / n, k % n) = v;
        ++k;
    }
    return m;
}

} // namespace testing_support
