#include "raysym/linalg.hpp"

#include <cmath>
#include <string>

namespace raysym {

std::string_view to_string(ScalarField field) {
    return field == ScalarField::Real ? "real" : "complex";
}

std::string_view to_string(Automorphism tag) {
    return tag == Automorphism::Identity ? "id" : "conj";
}

void validate(ScalarField field, Automorphism tag) {
    if (field == ScalarField::Real && tag == Automorphism::Conjugation) {
        throw InvalidAutomorphism("conjugation is not an automorphism of the real field");
    }
}

Scalar apply_auto(Automorphism tag, Scalar value) {
    return tag == Automorphism::Identity ? value : std::conj(value);
}

Coords apply_auto(Automorphism tag, const Coords& values) {
    return tag == Automorphism::Identity ? values : Coords(values.conjugate());
}

Matrix apply_auto(Automorphism tag, const Matrix& values) {
    return tag == Automorphism::Identity ? values : Matrix(values.conjugate());
}

Automorphism compose(Automorphism outer, Automorphism inner) {
    return outer == inner ? Automorphism::Identity : Automorphism::Conjugation;
}

namespace {

Coords unit(Eigen::Index n, Eigen::Index j) {
    if (j < 0 || j >= n) {
        throw DimensionMismatch("basis index " + std::to_string(j) + " outside dimension " + std::to_string(n));
    }
    return Coords::Unit(n, j);
}

} // namespace

Vector basis_vector(Eigen::Index n, Eigen::Index j) {
    return Vector(unit(n, j));
}

Functional basis_functional(Eigen::Index n, Eigen::Index j) {
    return Functional(unit(n, j));
}

bool is_real(const Matrix& m) {
    return (m.imag().array() == 0.0).all();
}

bool is_real(const Coords& v) {
    return (v.imag().array() == 0.0).all();
}

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

double inverse_condition(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    const double largest = s(0);
    if (largest == 0.0) return 0.0;
    return s(s.size() - 1) / largest;
}

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " does not match " + std::to_string(b));
    }
}

SemilinearOperator::SemilinearOperator(Matrix matrix, Automorphism tag, ScalarField field)
    : matrix_(std::move(matrix)), auto_(tag), field_(field) {
    validate(field_, auto_);
    require_same_size(matrix_.rows(), matrix_.cols(), "semilinear operator");
    if (!all_finite(matrix_)) throw SingularOperator("operator has non-finite entries");
    if (field_ == ScalarField::Real && !is_real(matrix_)) {
        throw InvalidAutomorphism("complex entries in an operator over the real field");
    }
    if (inverse_condition(matrix_) <= kSingularTolerance) {
        throw SingularOperator("operator is not invertible");
    }
}

SemilinearOperator SemilinearOperator::identity(Eigen::Index n, ScalarField field) {
    return {Matrix::Identity(n, n), Automorphism::Identity, field};
}

SemilinearOperator SemilinearOperator::inverse() const {
    // M h(x) = y  =>  x = h(M^{-1} y) = h(M^{-1}) h(y)
    Matrix inv = matrix_.partialPivLu().inverse();
    return {apply_auto(auto_, inv), auto_, field_};
}

Scalar pair(const Vector& x, const Functional& f) {
    require_same_size(x.size(), f.size(), "pair");
    return (x.coords.array() * f.coords.array()).sum();
}

Matrix tensor(const Vector& x, const Functional& f) {
    require_same_size(x.size(), f.size(), "tensor");
    return x.coords * f.coords.transpose();
}

Vector apply(const SemilinearOperator& a, const Vector& x) {
    require_same_size(a.dim(), x.size(), "apply");
    return Vector(a.matrix() * apply_auto(a.automorphism(), x.coords));
}

Functional apply(const SemilinearOperator& a, const Functional& f) {
    require_same_size(a.dim(), f.size(), "apply");
    return Functional(a.matrix() * apply_auto(a.automorphism(), f.coords));
}

SemilinearOperator adjoint(const SemilinearOperator& a) {
    // Linear: (A'f)(x) = f(Ax), coordinates M^T f.
    // Conjugate-linear: A'f = conj(f o A), coordinates conj(M)^T conj(f).
    Matrix realized = apply_auto(a.automorphism(), a.matrix()).transpose();
    return {std::move(realized), a.automorphism(), a.field()};
}

SemilinearOperator compose(const SemilinearOperator& outer, const SemilinearOperator& inner) {
    require_same_size(outer.dim(), inner.dim(), "compose");
    Matrix m = outer.matrix() * apply_auto(outer.automorphism(), inner.matrix());
    ScalarField field = outer.field() == ScalarField::Real && inner.field() == ScalarField::Real
                            ? ScalarField::Real
                            : ScalarField::Complex;
    return {std::move(m), compose(outer.automorphism(), inner.automorphism()), field};
}

Scalar trace(const Matrix& a) {
    require_same_size(a.rows(), a.cols(), "trace");
    return a.trace();
}

namespace {

double default_tol(const Eigen::JacobiSVD<Matrix>& svd, double tol) {
    if (tol >= 0.0) return tol;
    const auto& s = svd.singularValues();
    return s.size() == 0 ? 0.0 : kRankTolerance * s(0);
}

Eigen::Index numerical_rank(const Eigen::VectorXd& s, double tol) {
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol) ++r;
    return r;
}

} // namespace

KernelRange kernel_and_range(const Matrix& a, double tol) {
    require_same_size(a.rows(), a.cols(), "kernel_and_range");
    const Eigen::Index n = a.rows();
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index r = numerical_rank(svd.singularValues(), default_tol(svd, tol));
    return {svd.matrixV().rightCols(n - r), svd.matrixU().leftCols(r)};
}

Matrix column_space(const Matrix& m, double tol) {
    if (m.cols() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
    const Eigen::Index r = numerical_rank(svd.singularValues(), default_tol(svd, tol));
    return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double tol) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::Index r = numerical_rank(svd.singularValues(), default_tol(svd, tol));
    return svd.matrixV().rightCols(n - r);
}

Matrix projector(const Matrix& orthonormal_basis) {
    return orthonormal_basis * orthonormal_basis.adjoint();
}

} // namespace raysym
