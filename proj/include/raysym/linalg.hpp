#pragma once

// Dense real/complex linear algebra substrate.
//
// Every scalar is stored as std::complex<double>; the ScalarField tag records
// whether a computation lives over R (all imaginary parts zero) or C.
// Functionals are coordinate arrays paired with vectors bilinearly,
// <x,f> = sum_j x_j f_j, matching the Banach-space duality f(x).

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "raysym/errors.hpp"

namespace raysym {

using Scalar = std::complex<double>;
using Coords = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class ScalarField { Real, Complex };

/// Ring automorphisms of the scalar field that admit a numerical representation.
enum class Automorphism { Identity, Conjugation };

std::string_view to_string(ScalarField field);
std::string_view to_string(Automorphism tag);

inline constexpr double kSingularTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-9;

/// Throws InvalidAutomorphism for Conjugation over R.
void validate(ScalarField field, Automorphism tag);

Scalar apply_auto(Automorphism tag, Scalar value);
Coords apply_auto(Automorphism tag, const Coords& values);
Matrix apply_auto(Automorphism tag, const Matrix& values);

/// h1 o h2. Both tags are involutions, so the composite is again a tag.
Automorphism compose(Automorphism outer, Automorphism inner);

struct Vector {
    Coords coords;

    Vector() = default;
    explicit Vector(Coords c) : coords(std::move(c)) {}

    [[nodiscard]] Eigen::Index size() const { return coords.size(); }
};

struct Functional {
    Coords coords;

    Functional() = default;
    explicit Functional(Coords c) : coords(std::move(c)) {}

    [[nodiscard]] Eigen::Index size() const { return coords.size(); }
};

Vector basis_vector(Eigen::Index n, Eigen::Index j);
Functional basis_functional(Eigen::Index n, Eigen::Index j);

/// True when every entry has zero imaginary part.
bool is_real(const Matrix& m);
bool is_real(const Coords& v);
bool all_finite(const Matrix& m);

/// Ratio smallest/largest singular value; 0 for the zero matrix.
double inverse_condition(const Matrix& m);

/// An invertible matrix together with a ring automorphism h, acting as
/// x -> matrix * h(x). Satisfies A(lambda x) = h(lambda) A x.
class SemilinearOperator {
public:
    /// Throws SingularOperator, InvalidAutomorphism or DimensionMismatch.
    SemilinearOperator(Matrix matrix, Automorphism tag,
                       ScalarField field = ScalarField::Complex);

    static SemilinearOperator identity(Eigen::Index n, ScalarField field = ScalarField::Complex);

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] Automorphism automorphism() const { return auto_; }
    [[nodiscard]] ScalarField field() const { return field_; }
    [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }

    [[nodiscard]] SemilinearOperator inverse() const;

private:
    Matrix matrix_;
    Automorphism auto_;
    ScalarField field_;
};

/// <x,f> = sum_j x_j f_j. Bilinear; no conjugation.
Scalar pair(const Vector& x, const Functional& f);

/// The operator z -> <z,f> x, i.e. the matrix with entries x_j f_k.
Matrix tensor(const Vector& x, const Functional& f);

Vector apply(const SemilinearOperator& a, const Vector& x);

/// Applies an operator realized on functional coordinates (see adjoint()).
Functional apply(const SemilinearOperator& a, const Functional& f);

/// Banach adjoint A' realized on functional coordinates, such that
/// <Ax, f> = h(<x, A'f>) for every x and f.
SemilinearOperator adjoint(const SemilinearOperator& a);

/// (M1, h1) o (M2, h2) = (M1 h1(M2), h1 o h2).
SemilinearOperator compose(const SemilinearOperator& outer, const SemilinearOperator& inner);

Scalar trace(const Matrix& a);

struct KernelRange {
    Matrix kernel; ///< n x (n - rank), orthonormal columns
    Matrix range;  ///< n x rank, orthonormal columns
};

/// Orthonormal bases of ker A and rng A from a singular value decomposition.
/// Singular values <= tol count as zero; a negative tol selects
/// kRankTolerance * ||A||_2.
KernelRange kernel_and_range(const Matrix& a, double tol = -1.0);

/// Orthonormal basis of the column span of m (may have any number of columns).
Matrix column_space(const Matrix& m, double tol = -1.0);

/// Orthonormal basis of { z : m z = 0 }.
Matrix null_space(const Matrix& m, double tol = -1.0);

/// Orthogonal projector onto the column span of an orthonormal basis.
Matrix projector(const Matrix& orthonormal_basis);

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what);

} // namespace raysym
