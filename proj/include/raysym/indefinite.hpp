#pragma once

// Indefinite inner products (x, y)_eta = <eta x, y> for an arbitrary
// invertible eta (not necessarily self-adjoint), ray maps that preserve
// eta-orthogonality in both directions, and the operators inducing them.
//
// Hilbert inner product convention: <a, b> = sum_j a_j conj(b_j), linear in
// the first slot. With it, a linear U is an eta-isometry up to the constant c
// exactly when U* eta U = c eta.

#include <cstdint>
#include <functional>
#include <vector>

#include "raysym/parallel.hpp"
#include "raysym/transform.hpp"

namespace raysym {

class IndefiniteSpace {
public:
    /// Throws SingularOperator for non-invertible eta, DimensionTooSmall for n < 3.
    IndefiniteSpace(Matrix eta, ScalarField field);

    [[nodiscard]] Eigen::Index dim() const { return eta_.rows(); }
    [[nodiscard]] ScalarField field() const { return field_; }
    [[nodiscard]] const Matrix& eta() const { return eta_; }
    [[nodiscard]] const Matrix& eta_inverse() const { return eta_inv_; }

private:
    Matrix eta_;
    Matrix eta_inv_;
    ScalarField field_;
};

/// The ray of nonzero multiples of a nonzero vector.
class Ray {
public:
    /// Throws InvalidRay for the zero vector or non-finite entries.
    explicit Ray(Vector representative);

    [[nodiscard]] const Vector& representative() const { return rep_; }

    /// Linear dependence of the representatives, to 1e-10.
    [[nodiscard]] bool same_as(const Ray& other) const;

private:
    Vector rep_;
};

using RayMap = std::function<Ray(const Ray&)>;

/// x -> U x on representatives.
RayMap induced_ray_map(const SemilinearOperator& u);

Scalar hilbert_product(const Vector& a, const Vector& b);

/// <eta x, y>
Scalar eta_product(const IndefiniteSpace& space, const Vector& x, const Vector& y);

/// |(x, y)_eta| <= tol ||eta x|| ||y||; independent of the representatives.
bool ray_eta_orthogonal(const IndefiniteSpace& space, const Ray& rx, const Ray& ry,
                        double tol = 1e-10);

struct SymmetryViolation {
    Ray x;
    Ray y;
    double source_product; ///< |(x,y)_eta| / (||eta x|| ||y||)
    double image_product;  ///< same for Tx, Ty
};

struct SymmetryReport {
    std::vector<SymmetryViolation> violations;
    std::size_t pairs_tested = 0;
};

/// Samples ordered ray pairs (random ones and eta-orthogonal ones obtained by
/// solving a single linear equation, in either slot) and reports those where
/// T breaks the orthogonality biconditional with a 100x margin.
SymmetryReport is_symmetry(const IndefiniteSpace& space, const RayMap& t, std::size_t sample_count,
                           std::uint64_t seed, double tol = 1e-8,
                           Execution exec = Execution::Parallel);

enum class SymmetryKind { Linear, Conjugate, None };

struct Characterization {
    SymmetryKind kind = SymmetryKind::None;
    Scalar constant{0.0, 0.0};
};

/// Linear U: tests (Ux,Uy)_eta = c (x,y)_eta. Conjugate-linear U: tests
/// (Ux,Uy)_eta = d (y,x)_{eta*}. The constant is fitted on the basis pair with
/// the largest right-hand side and verified on all n^2 basis pairs.
Characterization characterize(const IndefiniteSpace& space, const SemilinearOperator& u,
                              double tol = 1e-8);

/// Random V with V* eta V = scale eta: a random generator K projected onto
/// { K : eta K + K* eta = 0 }, exponentiated, and multiplied by sqrt(scale).
SemilinearOperator generate_eta_isometry(const IndefiniteSpace& space, std::uint64_t seed,
                                         double scale);

/// exp(m), via Eigen's scaling-and-squaring Pade approximant.
Matrix matrix_exponential(const Matrix& m);

/// Recovers U inducing T (up to a scalar) by pairing T with the functional
/// map S that sends the ray of <., eta* y> to the ray of <., eta* Ty>, then
/// reconstructing the zero-product-preserving map they define.
/// Throws NotInduced when T is not a symmetry transformation.
ReconstructionResult recover_inducing_operator(const IndefiniteSpace& space, const RayMap& t,
                                               std::size_t validation_count = 64,
                                               std::uint64_t seed = 0,
                                               Execution exec = Execution::Parallel);

} // namespace raysym
