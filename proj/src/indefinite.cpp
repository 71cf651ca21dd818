#include "raysym/indefinite.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "raysym/random.hpp"

namespace raysym {

IndefiniteSpace::IndefiniteSpace(Matrix eta, ScalarField field)
    : eta_(std::move(eta)), field_(field) {
    require_same_size(eta_.rows(), eta_.cols(), "eta");
    if (eta_.rows() < 3) {
        throw DimensionTooSmall("indefinite space of dimension " + std::to_string(eta_.rows()));
    }
    if (field_ == ScalarField::Real && !is_real(eta_)) {
        throw InvalidAutomorphism("complex eta over the real field");
    }
    if (!eta_.allFinite() || inverse_condition(eta_) <= kSingularTolerance) {
        throw SingularOperator("eta is not invertible");
    }
    eta_inv_ = eta_.partialPivLu().inverse();
}

Ray::Ray(Vector representative) : rep_(std::move(representative)) {
    if (!rep_.coords.allFinite() || rep_.coords.norm() == 0.0) {
        throw InvalidRay("a ray needs a nonzero finite representative");
    }
}

bool Ray::same_as(const Ray& other) const {
    const Coords& a = rep_.coords;
    const Coords& b = other.rep_.coords;
    if (a.size() != b.size()) return false;
    const Scalar coef = b.dot(a) / b.squaredNorm(); // <a,b> / <b,b>
    return (a - coef * b).norm() <= 1e-10 * a.norm();
}

RayMap induced_ray_map(const SemilinearOperator& u) {
    return [u](const Ray& r) { return Ray(apply(u, r.representative())); };
}

Scalar hilbert_product(const Vector& a, const Vector& b) {
    require_same_size(a.size(), b.size(), "hilbert_product");
    return b.coords.dot(a.coords); // Eigen's dot conjugates its receiver
}

Scalar eta_product(const IndefiniteSpace& space, const Vector& x, const Vector& y) {
    require_same_size(space.dim(), x.size(), "eta_product");
    return hilbert_product(Vector(space.eta() * x.coords), y);
}

namespace {

double normalized_eta_product(const IndefiniteSpace& space, const Vector& x, const Vector& y) {
    const Vector ex(space.eta() * x.coords);
    return std::abs(hilbert_product(ex, y)) / (ex.coords.norm() * y.coords.norm());
}

/// A vector y with <w, y> = 0 (equivalently <y, w> = 0).
Vector orthogonal_to(Rng& rng, const Coords& w, ScalarField field) {
    for (;;) {
        const Coords z = random_coords(rng, w.size(), field);
        Coords y = z - (w.dot(z) / w.squaredNorm()) * w;
        if (y.norm() > 1e-3 * z.norm()) return Vector(std::move(y));
    }
}

} // namespace

bool ray_eta_orthogonal(const IndefiniteSpace& space, const Ray& rx, const Ray& ry, double tol) {
    return normalized_eta_product(space, rx.representative(), ry.representative()) <= tol;
}

SymmetryReport is_symmetry(const IndefiniteSpace& space, const RayMap& t, std::size_t sample_count,
                           std::uint64_t seed, double tol, Execution exec) {
    const Eigen::Index n = space.dim();
    const ScalarField field = space.field();

    std::vector<std::optional<SymmetryViolation>> found(sample_count);
    for_each_index(exec, sample_count, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        Vector a(random_coords(rng, n, field));
        Vector b;
        switch (i % 3) {
        case 0:
            b = Vector(random_coords(rng, n, field));
            break;
        case 1: // <eta a, b> = 0
            b = orthogonal_to(rng, space.eta() * a.coords, field);
            break;
        default: // <eta b, a> = <b, eta* a> = 0
            b = orthogonal_to(rng, space.eta().adjoint() * a.coords, field);
            std::swap(a, b);
            break;
        }
        Ray x(std::move(a));
        Ray y(std::move(b));
        const double source = normalized_eta_product(space, x.representative(), y.representative());
        const double image =
            normalized_eta_product(space, t(x).representative(), t(y).representative());
        const bool broken = (source <= tol && image >= 100.0 * tol) ||
                            (image <= tol && source >= 100.0 * tol);
        if (broken) found[i] = SymmetryViolation{std::move(x), std::move(y), source, image};
    });

    SymmetryReport report;
    report.pairs_tested = sample_count;
    for (auto& v : found) {
        if (v) report.violations.push_back(std::move(*v));
    }
    return report;
}

Characterization characterize(const IndefiniteSpace& space, const SemilinearOperator& u,
                              double tol) {
    require_same_size(space.dim(), u.dim(), "characterize");
    const Matrix& m = u.matrix();
    const Matrix& eta = space.eta();

    // Entry (j, i) of lhs is (U e_i, U e_j)_eta; basis vectors are real, so the
    // automorphism does not act on them.
    const Matrix lhs = m.adjoint() * eta * m;
    // (e_i, e_j)_eta = eta(j, i);  (e_j, e_i)_{eta*} = conj(eta(j, i)).
    const Matrix rhs = u.automorphism() == Automorphism::Identity ? eta : Matrix(eta.conjugate());

    Eigen::Index ri = 0;
    Eigen::Index rj = 0;
    rhs.cwiseAbs().maxCoeff(&ri, &rj);
    Scalar c = lhs(ri, rj) / rhs(ri, rj);
    if (space.field() == ScalarField::Real) c = Scalar(c.real(), 0.0);

    const double scale = std::max(lhs.norm(), std::abs(c) * rhs.norm());
    if ((lhs - c * rhs).cwiseAbs().maxCoeff() > tol * scale) return {};
    return {u.automorphism() == Automorphism::Identity ? SymmetryKind::Linear
                                                       : SymmetryKind::Conjugate,
            c};
}

Matrix matrix_exponential(const Matrix& m) {
    return m.exp();
}

namespace {

/// Real coordinates of a generator K: real parts, then imaginary parts over C.
Matrix generator_from_params(const Eigen::VectorXd& params, Eigen::Index n, ScalarField field) {
    Matrix k(n, n);
    const Eigen::Index nn = n * n;
    for (Eigen::Index idx = 0; idx < nn; ++idx) {
        const double im = field == ScalarField::Complex ? params(nn + idx) : 0.0;
        k(idx % n, idx / n) = Scalar(params(idx), im);
    }
    return k;
}

/// Basis (columns) of the real-linear solution space of eta K + K* eta = 0.
Eigen::MatrixXd skew_generator_basis(const IndefiniteSpace& space) {
    const Eigen::Index n = space.dim();
    const Eigen::Index nn = n * n;
    const Eigen::Index params = space.field() == ScalarField::Complex ? 2 * nn : nn;
    const Eigen::Index outputs = space.field() == ScalarField::Complex ? 2 * nn : nn;
    const Matrix& eta = space.eta();

    Eigen::MatrixXd constraint(outputs, params);
    for (Eigen::Index p = 0; p < params; ++p) {
        const Matrix k = generator_from_params(Eigen::VectorXd::Unit(params, p), n, space.field());
        const Matrix image = eta * k + k.adjoint() * eta;
        for (Eigen::Index idx = 0; idx < nn; ++idx) {
            const Scalar v = image(idx % n, idx / n);
            constraint(idx, p) = v.real();
            if (space.field() == ScalarField::Complex) constraint(nn + idx, p) = v.imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, s(0));
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol) ++rank;
    return svd.matrixV().rightCols(params - rank);
}

} // namespace

SemilinearOperator generate_eta_isometry(const IndefiniteSpace& space, std::uint64_t seed,
                                         double scale) {
    if (!(scale > 0.0)) throw Error("isometry scale must be positive");
    const Eigen::Index n = space.dim();
    const Eigen::MatrixXd basis = skew_generator_basis(space);

    Rng rng = make_stream(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd coeffs(basis.cols());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = normal(rng);

    Matrix k = basis.cols() == 0 ? Matrix(Matrix::Zero(n, n))
                                 : generator_from_params(basis * coeffs, n, space.field());
    const double knorm = k.norm();
    if (knorm > 0.0) k *= 1.5 / knorm;

    Matrix v = std::sqrt(scale) * matrix_exponential(k);
    if (space.field() == ScalarField::Real) v = v.real().cast<Scalar>();
    return {std::move(v), Automorphism::Identity, space.field()};
}

ReconstructionResult recover_inducing_operator(const IndefiniteSpace& space, const RayMap& t,
                                               std::size_t validation_count, std::uint64_t seed,
                                               Execution exec) {
    const Matrix eta_h = space.eta().adjoint();
    const Matrix eta_h_inv = space.eta_inverse().adjoint();

    // <Tx, eta* Ty> = 0  <=>  <x, eta* y> = 0. In Banach coordinates the
    // functional <., eta* y> is conj(eta* y).
    RayPair ts;
    ts.t = [t](const Vector& x) { return t(Ray(x)).representative(); };
    ts.s = [t, eta_h, eta_h_inv](const Functional& f) {
        const Vector y(eta_h_inv * f.coords.conjugate());
        const Vector ty = t(Ray(y)).representative();
        return Functional((eta_h * ty.coords).conjugate());
    };
    const TransformHandle phi = from_ray_pair(std::move(ts), space.dim(), space.field());
    try {
        return reconstruct(phi, validation_count, seed, exec);
    } catch (const DegenerateProbe& e) {
        throw NotInduced(std::string("ray map is not a symmetry transformation: ") + e.what());
    }
}

} // namespace raysym
