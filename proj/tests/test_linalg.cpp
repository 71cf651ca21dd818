#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raysym/linalg.hpp"
#include "raysym/random.hpp"
#include "support.hpp"

using namespace raysym;
using namespace testing_support;

TEST_CASE("pair is bilinear without conjugation") {
    CHECK(pair(vec({1, 2, 3}), fun({4, 5, 6})) == Scalar(32.0));
    // (i)(i) = -1: a sesquilinear pairing would give +1.
    CHECK(std::abs(pair(vec({I, 0, 0}), fun({I, 0, 0})) - Scalar(-1.0)) < 1e-15);
}

TEST_CASE("tensor is the outer product x f^T") {
    const Matrix t = tensor(vec({1, 2, 0}), fun({0, 1, 3}));
    CHECK(t == real_matrix(3, {0, 1, 3, 0, 2, 6, 0, 0, 0}));
    // z -> <z,f> x
    const Coords z = coords({1, 1, 1});
    CHECK((t * z - Scalar(4.0) * coords({1, 2, 0})).norm() < 1e-14);
}

TEST_CASE("trace and basis elements") {
    CHECK(trace(real_matrix(3, {1, 9, 9, 9, 2, 9, 9, 9, 3})) == Scalar(6.0));
    CHECK(basis_vector(4, 2).coords == coords({0, 0, 1, 0}));
    CHECK(basis_functional(3, 0).coords == coords({1, 0, 0}));
    CHECK_THROWS_AS(basis_vector(3, 3), DimensionMismatch);
}

TEST_CASE("apply respects the automorphism tag") {
    const Matrix m = real_matrix(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
    const Vector x = vec({I, 2, 0});
    const SemilinearOperator lin(m, Automorphism::Identity);
    const SemilinearOperator anti(m, Automorphism::Conjugation);
    CHECK((apply(lin, x).coords - coords({2, 0, I})).norm() < 1e-15);
    CHECK((apply(anti, x).coords - coords({2, 0, -I})).norm() < 1e-15);
    // A(lambda x) = h(lambda) A x
    const Scalar lambda{0.3, -1.7};
    const Vector lx(lambda * x.coords);
    CHECK((apply(anti, lx).coords - std::conj(lambda) * apply(anti, x).coords).norm() < 1e-14);
    CHECK((apply(lin, lx).coords - lambda * apply(lin, x).coords).norm() < 1e-14);
}

TEST_CASE("operator construction validates its input") {
    CHECK_THROWS_AS(SemilinearOperator(Matrix::Zero(3, 3), Automorphism::Identity), SingularOperator);
    CHECK_THROWS_AS(SemilinearOperator(Matrix::Identity(3, 3), Automorphism::Conjugation, ScalarField::Real),
                    InvalidAutomorphism);
    CHECK_THROWS_AS(SemilinearOperator(Matrix::Identity(3, 2), Automorphism::Identity), DimensionMismatch);
    Matrix complex_entry = Matrix::Identity(3, 3);
    complex_entry(0, 1) = I;
    CHECK_THROWS(SemilinearOperator(complex_entry, Automorphism::Identity, ScalarField::Real));
    CHECK_THROWS_AS(validate(ScalarField::Real, Automorphism::Conjugation), InvalidAutomorphism);
    CHECK_NOTHROW(validate(ScalarField::Complex, Automorphism::Conjugation));
}

TEST_CASE("compose of tags") {
    CHECK(compose(Automorphism::Conjugation, Automorphism::Conjugation) == Automorphism::Identity);
    CHECK(compose(Automorphism::Identity, Automorphism::Conjugation) == Automorphism::Conjugation);
    CHECK(to_string(Automorphism::Conjugation) == "conj");
    CHECK(to_string(ScalarField::Real) == "real");
}

TEST_CASE("kernel_and_range of a projector") {
    // Oblique projector onto span{(1,1,0)} along span{(0,1,0),(0,0,1)}.
    const Matrix p = real_matrix(3, {1, 0, 0, 1, 0, 0, 0, 0, 0});
    const auto kr = kernel_and_range(p);
    REQUIRE(kr.range.cols() == 1);
    REQUIRE(kr.kernel.cols() == 2);
    CHECK((p * kr.kernel).norm() < 1e-12);
    // Range is the span of (1,1,0)/sqrt2.
    const Matrix r_proj = kr.range * kr.range.adjoint();
    CHECK((r_proj - real_matrix(3, {0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 0})).norm() < 1e-12);
    CHECK((projector(kr.kernel) + projector(null_space(kr.kernel.adjoint())) - Matrix::Identity(3, 3)).norm() <
          1e-12);
}

TEST_CASE("column_space and null_space dimensions") {
    Rng rng(5);
    const Matrix b = random_matrix(rng, 5, 2, ScalarField::Complex);
    const Matrix m = b * random_matrix(rng, 2, 5, ScalarField::Complex); // rank 2
    CHECK(column_space(m).cols() == 2);
    CHECK(null_space(m).cols() == 3);
    CHECK((m * null_space(m)).norm() < 1e-10 * m.norm());
    CHECK(column_space(Matrix::Zero(4, 4)).cols() == 0);
}

TEST_CASE("inverse_condition") {
    CHECK(inverse_condition(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK(inverse_condition(real_matrix(2, {2, 0, 0, 0.5})) == doctest::Approx(0.25));
    CHECK(inverse_condition(Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("property: bilinearity of pair and rank of tensor") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng = make_stream(11, s);
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(s % 6);
        const Vector x(random_coords(rng, n, ScalarField::Complex));
        const Vector y(random_coords(rng, n, ScalarField::Complex));
        const Functional f(random_coords(rng, n, ScalarField::Complex));
        const Scalar a = random_scalar(rng, ScalarField::Complex);
        const Scalar lhs = pair(Vector(a * x.coords + y.coords), f);
        const Scalar rhs = a * pair(x, f) + pair(y, f);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(rhs)));
        CHECK(svd_rank(tensor(x, f)) == 1);
        // (x (x) f)^2 = <x,f> (x (x) f)
        const Matrix t = tensor(x, f);
        CHECK((t * t - pair(x, f) * t).norm() < 1e-12 * (1 + t.squaredNorm()));
    }
}

TEST_CASE("property: adjoint identity <Ax, f> = h(<x, A'f>)") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng = make_stream(12, s);
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(s % 6);
        const auto tag = s % 2 ? Automorphism::Conjugation : Automorphism::Identity;
        const SemilinearOperator a(random_invertible(rng, n, ScalarField::Complex), tag);
        const Vector x(random_coords(rng, n, ScalarField::Complex));
        const Functional f(random_coords(rng, n, ScalarField::Complex));
        const Scalar lhs = pair(apply(a, x), f);
        const Scalar rhs = apply_auto(tag, pair(x, apply(adjoint(a), f)));
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
    }
}

TEST_CASE("property: compose and inverse agree with pointwise application") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng = make_stream(13, s);
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(s % 6);
        const auto t1 = s % 2 ? Automorphism::Conjugation : Automorphism::Identity;
        const auto t2 = s % 3 ? Automorphism::Conjugation : Automorphism::Identity;
        const SemilinearOperator a(random_invertible(rng, n, ScalarField::Complex), t1);
        const SemilinearOperator b(random_invertible(rng, n, ScalarField::Complex), t2);
        const Vector x(random_coords(rng, n, ScalarField::Complex));
        const Coords direct = apply(a, apply(b, x)).coords;
        const auto ab = compose(a, b);
        CHECK(ab.automorphism() == compose(t1, t2));
        CHECK((apply(ab, x).coords - direct).norm() < 1e-9 * (1 + direct.norm()));
        const Coords back = apply(a.inverse(), apply(a, x)).coords;
        CHECK((back - x.coords).norm() < 1e-9 * (1 + x.coords.norm()));
    }
}
