#include "raysym/random.hpp"

namespace raysym {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Scalar random_scalar(Rng& rng, ScalarField field) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    if (field == ScalarField::Real) return {re, 0.0};
    const double im = normal(rng);
    return {re, im};
}

Coords random_coords(Rng& rng, Eigen::Index n, ScalarField field) {
    Coords v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_scalar(rng, field);
    return v;
}

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, ScalarField field) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = random_scalar(rng, field);
    }
    return m;
}

Matrix random_invertible(Rng& rng, Eigen::Index n, ScalarField field, double max_condition) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n, field);
        const double rcond = inverse_condition(m);
        if (rcond > 0.0 && 1.0 / rcond <= max_condition) return m;
    }
}

RankOneIdempotent random_rank_one(Rng& rng, Eigen::Index n, ScalarField field) {
    for (;;) {
        Vector x(random_coords(rng, n, field));
        Functional f(random_coords(rng, n, field));
        if (std::abs(pair(x, f)) >= 0.1 * x.coords.norm() * f.coords.norm()) {
            return rank_one_from_pair(std::move(x), std::move(f));
        }
    }
}

FactoredIdempotent random_idempotent(Rng& rng, Eigen::Index n, Eigen::Index rank,
                                     ScalarField field, double max_condition) {
    const Matrix s = random_invertible(rng, n, field, max_condition);
    const Matrix s_inv = s.partialPivLu().inverse();
    FactoredIdempotent out;
    out.range = s.leftCols(rank);
    out.coranges = s_inv.topRows(rank);
    out.matrix = out.range * out.coranges;
    return out;
}

} // namespace raysym
