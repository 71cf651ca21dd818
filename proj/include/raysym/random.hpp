#pragma once

// Seeded generators for test data. Every sampling loop derives an
// independent stream per sample index, so results do not depend on how the
// loop is scheduled across threads.

#include <cstdint>
#include <random>

#include "raysym/idempotents.hpp"

namespace raysym {

using Rng = std::mt19937_64;

/// splitmix64 finalizer of (seed, index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(stream_seed(seed, index));
}

Scalar random_scalar(Rng& rng, ScalarField field);
Coords random_coords(Rng& rng, Eigen::Index n, ScalarField field);
Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, ScalarField field);

/// Gaussian matrix redrawn until its condition number is at most max_condition.
Matrix random_invertible(Rng& rng, Eigen::Index n, ScalarField field, double max_condition = 1e3);

/// Draws x, f until |<x,f>| >= 0.1 ||x|| ||f||, keeping ||P||_F <= 10.
RankOneIdempotent random_rank_one(Rng& rng, Eigen::Index n, ScalarField field);

/// P = S diag(1..1, 0..0) S^{-1}, kept together with its factors: the columns
/// of `range` and rows of `coranges` are a rank-one decomposition of P.
struct FactoredIdempotent {
    Matrix matrix;
    Matrix range;    ///< n x r
    Matrix coranges; ///< r x n, coranges * range = I
};

FactoredIdempotent random_idempotent(Rng& rng, Eigen::Index n, Eigen::Index rank,
                                     ScalarField field, double max_condition = 20.0);

} // namespace raysym
