#pragma once

#include <span>
#include <vector>

#include "raysym/linalg.hpp"

namespace raysym {

/// A rank-one idempotent x (x) f with <x,f> = 1.
class RankOneIdempotent {
public:
    /// Normalizes to (x / <x,f>, f). Throws DegeneratePair when
    /// |<x,f>| <= 1e-10 ||x|| ||f||.
    static RankOneIdempotent from_pair(Vector x, Functional f);

    [[nodiscard]] const Vector& x() const { return x_; }
    [[nodiscard]] const Functional& f() const { return f_; }
    [[nodiscard]] Eigen::Index dim() const { return x_.size(); }
    [[nodiscard]] Matrix matrix() const { return tensor(x_, f_); }

private:
    RankOneIdempotent(Vector x, Functional f) : x_(std::move(x)), f_(std::move(f)) {}

    Vector x_;
    Functional f_;
};

RankOneIdempotent rank_one_from_pair(Vector x, Functional f);

/// ||P^2 - P||_F <= 1e-9 (1 + ||P||_F^2)
bool satisfies_idempotent_bound(const Matrix& p);

class FiniteRankIdempotent {
public:
    /// Validates the idempotent bound and reads the rank from the trace.
    /// Throws NotIdempotent.
    static FiniteRankIdempotent from_matrix(Matrix p);
    static FiniteRankIdempotent from_rank_one(const RankOneIdempotent& p);

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] Eigen::Index rank() const { return rank_; }
    [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }

private:
    FiniteRankIdempotent(Matrix p, Eigen::Index rank) : matrix_(std::move(p)), rank_(rank) {}

    Matrix matrix_;
    Eigen::Index rank_;
};

struct Relation {
    bool pq_zero = false;
    bool qp_zero = false;
    bool orthogonal = false;
    bool p_leq_q = false;
    bool q_leq_p = false;
};

/// 1e-8 (1 + ||P||_F)(1 + ||Q||_F)
double default_relation_tolerance(const Matrix& p, const Matrix& q);

/// Zero-product, orthogonality and order relations from the matrix
/// equations PQ = 0, QP = 0, PQ = QP = P. A negative tol selects the default.
Relation relate(const FiniteRankIdempotent& p, const FiniteRankIdempotent& q, double tol = -1.0);

/// Indices of r columns of m chosen greedily by largest residual norm
/// (ties resolved towards the lowest index), Gram-Schmidt style.
std::vector<Eigen::Index> pivoted_columns(const Matrix& m, Eigen::Index r);

/// Mutually orthogonal rank-one idempotents summing to P. The range basis is
/// a pivoted selection of P's columns U, and the functionals are the rows of
/// G with P = U G, G U = I.
std::vector<RankOneIdempotent> decompose(const FiniteRankIdempotent& p);

/// An idempotent P with P1 <= P and P2 <= P, assembled from
/// ker P = K and rng P = N + L where N = rng P1 + rng P2, M = ker P1 n ker P2,
/// K complements M n N inside M and L complements M + N.
FiniteRankIdempotent majorant(const FiniteRankIdempotent& p1, const FiniteRankIdempotent& p2);

/// The idempotent with the given range and kernel (columns must together
/// span the whole space).
Matrix idempotent_from_subspaces(const Matrix& range_basis, const Matrix& kernel_basis);

} // namespace raysym
