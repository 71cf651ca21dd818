#include "raysym/idempotents.hpp"

#include <cmath>
#include <string>

namespace raysym {

namespace {

constexpr double kPairTolerance = 1e-10;
constexpr double kIdempotentTolerance = 1e-9;
constexpr double kTraceTolerance = 1e-8;

} // namespace

RankOneIdempotent RankOneIdempotent::from_pair(Vector x, Functional f) {
    const Scalar p = pair(x, f);
    if (std::abs(p) <= kPairTolerance * x.coords.norm() * f.coords.norm()) {
        throw DegeneratePair("<x,f> vanishes; x (x) f is not an idempotent");
    }
    x.coords /= p;
    return {std::move(x), std::move(f)};
}

RankOneIdempotent rank_one_from_pair(Vector x, Functional f) {
    return RankOneIdempotent::from_pair(std::move(x), std::move(f));
}

bool satisfies_idempotent_bound(const Matrix& p) {
    if (p.rows() != p.cols() || !p.allFinite()) return false;
    const double norm = p.norm();
    return (p * p - p).norm() <= kIdempotentTolerance * (1.0 + norm * norm);
}

FiniteRankIdempotent FiniteRankIdempotent::from_matrix(Matrix p) {
    if (!satisfies_idempotent_bound(p)) {
        throw NotIdempotent("matrix fails ||P^2 - P|| bound");
    }
    const Scalar tr = p.trace();
    const double rounded = std::round(tr.real());
    if (std::abs(tr - Scalar(rounded, 0.0)) > kTraceTolerance) {
        throw NotIdempotent("trace " + std::to_string(tr.real()) + "+" +
                            std::to_string(tr.imag()) + "i is not an integer");
    }
    return {std::move(p), static_cast<Eigen::Index>(rounded)};
}

FiniteRankIdempotent FiniteRankIdempotent::from_rank_one(const RankOneIdempotent& p) {
    return from_matrix(p.matrix());
}

double default_relation_tolerance(const Matrix& p, const Matrix& q) {
    return 1e-8 * (1.0 + p.norm()) * (1.0 + q.norm());
}

Relation relate(const FiniteRankIdempotent& p, const FiniteRankIdempotent& q, double tol) {
    require_same_size(p.dim(), q.dim(), "relate");
    const Matrix& pm = p.matrix();
    const Matrix& qm = q.matrix();
    if (tol < 0.0) tol = default_relation_tolerance(pm, qm);

    const Matrix pq = pm * qm;
    const Matrix qp = qm * pm;
    Relation r;
    r.pq_zero = pq.norm() <= tol;
    r.qp_zero = qp.norm() <= tol;
    r.orthogonal = r.pq_zero && r.qp_zero;
    r.p_leq_q = (pq - pm).norm() <= tol && (qp - pm).norm() <= tol;
    r.q_leq_p = (pq - qm).norm() <= tol && (qp - qm).norm() <= tol;
    return r;
}

std::vector<Eigen::Index> pivoted_columns(const Matrix& m, Eigen::Index r) {
    std::vector<Eigen::Index> chosen;
    chosen.reserve(static_cast<std::size_t>(r));
    Matrix residual = m;
    std::vector<bool> used(static_cast<std::size_t>(m.cols()), false);
    for (Eigen::Index step = 0; step < r; ++step) {
        Eigen::Index best = -1;
        double best_norm = -1.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double nrm = residual.col(j).norm();
            if (nrm > best_norm) {
                best = j;
                best_norm = nrm;
            }
        }
        if (best < 0 || best_norm == 0.0) break;
        used[static_cast<std::size_t>(best)] = true;
        chosen.push_back(best);
        const Coords q = residual.col(best) / best_norm;
        residual -= q * (q.adjoint() * residual);
    }
    return chosen;
}

std::vector<RankOneIdempotent> decompose(const FiniteRankIdempotent& p) {
    const Matrix& pm = p.matrix();
    if (!satisfies_idempotent_bound(pm)) throw NotIdempotent("decompose: input is not idempotent");
    const Eigen::Index r = p.rank();
    if (r < 1) throw NotIdempotent("decompose: rank must be at least 1");

    const auto cols = pivoted_columns(pm, r);
    if (static_cast<Eigen::Index>(cols.size()) != r) {
        throw NotIdempotent("decompose: column space is smaller than the trace rank");
    }
    Matrix u(pm.rows(), r);
    for (Eigen::Index i = 0; i < r; ++i) u.col(i) = pm.col(cols[static_cast<std::size_t>(i)]);

    // P = U G with G U = I_r, since P fixes its own range.
    const Matrix g = u.householderQr().solve(pm);

    std::vector<RankOneIdempotent> pieces;
    pieces.reserve(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) {
        pieces.push_back(rank_one_from_pair(Vector(u.col(i)), Functional(g.row(i).transpose())));
    }
    return pieces;
}

Matrix idempotent_from_subspaces(const Matrix& range_basis, const Matrix& kernel_basis) {
    const Eigen::Index n = range_basis.rows();
    const Eigen::Index r = range_basis.cols();
    require_same_size(r + kernel_basis.cols(), n, "idempotent_from_subspaces");
    Matrix basis(n, n);
    basis << range_basis, kernel_basis;
    if (inverse_condition(basis) <= kSingularTolerance) {
        throw NotIdempotent("range and kernel are not complementary");
    }
    const Matrix inv = basis.partialPivLu().inverse();
    return range_basis * inv.topRows(r);
}

FiniteRankIdempotent majorant(const FiniteRankIdempotent& p1, const FiniteRankIdempotent& p2) {
    require_same_size(p1.dim(), p2.dim(), "majorant");
    const Eigen::Index n = p1.dim();

    Matrix ranges(n, 2 * n);
    ranges << p1.matrix(), p2.matrix();
    const Matrix nb = column_space(ranges); // N = rng P1 + rng P2

    Matrix stacked(2 * n, n);
    stacked << p1.matrix(), p2.matrix();
    const Matrix mb = null_space(stacked); // M = ker P1 n ker P2

    // Bases below are orthonormal, so absolute thresholds apply.
    // M n N = { v in N : (I - proj_M) v = 0 }
    const Matrix off_m = Matrix::Identity(n, n) - projector(mb);
    const Matrix mn = nb.cols() == 0 ? Matrix(n, 0) : Matrix(nb * null_space(off_m * nb, kRankTolerance));

    // K: orthogonal complement of M n N inside M.
    const Matrix kb = mb.cols() == 0 || mn.cols() == 0 ? mb : Matrix(mb * null_space(mn.adjoint() * mb, kRankTolerance));

    // L: orthogonal complement of M + N.
    Matrix sum(n, mb.cols() + nb.cols());
    sum << mb, nb;
    const Matrix mplusn = column_space(sum, kRankTolerance);
    const Matrix lb = mplusn.cols() == 0 ? Matrix(Matrix::Identity(n, n)) : null_space(mplusn.adjoint(), kRankTolerance);

    Matrix range(n, nb.cols() + lb.cols());
    range << nb, lb;
    return FiniteRankIdempotent::from_matrix(idempotent_from_subspaces(range, kb));
}

} // namespace raysym
