#pragma once

// Maps on rank-one idempotents that preserve zero products in both
// directions, PQ = 0 <=> phi(P)phi(Q) = 0. In dimension >= 3 every such
// bijection has the form phi(P) = A h(P) A^{-1}; this module builds those maps
// from operators, checks the preservation property on samples, extends a map
// to finite-rank idempotents, and recovers (A, h) from black-box queries.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "raysym/idempotents.hpp"
#include "raysym/parallel.hpp"

namespace raysym {

/// A black-box map on rank-one idempotents. The wrapped callable must be safe
/// to invoke concurrently.
class TransformHandle {
public:
    using Map = std::function<RankOneIdempotent(const RankOneIdempotent&)>;

    TransformHandle(Map eval, Eigen::Index n, ScalarField field);

    /// Evaluates the map and checks the image (dimension, finite entries).
    RankOneIdempotent operator()(const RankOneIdempotent& p) const;

    [[nodiscard]] Eigen::Index dim() const { return n_; }
    [[nodiscard]] ScalarField field() const { return field_; }

private:
    Map eval_;
    Eigen::Index n_;
    ScalarField field_;
};

/// phi(P) = A h(P) A^{-1}, evaluated as (Ax, (A^{-1})'f) on P = x (x) f.
/// Throws DimensionTooSmall below n = 3.
TransformHandle induce(const SemilinearOperator& a);

TransformHandle identity_map(Eigen::Index n, ScalarField field);

/// P -> P^T. Reverses products, so it never preserves zero products.
TransformHandle transpose_map(Eigen::Index n, ScalarField field);

struct PreservationViolation {
    RankOneIdempotent p;
    RankOneIdempotent q;
    double source_product; ///< ||PQ|| / (||P|| ||Q||)
    double image_product;  ///< same for phi(P), phi(Q)
};

struct PreservationReport {
    std::vector<PreservationViolation> violations;
    std::size_t pairs_tested = 0;
};

inline constexpr double kDefaultProductTolerance = 1e-8;

/// Samples ordered pairs: random ones, pairs with PQ = 0 (y in ker f) and the
/// same pairs reversed. A pair is a violation when one side's normalized
/// product is <= tol and the other's is >= 100 tol.
PreservationReport check_preservation(const TransformHandle& phi, std::size_t sample_count,
                                      std::uint64_t seed, double tol = kDefaultProductTolerance,
                                      Execution exec = Execution::Parallel);

/// Sum of phi over the pieces of decompose(P). Throws ExtensionInconsistent
/// if the sum is not an idempotent of the same rank.
FiniteRankIdempotent extend(const TransformHandle& phi, const FiniteRankIdempotent& p);

/// Same, over a caller-supplied orthogonal rank-one decomposition.
FiniteRankIdempotent extend(const TransformHandle& phi, std::span<const RankOneIdempotent> pieces);

/// Reads h from tr phi(P)phi(Q) = h(tr PQ) on a probe pair with tr PQ = i.
/// Over R the answer is always Identity.
Automorphism automorphism_of(const TransformHandle& phi);

/// The pair (P, Q) used by automorphism_of: P = (e1, f1), Q = (y, g) with
/// y = (i, 1, 0, ...), g = (1, 1 - i, 0, ...).
std::pair<RankOneIdempotent, RankOneIdempotent> automorphism_probe_pair(Eigen::Index n);

struct ReconstructionResult {
    SemilinearOperator a; ///< unit Frobenius norm, leading large entry positive real
    double residual = 0.0;
    std::size_t probes_used = 0;
};

inline constexpr double kNotInducedThreshold = 1e-6;

/// Scales to unit Frobenius norm and rotates the first entry (row-major) of
/// largest modulus onto the positive real axis.
SemilinearOperator normalize(const SemilinearOperator& a);

/// Every rank-one idempotent reconstruct() queries, in query order.
std::vector<RankOneIdempotent> probe_set(Eigen::Index n, ScalarField field,
                                         std::size_t validation_count, std::uint64_t seed);

/// Recovers A (up to a scalar) and h from queries of phi:
///   (e_j, f_j) fix column directions; (e_1 + e_j, f_1) fix relative column
///   scales; automorphism_of and (e_1 + i e_2, f_1) fix h. The result is
///   validated on validation_count random idempotents.
/// Throws NotInduced when the residual exceeds 1e-6, DegenerateProbe when a
/// probe image cannot be used.
ReconstructionResult reconstruct(const TransformHandle& phi, std::size_t validation_count,
                                 std::uint64_t seed, Execution exec = Execution::Parallel);

/// Representative choosers for rays of vectors and of functionals.
struct RayPair {
    std::function<Vector(const Vector&)> t;
    std::function<Functional(const Functional&)> s;
};

/// x (x) f / <x,f>  ->  Tx (x) Sf / <Tx,Sf>. Evaluation throws DegenerateImage
/// when <Tx,Sf> vanishes.
TransformHandle from_ray_pair(RayPair ts, Eigen::Index n, ScalarField field);

/// A map defined by a finite table of (P, phi(P)) entries. Lookup matches P's
/// matrix to 1e-12 relative; a miss throws DegenerateProbe.
TransformHandle tabulated(std::vector<std::pair<RankOneIdempotent, RankOneIdempotent>> entries,
                          Eigen::Index n, ScalarField field);

} // namespace raysym
