#include "raysym/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "raysym/random.hpp"

namespace raysym {

namespace {

constexpr Scalar kI{0.0, 1.0};
constexpr double kAutomorphismTolerance = 1e-6;

void require_min_dimension(Eigen::Index n) {
    if (n < 3) {
        throw DimensionTooSmall("dimension " + std::to_string(n) + " is below 3");
    }
}

/// ||PQ||_F / (||P||_F ||Q||_F) = |<y,f>| / (||y|| ||f||) for P = x(x)f, Q = y(x)g.
double normalized_product(const RankOneIdempotent& p, const RankOneIdempotent& q) {
    return std::abs(pair(q.x(), p.f())) / (q.x().coords.norm() * p.f().coords.norm());
}

/// A rank-one idempotent Q = (y, g) with y in ker f, so PQ = 0.
RankOneIdempotent zero_product_partner(Rng& rng, const RankOneIdempotent& p, ScalarField field) {
    const Eigen::Index n = p.dim();
    const Coords& f = p.f().coords;
    const Coords w = f.conjugate();
    for (;;) {
        const Coords z = random_coords(rng, n, field);
        Vector y(z - (pair(Vector(z), p.f()) / f.squaredNorm()) * w);
        Functional g(random_coords(rng, n, field));
        if (std::abs(pair(y, g)) >= 0.1 * y.coords.norm() * g.coords.norm()) {
            return rank_one_from_pair(std::move(y), std::move(g));
        }
    }
}

Coords fit_two_columns(const Coords& a, const Coords& b, const Coords& target) {
    Matrix basis(a.size(), 2);
    basis << a, b;
    if (inverse_condition(basis) <= 1e-8) {
        throw DegenerateProbe("probe images of distinct basis vectors are parallel");
    }
    return basis.householderQr().solve(target);
}

} // namespace

TransformHandle::TransformHandle(Map eval, Eigen::Index n, ScalarField field)
    : eval_(std::move(eval)), n_(n), field_(field) {}

RankOneIdempotent TransformHandle::operator()(const RankOneIdempotent& p) const {
    require_same_size(p.dim(), n_, "transform input");
    RankOneIdempotent image = eval_(p);
    require_same_size(image.dim(), n_, "transform image");
    if (!image.x().coords.allFinite() || !image.f().coords.allFinite()) {
        throw DegenerateImage("transform produced non-finite entries");
    }
    return image;
}

TransformHandle induce(const SemilinearOperator& a) {
    require_min_dimension(a.dim());
    auto coadjoint = adjoint(a.inverse());
    return TransformHandle(
        [a, coadjoint](const RankOneIdempotent& p) {
            return rank_one_from_pair(apply(a, p.x()), apply(coadjoint, p.f()));
        },
        a.dim(), a.field());
}

TransformHandle identity_map(Eigen::Index n, ScalarField field) {
    return TransformHandle([](const RankOneIdempotent& p) { return p; }, n, field);
}

TransformHandle transpose_map(Eigen::Index n, ScalarField field) {
    // (x (x) f)^T = f (x) x
    return TransformHandle(
        [](const RankOneIdempotent& p) {
            return rank_one_from_pair(Vector(p.f().coords), Functional(p.x().coords));
        },
        n, field);
}

PreservationReport check_preservation(const TransformHandle& phi, std::size_t sample_count,
                                      std::uint64_t seed, double tol, Execution exec) {
    require_min_dimension(phi.dim());
    const Eigen::Index n = phi.dim();
    const ScalarField field = phi.field();

    std::vector<std::optional<PreservationViolation>> found(sample_count);
    for_each_index(exec, sample_count, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        RankOneIdempotent p = random_rank_one(rng, n, field);
        RankOneIdempotent q = i % 3 == 0 ? random_rank_one(rng, n, field)
                                         : zero_product_partner(rng, p, field);
        if (i % 3 == 2) std::swap(p, q);

        const double source = normalized_product(p, q);
        const double image = normalized_product(phi(p), phi(q));
        const bool broken = (source <= tol && image >= 100.0 * tol) ||
                            (image <= tol && source >= 100.0 * tol);
        if (broken) found[i] = PreservationViolation{std::move(p), std::move(q), source, image};
    });

    PreservationReport report;
    report.pairs_tested = sample_count;
    for (auto& v : found) {
        if (v) report.violations.push_back(std::move(*v));
    }
    return report;
}

FiniteRankIdempotent extend(const TransformHandle& phi, std::span<const RankOneIdempotent> pieces) {
    const Eigen::Index n = phi.dim();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& piece : pieces) sum += phi(piece).matrix();
    try {
        auto out = FiniteRankIdempotent::from_matrix(std::move(sum));
        if (out.rank() != static_cast<Eigen::Index>(pieces.size())) {
            throw ExtensionInconsistent("extension changed the rank from " +
                                        std::to_string(pieces.size()) + " to " +
                                        std::to_string(out.rank()));
        }
        return out;
    } catch (const NotIdempotent& e) {
        throw ExtensionInconsistent(std::string("extension is not an idempotent: ") + e.what());
    }
}

FiniteRankIdempotent extend(const TransformHandle& phi, const FiniteRankIdempotent& p) {
    require_same_size(p.dim(), phi.dim(), "extend");
    const auto pieces = decompose(p);
    return extend(phi, std::span<const RankOneIdempotent>(pieces));
}

std::pair<RankOneIdempotent, RankOneIdempotent> automorphism_probe_pair(Eigen::Index n) {
    require_min_dimension(n);
    Coords y = Coords::Zero(n);
    y(0) = kI;
    y(1) = 1.0;
    Coords g = Coords::Zero(n);
    g(0) = 1.0;
    g(1) = Scalar(1.0, -1.0);
    return {rank_one_from_pair(basis_vector(n, 0), basis_functional(n, 0)),
            rank_one_from_pair(Vector(y), Functional(g))};
}

Automorphism automorphism_of(const TransformHandle& phi) {
    if (phi.field() == ScalarField::Real) return Automorphism::Identity;
    const auto [p, q] = automorphism_probe_pair(phi.dim());
    const Scalar t = trace(phi(p).matrix() * phi(q).matrix());
    if (std::abs(t - kI) <= kAutomorphismTolerance) return Automorphism::Identity;
    if (std::abs(t + kI) <= kAutomorphismTolerance) return Automorphism::Conjugation;
    std::ostringstream msg;
    msg << "tr phi(P)phi(Q) = " << t << " matches neither i nor -i";
    throw UnrecognizedAutomorphism(msg.str());
}

SemilinearOperator normalize(const SemilinearOperator& a) {
    Matrix m = a.matrix() / a.matrix().norm();
    const double largest = m.cwiseAbs().maxCoeff();
    Scalar lead{1.0, 0.0};
    bool found = false;
    for (Eigen::Index i = 0; i < m.rows() && !found; ++i) {
        for (Eigen::Index j = 0; j < m.cols() && !found; ++j) {
            if (std::abs(m(i, j)) >= (1.0 - 1e-9) * largest) {
                lead = m(i, j);
                found = true;
            }
        }
    }
    m *= std::abs(lead) / lead;
    if (a.field() == ScalarField::Real) m = m.real().cast<Scalar>();
    return {std::move(m), a.automorphism(), a.field()};
}

namespace {

struct ProtocolProbes {
    std::vector<RankOneIdempotent> columns; // (e_j, f_j)
    std::vector<RankOneIdempotent> mixed;   // (e_1 + e_j, f_1), j >= 2
    std::vector<RankOneIdempotent> automorphism;
    std::vector<RankOneIdempotent> complex_unit; // (e_1 + i e_2, f_1)
};

ProtocolProbes protocol_probes(Eigen::Index n, ScalarField field) {
    require_min_dimension(n);
    ProtocolProbes probes;
    for (Eigen::Index j = 0; j < n; ++j) {
        probes.columns.push_back(rank_one_from_pair(basis_vector(n, j), basis_functional(n, j)));
    }
    for (Eigen::Index j = 1; j < n; ++j) {
        Vector v(Coords::Unit(n, 0) + Coords::Unit(n, j));
        probes.mixed.push_back(rank_one_from_pair(std::move(v), basis_functional(n, 0)));
    }
    if (field == ScalarField::Complex) {
        auto [p, q] = automorphism_probe_pair(n);
        probes.automorphism = {p, q};
        Vector v(Coords::Unit(n, 0) + kI * Coords::Unit(n, 1));
        probes.complex_unit.push_back(rank_one_from_pair(std::move(v), basis_functional(n, 0)));
    }
    return probes;
}

RankOneIdempotent validation_probe(Eigen::Index n, ScalarField field, std::uint64_t seed,
                                   std::size_t i) {
    Rng rng = make_stream(seed, i);
    return random_rank_one(rng, n, field);
}

} // namespace

std::vector<RankOneIdempotent> probe_set(Eigen::Index n, ScalarField field,
                                         std::size_t validation_count, std::uint64_t seed) {
    auto probes = protocol_probes(n, field);
    std::vector<RankOneIdempotent> all;
    for (auto* group : {&probes.columns, &probes.mixed, &probes.automorphism, &probes.complex_unit}) {
        all.insert(all.end(), group->begin(), group->end());
    }
    for (std::size_t i = 0; i < validation_count; ++i) {
        all.push_back(validation_probe(n, field, seed, i));
    }
    return all;
}

ReconstructionResult reconstruct(const TransformHandle& phi, std::size_t validation_count,
                                 std::uint64_t seed, Execution exec) {
    const Eigen::Index n = phi.dim();
    const ScalarField field = phi.field();
    const auto probes = protocol_probes(n, field);
    std::size_t calls = 0;

    auto query = [&](const RankOneIdempotent& p) -> Coords {
        ++calls;
        try {
            return phi(p).x().coords;
        } catch (const Error& e) {
            throw DegenerateProbe(std::string("probe image unavailable: ") + e.what());
        }
    };

    // Column directions: phi(e_j (x) f_j) has range A e_j.
    Matrix columns(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Coords c = query(probes.columns[static_cast<std::size_t>(j)]);
        const double nrm = c.norm();
        if (nrm == 0.0) throw DegenerateProbe("probe image has a zero range vector");
        columns.col(j) = c / nrm;
    }

    // Relative scales: the range of phi((e_1 + e_j) (x) f_1) is s_1 x_1 + s_j x_j.
    std::vector<Scalar> scale(static_cast<std::size_t>(n), Scalar(1.0, 0.0));
    for (Eigen::Index j = 1; j < n; ++j) {
        const Coords r = query(probes.mixed[static_cast<std::size_t>(j - 1)]);
        const Coords c = fit_two_columns(columns.col(0), columns.col(j), r);
        if (std::abs(c(0)) <= 1e-12 * c.norm()) {
            throw DegenerateProbe("mixed probe image has no component along the first column");
        }
        scale[static_cast<std::size_t>(j)] = c(1) / c(0);
    }

    Automorphism tag = Automorphism::Identity;
    if (field == ScalarField::Complex) {
        try {
            calls += 2;
            tag = automorphism_of(phi);
        } catch (const UnrecognizedAutomorphism& e) {
            throw NotInduced(e.what());
        } catch (const Error& e) {
            throw DegenerateProbe(std::string("automorphism probe failed: ") + e.what());
        }
        // The range of phi((e_1 + i e_2) (x) f_1) is x_1 + h(i) s_2 x_2.
        const Coords r = query(probes.complex_unit.front());
        const Coords c = fit_two_columns(columns.col(0), columns.col(1), r);
        const Scalar ratio = c(1) / c(0);
        const Scalar expected = apply_auto(tag, kI) * scale[1];
        if (std::abs(ratio - expected) > kNotInducedThreshold * std::abs(scale[1])) {
            throw NotInduced("complex probe disagrees with the trace-identity automorphism");
        }
    }

    Matrix assembled(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        assembled.col(j) = scale[static_cast<std::size_t>(j)] * columns.col(j);
    }
    std::optional<SemilinearOperator> a;
    try {
        if (field == ScalarField::Real) assembled = assembled.real().cast<Scalar>();
        a = normalize(SemilinearOperator(assembled, tag, field));
    } catch (const SingularOperator& e) {
        // Probe images of an induced map always assemble to an invertible operator.
        throw NotInduced(std::string("probe images assemble to a singular operator: ") + e.what(),
                         std::numeric_limits<double>::infinity());
    } catch (const Error& e) {
        throw DegenerateProbe(std::string("assembled operator is unusable: ") + e.what());
    }

    const Matrix& m = a->matrix();
    const Matrix m_inv = m.partialPivLu().inverse();
    std::vector<double> residuals(validation_count, 0.0);
    for_each_index(exec, validation_count, [&](std::size_t i) {
        const RankOneIdempotent p = validation_probe(n, field, seed, i);
        Matrix image;
        try {
            image = phi(p).matrix();
        } catch (const Error& e) {
            throw DegenerateProbe("validation probe " + std::to_string(i) + " image unavailable: " + e.what());
        }
        residuals[i] = (image - m * apply_auto(tag, p.matrix()) * m_inv).norm();
    });
    calls += validation_count;

    double residual = 0.0;
    for (double r : residuals) residual = std::max(residual, r);
    if (!(residual <= kNotInducedThreshold)) {
        std::ostringstream msg;
        msg << "validation residual " << residual << " exceeds " << kNotInducedThreshold;
        throw NotInduced(msg.str(), residual);
    }
    return {*a, residual, calls};
}

TransformHandle from_ray_pair(RayPair ts, Eigen::Index n, ScalarField field) {
    return TransformHandle(
        [ts = std::move(ts)](const RankOneIdempotent& p) {
            Vector tx = ts.t(p.x());
            Functional sf = ts.s(p.f());
            try {
                return rank_one_from_pair(std::move(tx), std::move(sf));
            } catch (const DegeneratePair&) {
                throw DegenerateImage("<Tx,Sf> vanishes although <x,f> = 1");
            }
        },
        n, field);
}

TransformHandle tabulated(std::vector<std::pair<RankOneIdempotent, RankOneIdempotent>> entries,
                          Eigen::Index n, ScalarField field) {
    std::vector<Matrix> keys;
    keys.reserve(entries.size());
    for (const auto& [in, out] : entries) keys.push_back(in.matrix());
    return TransformHandle(
        [keys = std::move(keys), entries = std::move(entries)](const RankOneIdempotent& p) {
            const Matrix pm = p.matrix();
            const double tol = 1e-12 * (1.0 + pm.norm());
            for (std::size_t k = 0; k < keys.size(); ++k) {
                if ((keys[k] - pm).norm() <= tol) return entries[k].second;
            }
            throw DegenerateProbe("idempotent is not covered by the probe table");
        },
        n, field);
}

} // namespace raysym
