#include "raysym/selftest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace raysym {

namespace {

struct Combo {
    ScalarField field;
    Automorphism tag;
};

constexpr Combo kCombos[] = {
    {ScalarField::Real, Automorphism::Identity},
    {ScalarField::Complex, Automorphism::Identity},
    {ScalarField::Complex, Automorphism::Conjugation},
};

Eigen::Index case_dim(const SuiteConfig& c, std::size_t k) {
    const auto span = static_cast<std::size_t>(c.n_max - c.n_min + 1);
    return c.n_min + static_cast<Eigen::Index>(k % span);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Runs case_fn(k, rng, n) for every case; it returns an empty string on
/// success and a description otherwise. Exceptions count as failures.
template <typename Fn>
SuiteResult run_cases(std::string name, const SuiteConfig& config, std::uint64_t salt, Fn&& case_fn) {
    std::vector<std::string> outcome(config.cases);
    for_each_index(config.exec, config.cases, [&](std::size_t k) {
        Rng rng = make_stream(config.seed ^ salt, k);
        try {
            outcome[k] = case_fn(k, rng, case_dim(config, k));
        } catch (const std::exception& e) {
            outcome[k] = std::string("exception: ") + e.what();
        }
    });
    SuiteResult r;
    r.name = std::move(name);
    r.cases = config.cases;
    for (std::size_t k = 0; k < outcome.size(); ++k) {
        if (outcome[k].empty()) continue;
        if (r.failures++ == 0) r.detail = "case " + std::to_string(k) + ": " + outcome[k];
    }
    r.passed = r.failures == 0;
    return r;
}

std::string describe(const char* what, double value, double bound) {
    std::ostringstream s;
    s << what << " " << value << " exceeds " << bound;
    return s.str();
}

SemilinearOperator random_operator(Rng& rng, Eigen::Index n, Combo combo) {
    return {random_invertible(rng, n, combo.field), combo.tag, combo.field};
}

Eigen::Index random_rank(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

} // namespace

IndefiniteSpace corpus_space(Rng& rng, Eigen::Index n, std::size_t kind) {
    auto signature = [&] {
        Matrix d = Matrix::Identity(n, n);
        const Eigen::Index negatives = random_rank(rng, 1, n - 1);
        for (Eigen::Index i = n - negatives; i < n; ++i) d(i, i) = -1.0;
        return d;
    };
    auto unit_upper = [&] {
        Matrix m = Matrix::Identity(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) m(i, j) = 0.5 * random_scalar(rng, ScalarField::Real);
        }
        return m;
    };
    auto congruent = [&] {
        const Matrix w = random_invertible(rng, n, ScalarField::Complex, 20.0);
        return Matrix(w.adjoint() * signature() * w);
    };
    switch (kind % kCorpusKinds) {
    case 0:
        return {signature(), ScalarField::Real};
    case 1:
        return {unit_upper(), ScalarField::Real};
    case 2: {
        const Scalar phase = std::polar(1.0, uniform(rng, 0.3, 1.2));
        return {phase * congruent(), ScalarField::Complex};
    }
    case 3:
        return {congruent(), ScalarField::Complex};
    case 4:
        return {signature(), ScalarField::Complex};
    default:
        return {unit_upper(), ScalarField::Complex};
    }
}

bool corpus_space_is_self_adjoint(std::size_t kind) {
    const std::size_t k = kind % kCorpusKinds;
    return k == 0 || k == 3 || k == 4;
}

bool corpus_space_is_real(std::size_t kind) {
    const std::size_t k = kind % kCorpusKinds;
    return k == 0 || k == 1 || k == 4 || k == 5;
}

double distance_up_to_scalar(const Matrix& b, const Matrix& a) {
    const Matrix c = a / a.norm();
    const Scalar lambda = (c.adjoint() * b).trace(); // <c, b> with ||c|| = 1
    return (b - lambda * c).norm();
}

SuiteResult suite_round_trip(const SuiteConfig& config) {
    const double tol = config.tol.value_or(1e-7);
    return run_cases("round-trip reconstruct(induce(A))", config, 0x1001,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const Combo combo = kCombos[k % 3];
                         const auto a = random_operator(rng, n, combo);
                         const auto rec = reconstruct(induce(a), 32, config.seed + k, Execution::Serial);
                         if (rec.a.automorphism() != combo.tag) return "wrong automorphism";
                         const double err = distance_up_to_scalar(rec.a.matrix(), a.matrix());
                         return err <= tol ? "" : describe("relative error", err, tol);
                     });
}

SuiteResult suite_zero_products(const SuiteConfig& config) {
    const double tol = config.tol.value_or(kDefaultProductTolerance);
    SuiteResult r = run_cases("zero-product preservation", config, 0x2002,
                              [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                                  const auto phi = induce(random_operator(rng, n, kCombos[k % 3]));
                                  const auto rep = check_preservation(phi, 1000, config.seed + k, tol,
                                                                      Execution::Serial);
                                  if (rep.violations.empty()) return "";
                                  return std::to_string(rep.violations.size()) + " violations";
                              });
    if (config.cases > 0) {
        const auto rep = check_preservation(transpose_map(3, ScalarField::Real), 1000, config.seed,
                                            tol, config.exec);
        ++r.cases;
        if (rep.violations.empty()) {
            if (r.failures++ == 0) r.detail = "transpose map shows no violation";
            r.passed = false;
        }
    }
    return r;
}

SuiteResult suite_trace_identity(const SuiteConfig& config) {
    const double tol = config.tol.value_or(1e-8);
    return run_cases("trace identity tr ext(P)ext(Q) = h(tr PQ)", config, 0x3003,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const Combo combo = kCombos[k % 3];
                         const auto a = random_operator(rng, n, combo);
                         const auto phi = induce(a);
                         const auto p = FiniteRankIdempotent::from_matrix(
                             random_idempotent(rng, n, random_rank(rng, 1, n - 1), combo.field).matrix);
                         const auto q = FiniteRankIdempotent::from_matrix(
                             random_idempotent(rng, n, random_rank(rng, 1, n - 1), combo.field).matrix);
                         const Scalar lhs = trace(extend(phi, p).matrix() * extend(phi, q).matrix());
                         const Scalar rhs = apply_auto(combo.tag, trace(p.matrix() * q.matrix()));
                         const double err = std::abs(lhs - rhs);
                         return err <= tol ? "" : describe("trace mismatch", err, tol);
                     });
}

SuiteResult suite_extension(const SuiteConfig& config) {
    const double tol = config.tol.value_or(1e-8);
    return run_cases("extension well-definedness", config, 0x4004,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const Combo combo = kCombos[k % 3];
                         const auto phi = induce(random_operator(rng, n, combo));
                         const Eigen::Index rank = std::min<Eigen::Index>(2 + static_cast<Eigen::Index>(k % 2), n - 1);
                         const auto fp = random_idempotent(rng, n, rank, combo.field);
                         const Matrix w = random_invertible(rng, rank, combo.field, 20.0);
                         const Matrix u = fp.range * w;
                         const Matrix g = w.partialPivLu().inverse() * fp.coranges;
                         std::vector<RankOneIdempotent> alternative;
                         for (Eigen::Index i = 0; i < rank; ++i) {
                             alternative.push_back(rank_one_from_pair(Vector(u.col(i)),
                                                                      Functional(g.row(i).transpose())));
                         }
                         const auto p = FiniteRankIdempotent::from_matrix(fp.matrix);
                         const Matrix first = extend(phi, p).matrix();
                         const Matrix second = extend(phi, std::span<const RankOneIdempotent>(alternative)).matrix();
                         const double err = (first - second).norm();
                         return err <= tol ? "" : describe("decompositions disagree by", err, tol);
                     });
}

SuiteResult suite_majorant(const SuiteConfig& config) {
    return run_cases("majorant P1, P2 <= P", config, 0x5005,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const ScalarField field = kCombos[k % 3].field;
                         const auto p1 = FiniteRankIdempotent::from_matrix(
                             random_idempotent(rng, n, random_rank(rng, 1, n - 1), field).matrix);
                         const auto p2 = FiniteRankIdempotent::from_matrix(
                             random_idempotent(rng, n, random_rank(rng, 1, n - 1), field).matrix);
                         const auto p = majorant(p1, p2);
                         const double tol1 = config.tol.value_or(-1.0);
                         if (!relate(p1, p, tol1).p_leq_q) return "P1 <= P fails";
                         if (!relate(p2, p, tol1).p_leq_q) return "P2 <= P fails";
                         return "";
                     });
}

SuiteResult suite_isometry_sufficiency(const SuiteConfig& config) {
    const double tol = config.tol.value_or(1e-8);
    return run_cases("eta-isometries are symmetries", config, 0x6006,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const auto space = corpus_space(rng, n, k);
                         const double c = uniform(rng, 0.5, 4.0);
                         const auto v = generate_eta_isometry(space, config.seed + k, c);
                         const auto rep = is_symmetry(space, induced_ray_map(v), 200, config.seed + k,
                                                      config.tol.value_or(1e-8), Execution::Serial);
                         if (!rep.violations.empty()) {
                             return std::to_string(rep.violations.size()) + " symmetry violations";
                         }
                         const auto ch = characterize(space, v, config.tol.value_or(1e-8));
                         if (ch.kind != SymmetryKind::Linear) return "characterize did not find a linear symmetry";
                         const double err = std::abs(ch.constant - Scalar(c, 0.0));
                         return err <= tol ? "" : describe("constant error", err, tol);
                     });
}

SuiteResult suite_necessity(const SuiteConfig& config) {
    return run_cases("generic operators are not symmetries", config, 0x7007,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         const auto space = corpus_space(rng, n, k);
                         const Automorphism tag = space.field() == ScalarField::Complex && k % 2 == 1
                                                      ? Automorphism::Conjugation
                                                      : Automorphism::Identity;
                         const SemilinearOperator u(random_invertible(rng, n, space.field()), tag, space.field());
                         const auto ch = characterize(space, u, config.tol.value_or(1e-8));
                         if (ch.kind != SymmetryKind::None) return "generic operator characterized as a symmetry";
                         const auto rep = is_symmetry(space, induced_ray_map(u), 200, config.seed + k,
                                                      config.tol.value_or(1e-8), Execution::Serial);
                         return rep.violations.empty() ? "no violation found" : "";
                     });
}

SuiteResult suite_recovery(const SuiteConfig& config) {
    const double tol = config.tol.value_or(1e-6);
    return run_cases("recover inducing operator", config, 0x8008,
                     [&](std::size_t k, Rng& rng, Eigen::Index n) -> std::string {
                         // Odd cases use a conjugate-linear symmetry (V, conj) on a real eta.
                         const bool conj = k % 2 == 1;
                         const std::size_t kind = conj ? (k / 2) % 2 + 4 : k / 2;
                         const auto space = corpus_space(rng, n, kind);
                         const auto v = generate_eta_isometry(space, config.seed + k, uniform(rng, 0.5, 4.0));
                         const SemilinearOperator u(v.matrix(),
                                                    conj ? Automorphism::Conjugation : Automorphism::Identity,
                                                    space.field());
                         const auto rec = recover_inducing_operator(space, induced_ray_map(u), 32,
                                                                    config.seed + k, Execution::Serial);
                         if (rec.a.automorphism() != u.automorphism()) return "wrong automorphism";
                         const double err = distance_up_to_scalar(rec.a.matrix(), u.matrix());
                         return err <= tol ? "" : describe("relative error", err, tol);
                     });
}

std::vector<SuiteResult> run_selftest(const SuiteConfig& config) {
    return {suite_round_trip(config),       suite_zero_products(config),
            suite_trace_identity(config),   suite_extension(config),
            suite_majorant(config),         suite_isometry_sufficiency(config),
            suite_necessity(config),        suite_recovery(config)};
}

} // namespace raysym
