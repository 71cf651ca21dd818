// Acceptance run: every criterion at full budget, one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "raysym/cli.hpp"
#include "raysym/random.hpp"
#include "raysym/selftest.hpp"
#include "support.hpp"

using namespace raysym;
using namespace testing_support;

namespace {

struct Combo {
    ScalarField field;
    Automorphism tag;
};
constexpr Combo kCombos[] = {{ScalarField::Real, Automorphism::Identity},
                             {ScalarField::Complex, Automorphism::Identity},
                             {ScalarField::Complex, Automorphism::Conjugation}};

Eigen::Index dim_3_to_8(std::size_t k) { return 3 + static_cast<Eigen::Index>(k % 6); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

struct Tally {
    std::size_t failures = 0;
    std::string first;
    void fail(std::size_t k, const std::string& why) {
        if (failures++ == 0) first = "instance " + std::to_string(k) + ": " + why;
    }
};


bool report(int id, const std::string& what, const Tally& t, double seconds, double limit = 0.0) {
    const bool in_time = limit <= 0.0 || seconds < limit;
    const bool ok = t.failures == 0 && in_time;
    std::printf("criterion %d: %s  %s  failures=%zu  %.2fs%s%s\n", id, ok ? "PASS" : "FAIL", what.c_str(),
                t.failures, seconds, in_time ? "" : " (over time limit)",
                t.first.empty() ? "" : ("  [" + t.first + "]").c_str());
    std::fflush(stdout);
    return ok;
}

template <typename Fn>
double timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

FiniteRankIdempotent fr(const Matrix& m) { return FiniteRankIdempotent::from_matrix(m); }

bool criterion_round_trip() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 100; ++k) {
            Rng rng = make_stream(1001, k);
            const Combo c = kCombos[k % 3];
            const Eigen::Index n = dim_3_to_8(k / 3 + k);
            const SemilinearOperator a(random_invertible(rng, n, c.field), c.tag, c.field);
            const auto rec = reconstruct(induce(a), 64, k);
            if (rec.a.automorphism() != c.tag) t.fail(k, "wrong automorphism");
            const double err = scalar_gap(rec.a.matrix(), a.matrix());
            if (err > 1e-7) t.fail(k, "relative error " + num(err));
        }
    });
    return report(1, "round trip of 100 operators, n=3..8, all field/tag combinations, error <= 1e-7", t, s, 30.0);
}

bool criterion_zero_products() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 30; ++k) {
            Rng rng = make_stream(2002, k);
            const Combo c = kCombos[k % 3];
            const Eigen::Index n = dim_3_to_8(k);
            const SemilinearOperator a(random_invertible(rng, n, c.field), c.tag, c.field);
            const auto phi = induce(a);
            const auto rep = check_preservation(phi, 1000, k);
            if (rep.pairs_tested != 1000) t.fail(k, "sampled " + std::to_string(rep.pairs_tested) + " pairs");
            if (!rep.violations.empty()) t.fail(k, std::to_string(rep.violations.size()) + " violations");
            // Independent check on crafted pairs: <y,f> = 0 gives PQ = 0 for P = x(x)f, Q = y(x)g,
            // and the image product computed from A h(P) A^-1 must vanish too.
            for (int j = 0; j < 50; ++j) {
                const auto p = random_rank_one(rng, n, c.field);
                const Coords f = p.f().coords;
                Coords y = random_coords(rng, n, c.field);
                y -= (y.transpose() * f)(0) / f.squaredNorm() * f.conjugate();
                Coords g = random_coords(rng, n, c.field);
                if (std::abs((y.transpose() * g)(0)) < 0.1 * y.norm() * g.norm()) g += y.conjugate();
                const auto q = rank_one_from_pair(Vector(y), Functional(g));
                const bool conj = c.tag == Automorphism::Conjugation;
                const Matrix img = conjugated(a.matrix(), conj, p.matrix()) * conjugated(a.matrix(), conj, q.matrix());
                const double rel = img.norm() / (phi(p).matrix().norm() * phi(q).matrix().norm());
                if (rel > 1e-8) t.fail(k, "crafted pair image product " + num(rel));
            }
        }
        const auto rep = check_preservation(transpose_map(3, ScalarField::Real), 1000, 7);
        if (rep.violations.empty()) t.fail(30, "transpose map shows no violation at n=3");
    });
    return report(2, "30 induced maps x 1000 pairs with 0 violations; transpose at n=3 violates", t, s);
}

bool criterion_trace_identity() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 12; ++k) {
            Rng rng = make_stream(3003, k);
            const Combo c = kCombos[k % 3];
            const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 6);
            const SemilinearOperator a(random_invertible(rng, n, c.field), c.tag, c.field);
            const auto phi = induce(a);
            std::uniform_int_distribution<Eigen::Index> rank(1, n - 1);
            for (int j = 0; j < 200; ++j) {
                const Matrix p = random_idempotent(rng, n, rank(rng), c.field).matrix;
                const Matrix q = random_idempotent(rng, n, rank(rng), c.field).matrix;
                const Matrix ep = extend(phi, fr(p)).matrix();
                const Matrix eq = extend(phi, fr(q)).matrix();
                const Scalar lhs = trace(ep * eq);
                const Scalar rhs = c.tag == Automorphism::Conjugation ? std::conj((p * q).trace()) : (p * q).trace();
                if (std::abs(lhs - rhs) > 1e-8) t.fail(k, "trace gap " + num(std::abs(lhs - rhs)));
                // The extension must agree with A h(P) A^-1 itself.
                const Matrix direct = conjugated(a.matrix(), c.tag == Automorphism::Conjugation, p);
                if ((ep - direct).norm() > 1e-8 * (1 + direct.norm())) t.fail(k, "extension differs from A h(P) A^-1");
            }
        }
    });
    return report(3, "trace identity over 12 maps x 200 idempotent pairs, tolerance 1e-8", t, s);
}

bool criterion_extension() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 100; ++k) {
            Rng rng = make_stream(4004, k);
            const Combo c = kCombos[k % 3];
            const Eigen::Index n = 4 + static_cast<Eigen::Index>(k % 5);
            const Eigen::Index rank = 2 + static_cast<Eigen::Index>(k % 2);
            const auto phi = induce(SemilinearOperator(random_invertible(rng, n, c.field), c.tag, c.field));
            const auto fp = random_idempotent(rng, n, rank, c.field);
            // Two independent decompositions: the generator's factors and a random change of basis.
            std::vector<RankOneIdempotent> first, second;
            const Matrix w = random_invertible(rng, rank, c.field, 20.0);
            const Matrix u = fp.range * w;
            const Matrix g = w.fullPivLu().inverse() * fp.coranges;
            for (Eigen::Index i = 0; i < rank; ++i) {
                first.push_back(rank_one_from_pair(Vector(fp.range.col(i)), Functional(fp.coranges.row(i).transpose())));
                second.push_back(rank_one_from_pair(Vector(u.col(i)), Functional(g.row(i).transpose())));
            }
            const Matrix a = extend(phi, std::span<const RankOneIdempotent>(first)).matrix();
            const Matrix b = extend(phi, std::span<const RankOneIdempotent>(second)).matrix();
            const Matrix d = extend(phi, fr(fp.matrix)).matrix();
            const double gap = std::max((a - b).norm(), (a - d).norm());
            if (gap > 1e-8) t.fail(k, "decompositions disagree by " + num(gap));
        }
    });
    return report(4, "100 rank-2/3 idempotents, independent decompositions agree to 1e-8", t, s);
}

bool criterion_majorant() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 200; ++k) {
            Rng rng = make_stream(5005, k);
            const Eigen::Index n = dim_3_to_8(k);
            const ScalarField field = k % 2 ? ScalarField::Complex : ScalarField::Real;
            std::uniform_int_distribution<Eigen::Index> rank(1, n - 1);
            const auto p1 = fr(random_idempotent(rng, n, rank(rng), field).matrix);
            const auto p2 = fr(random_idempotent(rng, n, rank(rng), field).matrix);
            const auto p = majorant(p1, p2);
            if (!relate(p1, p).p_leq_q) t.fail(k, "P1 <= P fails");
            if (!relate(p2, p).p_leq_q) t.fail(k, "P2 <= P fails");
        }
    });
    return report(5, "majorant dominates both inputs for 200 pairs, n=3..8", t, s);
}

bool criterion_sufficiency() {
    Tally t;
    std::size_t non_self_adjoint = 0;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 50; ++k) {
            Rng rng = make_stream(6006, k);
            const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 5);
            const auto space = corpus_space(rng, n, k);
            if ((space.eta() - space.eta().adjoint()).norm() > 1e-12) ++non_self_adjoint;
            const double c = uniform(rng, 0.5, 4.0);
            const auto v = generate_eta_isometry(space, k, c);
            const double defect = (v.matrix().adjoint() * space.eta() * v.matrix() - c * space.eta()).norm();
            if (defect > 1e-9 * c * space.eta().norm()) t.fail(k, "V* eta V - c eta = " + num(defect));
            const auto rep = is_symmetry(space, induced_ray_map(v), 500, k);
            if (!rep.violations.empty()) t.fail(k, std::to_string(rep.violations.size()) + " violations");
            const auto ch = characterize(space, v);
            if (ch.kind != SymmetryKind::Linear) t.fail(k, "not characterized as linear");
            if (std::abs(ch.constant - Scalar(c)) > 1e-8) t.fail(k, "constant off by " + num(std::abs(ch.constant - c)));
        }
        if (non_self_adjoint < 10) t.fail(50, "only " + std::to_string(non_self_adjoint) + " non-self-adjoint eta");
    });
    return report(6, "50 eta-isometries (" + std::to_string(non_self_adjoint) +
                         " with non-self-adjoint eta) are symmetries with constant c to 1e-8",
                  t, s);
}

bool criterion_necessity() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 50; ++k) {
            Rng rng = make_stream(7007, k);
            const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 5);
            const auto space = corpus_space(rng, n, k);
            const auto tag = space.field() == ScalarField::Complex && k % 2 ? Automorphism::Conjugation
                                                                            : Automorphism::Identity;
            const SemilinearOperator u(random_invertible(rng, n, space.field()), tag, space.field());
            if (characterize(space, u).kind != SymmetryKind::None) t.fail(k, "generic operator accepted");
            if (is_symmetry(space, induced_ray_map(u), 500, k).violations.empty()) t.fail(k, "no violation found");
        }
    });
    return report(7, "50 generic operators rejected, each with a sampled violation", t, s);
}

bool criterion_recovery() {
    Tally t;
    const double s = timed([&] {
        for (std::size_t k = 0; k < 50; ++k) {
            Rng rng = make_stream(8008, k);
            const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 5);
            const bool conj = k % 2 == 1;
            // A conjugate-linear symmetry needs a real eta, so odd instances use the real corpus kinds.
            const auto space = corpus_space(rng, n, conj ? 4 + (k / 2) % 2 : k / 2);
            const auto v = generate_eta_isometry(space, k, uniform(rng, 0.5, 4.0));
            const SemilinearOperator u(v.matrix(), conj ? Automorphism::Conjugation : Automorphism::Identity,
                                       space.field());
            const auto rec = recover_inducing_operator(space, induced_ray_map(u), 64, k);
            if (rec.a.automorphism() != u.automorphism()) t.fail(k, "wrong automorphism");
            const double err = scalar_gap(rec.a.matrix(), u.matrix());
            if (err > 1e-6) t.fail(k, "relative error " + num(err));
        }
    });
    return report(8, "50 recoveries over both tags, error <= 1e-6", t, s);
}

bool criterion_selftest() {
    Tally t;
    std::ostringstream out, err;
    int code = -1;
    const double s = timed([&] { code = cli::run({"selftest"}, out, err); });
    if (code != cli::kOk) t.fail(0, "exit code " + std::to_string(code) + ": " + out.str());
    return report(9, "selftest with default budgets (n=3..6, 200 cases) exits 0", t, s, 60.0);
}

bool guarded(const std::function<bool()>& fn, int id) {
    try {
        return fn();
    } catch (const std::exception& e) {
        std::printf("criterion %d: FAIL  unexpected exception: %s\n", id, e.what());
        return false;
    }
}

} // namespace

int main() {
    const std::function<bool()> criteria[] = {criterion_round_trip, criterion_zero_products, criterion_trace_identity,
                                              criterion_extension,  criterion_majorant,       criterion_sufficiency,
                                              criterion_necessity,  criterion_recovery,       criterion_selftest};
    int failed = 0;
    int id = 1;
    for (const auto& c : criteria) failed += guarded(c, id++) ? 0 : 1;
    std::printf("%s: %d of 9 criteria passed\n", failed == 0 ? "ACCEPTED" : "REJECTED", 9 - failed);
    return failed == 0 ? 0 : 1;
}
