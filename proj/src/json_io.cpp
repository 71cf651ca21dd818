#include "raysym/json_io.hpp"

#include <cmath>

namespace raysym::io {

namespace {

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

Eigen::Index dimension_from_json(const json& j) {
    const json& n = member(j, "n");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw ParseError("\"n\" must be a positive integer");
    return static_cast<Eigen::Index>(n.get<long long>());
}

} // namespace

ScalarField field_from_json(const json& j) {
    if (j == "real") return ScalarField::Real;
    if (j == "complex") return ScalarField::Complex;
    throw ParseError("field must be \"real\" or \"complex\"");
}

Automorphism automorphism_from_json(const json& j) {
    if (j == "id") return Automorphism::Identity;
    if (j == "conj") return Automorphism::Conjugation;
    throw ParseError("auto must be \"id\" or \"conj\"");
}

json scalar_to_json(Scalar value, ScalarField field) {
    if (field == ScalarField::Real) return value.real();
    return json::array({value.real(), value.imag()});
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError("scalar must be a number or a [re, im] pair");
}

json coords_to_json(const Coords& v, ScalarField field) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i), field));
    return out;
}

Coords coords_from_json(const json& j, Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
        throw ParseError("expected an array of " + std::to_string(n) + " scalars");
    }
    Coords v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scalar_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

json matrix_to_json(const Matrix& m, ScalarField field) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(scalar_to_json(m(i, j), field));
    }
    return {{"field", std::string(to_string(field))}, {"n", m.rows()}, {"data", data}};
}

std::pair<Matrix, ScalarField> matrix_from_json(const json& j) {
    const ScalarField field = field_from_json(member(j, "field"));
    const Eigen::Index n = dimension_from_json(j);
    const json& data = member(j, "data");
    if (!data.is_array()) throw ParseError("\"data\" must be an array");

    std::vector<json> flat;
    // Nested rows: n arrays of n entries. Flat: n*n entries (n > 1 keeps these apart).
    const bool nested = n > 1 && static_cast<Eigen::Index>(data.size()) == n &&
                        data[0].is_array() && static_cast<Eigen::Index>(data[0].size()) == n;
    if (nested) {
        for (const auto& row : data) {
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
                throw ParseError("matrix rows must have n entries");
            }
            for (const auto& e : row) flat.push_back(e);
        }
    } else {
        flat.assign(data.begin(), data.end());
    }
    if (static_cast<Eigen::Index>(flat.size()) != n * n) {
        throw ParseError("matrix data must hold n*n entries");
    }
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m(i, k) = scalar_from_json(flat[static_cast<std::size_t>(i * n + k)]);
        }
    }
    if (field == ScalarField::Real && !is_real(m)) throw ParseError("complex entry in a real matrix");
    return {std::move(m), field};
}

json operator_to_json(const SemilinearOperator& a) {
    json out = matrix_to_json(a.matrix(), a.field());
    out["auto"] = std::string(to_string(a.automorphism()));
    return out;
}

SemilinearOperator operator_from_json(const json& j) {
    auto [m, field] = matrix_from_json(j);
    const Automorphism tag = j.contains("auto") ? automorphism_from_json(j.at("auto"))
                                                : Automorphism::Identity;
    return {std::move(m), tag, field};
}

json idempotent_to_json(const RankOneIdempotent& p, ScalarField field) {
    json out = matrix_to_json(p.matrix(), field);
    out["kind"] = "rank1";
    out["x"] = coords_to_json(p.x().coords, field);
    out["f"] = coords_to_json(p.f().coords, field);
    return out;
}

json idempotent_to_json(const FiniteRankIdempotent& p, ScalarField field) {
    json out = matrix_to_json(p.matrix(), field);
    out["kind"] = "finite_rank";
    return out;
}

RankOneIdempotent rank_one_from_json(const json& j) {
    if (member(j, "kind") != "rank1") throw ParseError("expected a rank1 idempotent");
    const Eigen::Index n = dimension_from_json(j);
    return rank_one_from_pair(Vector(coords_from_json(member(j, "x"), n)),
                              Functional(coords_from_json(member(j, "f"), n)));
}

FiniteRankIdempotent finite_rank_from_json(const json& j) {
    const auto kind = member(j, "kind");
    if (kind == "rank1") return FiniteRankIdempotent::from_rank_one(rank_one_from_json(j));
    if (kind != "finite_rank") throw ParseError("unknown idempotent kind");
    return FiniteRankIdempotent::from_matrix(matrix_from_json(j).first);
}

json space_to_json(const IndefiniteSpace& space) {
    return {{"n", space.dim()},
            {"field", std::string(to_string(space.field()))},
            {"eta", matrix_to_json(space.eta(), space.field())}};
}

IndefiniteSpace space_from_json(const json& j) {
    auto [eta, eta_field] = matrix_from_json(member(j, "eta"));
    const ScalarField field = j.contains("field") ? field_from_json(j.at("field")) : eta_field;
    if (j.contains("n") && dimension_from_json(j) != eta.rows()) {
        throw ParseError("space \"n\" does not match eta");
    }
    return {std::move(eta), field};
}

json reconstruction_to_json(const ReconstructionResult& r) {
    return {{"A", operator_to_json(r.a)},
            {"auto", std::string(to_string(r.a.automorphism()))},
            {"residual", r.residual},
            {"probes", r.probes_used}};
}

json preservation_to_json(const PreservationReport& r, ScalarField field) {
    json violations = json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"P", idempotent_to_json(v.p, field)},
                              {"Q", idempotent_to_json(v.q, field)},
                              {"source_product", v.source_product},
                              {"image_product", v.image_product}});
    }
    return {{"violations", violations}, {"pairs", r.pairs_tested}};
}

json symmetry_to_json(const SymmetryReport& r, ScalarField field) {
    json violations = json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"x", coords_to_json(v.x.representative().coords, field)},
                              {"y", coords_to_json(v.y.representative().coords, field)},
                              {"source_product", v.source_product},
                              {"image_product", v.image_product}});
    }
    return {{"violations", violations}, {"pairs", r.pairs_tested}};
}

json characterization_to_json(const Characterization& c) {
    const char* kind = c.kind == SymmetryKind::Linear      ? "linear"
                       : c.kind == SymmetryKind::Conjugate ? "conjugate"
                                                           : "none";
    return {{"kind", kind}, {"constant", json::array({c.constant.real(), c.constant.imag()})}};
}

json probe_table_to_json(const TransformHandle& phi, std::size_t validation_count,
                         std::uint64_t seed) {
    json entries = json::array();
    for (const auto& p : probe_set(phi.dim(), phi.field(), validation_count, seed)) {
        entries.push_back({{"in", idempotent_to_json(p, phi.field())},
                           {"out", idempotent_to_json(phi(p), phi.field())}});
    }
    return {{"type", "table"},
            {"n", phi.dim()},
            {"field", std::string(to_string(phi.field()))},
            {"seed", seed},
            {"validation", validation_count},
            {"entries", entries}};
}

} // namespace raysym::io
