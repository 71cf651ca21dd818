#pragma once

// JSON schemas shared by every command:
//   matrix      {"field": "real"|"complex", "n": int, "data": [row-major entries]}
//               complex entries are [re, im]; "data" may also be nested rows
//   operator    matrix + {"auto": "id"|"conj"}
//   idempotent  matrix + {"kind": "rank1"|"finite_rank"}; rank1 adds "x", "f"
//   space       {"n": int, "field": ..., "eta": matrix}

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "raysym/indefinite.hpp"
#include "raysym/transform.hpp"

namespace raysym::io {

using nlohmann::json;

class ParseError : public Error {
public:
    using Error::Error;
};

ScalarField field_from_json(const json& j);
Automorphism automorphism_from_json(const json& j);

json scalar_to_json(Scalar value, ScalarField field);
Scalar scalar_from_json(const json& j);

json coords_to_json(const Coords& v, ScalarField field);
Coords coords_from_json(const json& j, Eigen::Index n);

json matrix_to_json(const Matrix& m, ScalarField field);
std::pair<Matrix, ScalarField> matrix_from_json(const json& j);

json operator_to_json(const SemilinearOperator& a);
SemilinearOperator operator_from_json(const json& j);

json idempotent_to_json(const RankOneIdempotent& p, ScalarField field);
json idempotent_to_json(const FiniteRankIdempotent& p, ScalarField field);
RankOneIdempotent rank_one_from_json(const json& j);
FiniteRankIdempotent finite_rank_from_json(const json& j);

json space_to_json(const IndefiniteSpace& space);
IndefiniteSpace space_from_json(const json& j);

json reconstruction_to_json(const ReconstructionResult& r);
json preservation_to_json(const PreservationReport& r, ScalarField field);
json symmetry_to_json(const SymmetryReport& r, ScalarField field);
json characterization_to_json(const Characterization& c);

/// {"type": "table", "n", "field", "seed", "validation", "entries": [{"in", "out"}]}
json probe_table_to_json(const TransformHandle& phi, std::size_t validation_count,
                         std::uint64_t seed);

} // namespace raysym::io
