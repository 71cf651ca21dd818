#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raysym/indefinite.hpp"
#include "raysym/parallel.hpp"
#include "raysym/random.hpp"

namespace raysym {

/// Indefinite spaces used by the property suites. Kinds cycle through:
///   0 real signature diag(+-1)                   (real field)
///   1 I + strictly upper triangular, real         (real field, not self-adjoint)
///   2 e^{i theta} W* D W                          (complex, not self-adjoint)
///   3 W* D W, Hermitian indefinite                (complex)
///   4 as kind 0 over the complex field
///   5 as kind 1 over the complex field            (not self-adjoint)
IndefiniteSpace corpus_space(Rng& rng, Eigen::Index n, std::size_t kind);
inline constexpr std::size_t kCorpusKinds = 6;
bool corpus_space_is_self_adjoint(std::size_t kind);
/// True when eta has real entries, so (V, conj) is a symmetry for every eta-isometry V.
bool corpus_space_is_real(std::size_t kind);

/// min over lambda of ||b - lambda a / ||a||_F||_F, for b of unit norm.
double distance_up_to_scalar(const Matrix& b, const Matrix& a);

struct SuiteConfig {
    Eigen::Index n_min = 3;
    Eigen::Index n_max = 6;
    std::size_t cases = 200;
    std::uint64_t seed = 42;
    std::optional<double> tol; ///< replaces every suite's own tolerance when set
    Execution exec = Execution::Parallel;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string detail; ///< first failure, if any
};

SuiteResult suite_round_trip(const SuiteConfig& config);
SuiteResult suite_zero_products(const SuiteConfig& config);
SuiteResult suite_trace_identity(const SuiteConfig& config);
SuiteResult suite_extension(const SuiteConfig& config);
SuiteResult suite_majorant(const SuiteConfig& config);
SuiteResult suite_isometry_sufficiency(const SuiteConfig& config);
SuiteResult suite_necessity(const SuiteConfig& config);
SuiteResult suite_recovery(const SuiteConfig& config);

std::vector<SuiteResult> run_selftest(const SuiteConfig& config);

} // namespace raysym
