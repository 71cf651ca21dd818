#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "raysym/linalg.hpp"

namespace raysym::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kMalformed = 1,
    kRejected = 2, ///< NotInduced / NotSymmetry
    kSuiteFailed = 3,
};

enum class Command { Reconstruct, Symmetry, Selftest, ProbeTable };

struct RunConfig {
    Command command = Command::Selftest;
    std::string input;
    std::string output;
    Eigen::Index n = 3;
    bool n_given = false;
    ScalarField field = ScalarField::Complex;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    bool tol_given = false;
    std::size_t samples = 500;
    bool samples_given = false;
};

/// Parses argv and runs the chosen command. Human-readable output goes to
/// `out`, diagnostics to `err`; reports go to --out (or `out` without it).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_reconstruct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_symmetry(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_probe_table(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace raysym::cli
