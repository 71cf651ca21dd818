#include "raysym/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "raysym/json_io.hpp"
#include "raysym/selftest.hpp"

namespace raysym::cli {

namespace {

using io::json;

json load_json(const std::string& path) {
    if (path.empty()) throw io::ParseError("--in is required for this command");
    std::ifstream in(path);
    if (!in) throw io::ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw io::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string_view command_name(Command c) {
    switch (c) {
    case Command::Reconstruct: return "reconstruct";
    case Command::Symmetry: return "symmetry";
    case Command::Selftest: return "selftest";
    case Command::ProbeTable: return "probe-table";
    }
    return "";
}

json config_to_json(const RunConfig& c) {
    return {{"command", std::string(command_name(c.command))},
            {"n", c.n},
            {"field", std::string(to_string(c.field))},
            {"seed", c.seed},
            {"tol", c.tol},
            {"samples", c.samples}};
}

void write_report(const RunConfig& config, json payload, std::ostream& out) {
    json report = {{"version", kVersion}, {"seed", config.seed}, {"config", config_to_json(config)}};
    report.update(payload);
    const std::string text = report.dump(2) + "\n";
    if (config.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw io::ParseError("cannot write " + config.output);
    file << text;
}

void require_min_dimension(Eigen::Index n) {
    if (n < 3) throw DimensionTooSmall("dimension must be at least 3, got " + std::to_string(n));
}

struct LoadedMap {
    TransformHandle phi;
    std::size_t validation;
    std::uint64_t seed;
};

/// Reads {"phi": {...}} (or the bare phi object) as an induced map, the
/// identity, or a probe-response table.
LoadedMap load_map(const RunConfig& config) {
    const json doc = load_json(config.input);
    const json& phi = doc.contains("phi") ? doc.at("phi") : doc;
    const std::string type = phi.value("type", "");

    if (type == "induced") {
        if (!phi.contains("operator")) throw io::ParseError("induced map needs an \"operator\"");
        const auto a = io::operator_from_json(phi.at("operator"));
        require_min_dimension(a.dim());
        return {induce(a), config.samples, config.seed};
    }
    if (type == "identity") {
        const Eigen::Index n = phi.contains("n") ? phi.at("n").get<Eigen::Index>() : config.n;
        const ScalarField field = phi.contains("field") ? io::field_from_json(phi.at("field")) : config.field;
        require_min_dimension(n);
        return {identity_map(n, field), config.samples, config.seed};
    }
    if (type == "table") {
        const auto n = phi.at("n").get<Eigen::Index>();
        require_min_dimension(n);
        const ScalarField field = io::field_from_json(phi.at("field"));
        const auto seed = phi.at("seed").get<std::uint64_t>();
        const auto validation = phi.at("validation").get<std::size_t>();
        std::vector<std::pair<RankOneIdempotent, RankOneIdempotent>> entries;
        for (const auto& e : phi.at("entries")) {
            entries.emplace_back(io::rank_one_from_json(e.at("in")), io::rank_one_from_json(e.at("out")));
        }
        TransformHandle handle = tabulated(std::move(entries), n, field);
        for (const auto& p : probe_set(n, field, validation, seed)) {
            try {
                handle(p);
            } catch (const DegenerateProbe&) {
                throw io::ParseError("probe table does not cover the probe set");
            }
        }
        return {std::move(handle), validation, seed};
    }
    throw io::ParseError("phi \"type\" must be induced, identity or table");
}

json probe_listing(const TransformHandle& phi, std::size_t validation, std::uint64_t seed) {
    json protocol = json::array();
    for (const auto& p : probe_set(phi.dim(), phi.field(), 0, seed)) {
        protocol.push_back(io::idempotent_to_json(p, phi.field()));
    }
    return {{"protocol", protocol}, {"validation_count", validation}, {"validation_seed", seed}};
}

/// Maps library and parse errors onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const NotInduced& e) {
        err << "not induced: " << e.what() << "\n";
        return kRejected;
    } catch (const DegenerateProbe& e) {
        err << "degenerate probe: " << e.what() << "\n";
        return kRejected;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const json::exception& e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformed;
    }
}

} // namespace

int cmd_reconstruct(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedMap map = load_map(config);
        try {
            const auto result = reconstruct(map.phi, map.validation, map.seed);
            json payload = io::reconstruction_to_json(result);
            payload["probe_set"] = probe_listing(map.phi, map.validation, map.seed);
            write_report(config, payload, out);
            if (!config.output.empty()) {
                out << "reconstructed operator (" << to_string(result.a.automorphism())
                    << "), residual " << result.residual << ", " << result.probes_used << " probes\n";
            }
            return int{kOk};
        } catch (const NotInduced& e) {
            write_report(config, {{"error", "NotInduced"}, {"message", e.what()},
                                  {"residual", std::isnan(e.residual()) ? json(nullptr) : json(e.residual())}},
                         out);
            throw;
        }
    });
}

int cmd_symmetry(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const json doc = load_json(config.input);
        if (!doc.contains("space") || !doc.contains("operator")) {
            throw io::ParseError("symmetry input needs \"space\" and \"operator\"");
        }
        const IndefiniteSpace space = io::space_from_json(doc.at("space"));
        const auto parsed = io::operator_from_json(doc.at("operator"));
        const SemilinearOperator u(parsed.matrix(), parsed.automorphism(), space.field());
        const std::string mode = doc.value("mode", "characterize");

        if (mode == "characterize") {
            const auto ch = characterize(space, u, config.tol);
            const auto rep = is_symmetry(space, induced_ray_map(u), config.samples, config.seed, config.tol);
            write_report(config,
                         {{"space", io::space_to_json(space)},
                          {"characterization", io::characterization_to_json(ch)},
                          {"symmetry", io::symmetry_to_json(rep, space.field())}},
                         out);
            if (!config.output.empty()) {
                out << "characterization: " << io::characterization_to_json(ch).dump() << ", "
                    << rep.violations.size() << "/" << rep.pairs_tested << " sampled pairs violate\n";
            }
            return int{ch.kind == SymmetryKind::None ? kRejected : kOk};
        }
        if (mode == "recover") {
            try {
                const auto rec = recover_inducing_operator(space, induced_ray_map(u), config.samples, config.seed);
                write_report(config, io::reconstruction_to_json(rec), out);
                return int{kOk};
            } catch (const NotInduced& e) {
                write_report(config, {{"error", "NotInduced"}, {"message", e.what()}}, out);
                throw;
            }
        }
        throw io::ParseError("mode must be \"characterize\" or \"recover\"");
    });
}

int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SuiteConfig suite;
        if (config.n_given) {
            require_min_dimension(config.n);
            suite.n_max = config.n;
        }
        suite.cases = config.samples_given ? config.samples : 200;
        suite.seed = config.seed;
        if (config.tol_given) suite.tol = config.tol;
        if (suite.cases == 0) err << "warning: budget 0, every suite passes vacuously\n";

        const auto results = run_selftest(suite);
        bool all = true;
        json summary = json::array();
        for (const auto& r : results) {
            all = all && r.passed;
            out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  cases=" << r.cases
                << " failures=" << r.failures;
            if (!r.detail.empty()) out << "  (" << r.detail << ")";
            out << "\n";
            summary.push_back({{"suite", r.name}, {"passed", r.passed}, {"cases", r.cases},
                               {"failures", r.failures}, {"detail", r.detail}});
        }
        out << (all ? "all suites passed\n" : "some suites failed\n");
        if (!config.output.empty()) write_report(config, {{"suites", summary}, {"passed", all}}, out);
        return int{all ? kOk : kSuiteFailed};
    });
}

int cmd_probe_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedMap map = load_map(config);
        write_report(config, {{"phi", io::probe_table_to_json(map.phi, map.validation, map.seed)}}, out);
        return int{kOk};
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zero-product preserving maps and indefinite-space symmetry tools"};
    app.require_subcommand(1);
    RunConfig config;
    std::string field = "complex";

    struct Given {
        CLI::Option* n;
        CLI::Option* tol;
        CLI::Option* samples;
    };
    std::vector<std::pair<CLI::App*, Given>> subs;
    auto add = [&](const char* name, const char* help, Command cmd) {
        CLI::App* sub = app.add_subcommand(name, help);
        Given g{};
        g.n = sub->add_option("--n", config.n, "dimension (>= 3)");
        sub->add_option("--field", field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
        sub->add_option("--seed", config.seed, "random seed");
        g.tol = sub->add_option("--tol", config.tol, "tolerance");
        g.samples = sub->add_option("--samples", config.samples, "sample budget");
        sub->add_option("--in", config.input, "input JSON");
        sub->add_option("--out", config.output, "report path");
        sub->callback([&config, cmd] { config.command = cmd; });
        subs.emplace_back(sub, g);
    };
    add("reconstruct", "recover (A, h) from a map on rank-one idempotents", Command::Reconstruct);
    add("symmetry", "characterize or recover an indefinite-space symmetry", Command::Symmetry);
    add("selftest", "run every property suite", Command::Selftest);
    add("probe-table", "tabulate a map on the reconstruction probe set", Command::ProbeTable);

    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "raysym");
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformed;
    }
    config.field = field == "real" ? ScalarField::Real : ScalarField::Complex;
    for (const auto& [sub, g] : subs) {
        if (!sub->parsed()) continue;
        config.n_given = g.n->count() > 0;
        config.tol_given = g.tol->count() > 0;
        config.samples_given = g.samples->count() > 0;
    }

    switch (config.command) {
    case Command::Reconstruct: return cmd_reconstruct(config, out, err);
    case Command::Symmetry: return cmd_symmetry(config, out, err);
    case Command::Selftest: return cmd_selftest(config, out, err);
    case Command::ProbeTable: return cmd_probe_table(config, out, err);
    }
    return kMalformed;
}

} // namespace raysym::cli
