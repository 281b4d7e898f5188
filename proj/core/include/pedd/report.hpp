#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pedd/curve_topology.hpp"
#include "pedd/ed_systems.hpp"

namespace pedd {

inline constexpr const char* kToolName = "peddeg";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 7;

struct ConsistencyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct PathDiagnostic {
    int index = 0;
    std::string status;
    int steps = 0;
    double residual = 0.0;
    std::optional<int> cluster_id;
};

struct PipelinePaths {
    std::string name;
    std::vector<PathDiagnostic> paths;
};

/// The per-variety result record certifying agreement of the pipelines.
struct EDReport {
    std::string poly_text;
    std::string canonical_poly;
    std::vector<std::string> variables;
    int projective_dimension = 0;  // n
    int degree = 0;
    std::uint64_t seed = 0;
    std::vector<GaussianRational> beta;  // the beta the cone pipeline settled on
    int ped_numeric = 0;
    std::optional<int> ped_double_cover_half;
    std::optional<int> ped_topological;
    CountReport cone;
    std::optional<CountReport> cover;
    std::optional<TopologyReport> topology;
    std::optional<long> strata_weighted_chi;
    std::vector<ConsistencyCheck> consistency;
    std::int64_t cone_ms = 0, cover_ms = 0, topology_ms = 0;
    std::string tool_version = kToolVersion;
    std::vector<PipelinePaths> path_diagnostics;

    bool all_checks_pass() const {
        for (const auto& c : consistency)
            if (!c.pass) return false;
        return true;
    }
    int failed_paths() const;
};

struct RunOptions {
    std::string poly_text;
    std::vector<std::string> variables;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::vector<GaussianRational>> beta_override;
    bool complex_beta = false;
    bool skip_cover = false;
    std::optional<std::string> singularity_file;
    std::optional<std::string> strata_file;
    double tolerance = 1e-10;
    bool paths_report = false;
    bool timings = false;
    int workers = 0;
};

/// Runs the cone pipeline, the double-cover pipeline (unless skipped), and
/// the topological pipeline (plane curves, or any dimension via a strata
/// file), and fills in the consistency verdicts.
EDReport run_variety(const RunOptions& options);

/// Built-in example registry.
struct ExampleSpec {
    std::string name;
    std::string poly_text;
    std::vector<std::string> variables;
    int expected_ped = 0;
};
const std::vector<ExampleSpec>& example_registry();
const ExampleSpec* find_example(const std::string& name);

struct SuiteRow {
    std::string name;
    int expected = 0;
    int computed = 0;
    bool consistent = false;
    bool pass = false;
};

struct SuiteResult {
    std::vector<SuiteRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Runs every registry example and compares against the expected counts.
SuiteResult run_suite(std::uint64_t seed = kDefaultSeed, int workers = 0);

/// Deterministic human-readable report; timings only when opts.timings.
std::string render_text(const EDReport& r, const RunOptions& opts);
/// Deterministic JSON document (insertion-ordered keys).
std::string render_json(const EDReport& r, const RunOptions& opts);

std::string render_suite_text(const SuiteResult& s);
std::string render_suite_json(const SuiteResult& s);

/// CLI exit policy: 0 all checks pass, 2 genericity exhaustion, 3 unsupported
/// singularity, 4 solver failure budget exceeded (any failed path), 1 other.
int exit_code_for(const EDReport& r);

/// Parses "3/4,-1,2" style comma lists of rational (optionally complex) entries.
std::vector<GaussianRational> parse_rational_list(const std::string& text);

}  // namespace pedd
