// Command-line front end: computes the projective Euclidean distance degree
// of a hypersurface by independent pipelines and cross-checks the results.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "pedd/errors.hpp"
#include "pedd/report.hpp"

namespace {

// "--seed random" opts into entropy; anything else must be a u64
std::uint64_t resolve_seed(const std::string& text) {
    if (text == "random") return std::random_device{}();
    std::istringstream is(text);
    std::uint64_t s = 0;
    if (!(is >> s) || !is.eof()) throw CLI::ValidationError("--seed", "expects a u64 or 'random'");
    return s;
}

int run_command(pedd::RunOptions opts, bool json) {
    try {
        pedd::EDReport report = pedd::run_variety(opts);
        std::cout << (json ? pedd::render_json(report, opts) : pedd::render_text(report, opts));
        return pedd::exit_code_for(report);
    } catch (const pedd::GenericityError& e) {
        std::cerr << "genericity error: " << e.what() << "\n";
        return 2;
    } catch (const pedd::UnsupportedSingularityError& e) {
        std::cerr << "unsupported singularity: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projective Euclidean distance degree calculator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "compute the ED degree of one variety");
    std::string poly_text, vars_text, seed_text = std::to_string(pedd::kDefaultSeed);
    std::string beta_text, example_name, singularity_file, strata_file;
    double tolerance = 1e-10;
    bool skip_cover = false, complex_beta = false, json = false, paths_report = false,
         timings = false;
    int workers = 0;
    run->add_option("--poly", poly_text, "defining homogeneous polynomial");
    run->add_option("--vars", vars_text, "comma-separated variable names");
    run->add_option("--seed", seed_text, "u64 seed or 'random'")->capture_default_str();
    run->add_option("--beta", beta_text, "comma list of rationals overriding beta sampling");
    run->add_flag("--skip-cover", skip_cover, "skip the double-cover pipeline");
    run->add_option("--example", example_name,
                    "built-in example (nodal-cubic-1, nodal-cubic-2, tangent-cubic, "
                    "whitney-surface, hyperplane, smooth-conic)");
    run->add_option("--singularities", singularity_file,
                    "file of `p0:p1:p2 m r delta` lines for singularities beyond node/cusp");
    run->add_option("--strata", strata_file,
                    "strata file (`label chi eu` lines) for the topological side");
    run->add_option("--tolerance", tolerance, "Newton tolerance of the tracker")->capture_default_str();
    run->add_flag("--complex-beta", complex_beta, "sample beta with complex rational entries");
    run->add_flag("--json", json, "machine-readable report");
    run->add_flag("--paths-report", paths_report, "per-path diagnostics in the report");
    run->add_flag("--timings", timings, "include wall-clock timings (breaks byte determinism)");
    run->add_option("--workers", workers, "path-tracking threads (0 = hardware)")->capture_default_str();

    // suite
    auto* suite = app.add_subcommand("suite", "run the built-in example suite");
    std::string suite_seed_text = std::to_string(pedd::kDefaultSeed);
    bool suite_json = false;
    int suite_workers = 0;
    suite->add_option("--seed", suite_seed_text, "u64 seed or 'random'")->capture_default_str();
    suite->add_flag("--json", suite_json, "machine-readable summary");
    suite->add_option("--workers", suite_workers, "path-tracking threads (0 = hardware)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        pedd::RunOptions opts;
        if (!example_name.empty()) {
            if (!poly_text.empty() || !vars_text.empty()) {
                std::cerr << "error: --example excludes --poly/--vars\n";
                return 1;
            }
            const pedd::ExampleSpec* ex = pedd::find_example(example_name);
            if (!ex) {
                std::cerr << "error: unknown example '" << example_name << "'\n";
                return 1;
            }
            opts.poly_text = ex->poly_text;
            opts.variables = ex->variables;
        } else {
            if (poly_text.empty() || vars_text.empty()) {
                std::cerr << "error: need --poly and --vars (or --example)\n";
                return 1;
            }
            opts.poly_text = poly_text;
            std::size_t from = 0;
            while (from <= vars_text.size()) {
                auto comma = vars_text.find(',', from);
                std::string name = comma == std::string::npos
                                       ? vars_text.substr(from)
                                       : vars_text.substr(from, comma - from);
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
                    name.erase(name.begin());
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
                    name.pop_back();
                if (!name.empty()) opts.variables.push_back(name);
                if (comma == std::string::npos) break;
                from = comma + 1;
            }
        }
        try {
            opts.seed = resolve_seed(seed_text);
            if (!beta_text.empty()) opts.beta_override = pedd::parse_rational_list(beta_text);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        opts.skip_cover = skip_cover;
        opts.complex_beta = complex_beta;
        if (!singularity_file.empty()) opts.singularity_file = singularity_file;
        if (!strata_file.empty()) opts.strata_file = strata_file;
        opts.tolerance = tolerance;
        opts.paths_report = paths_report;
        opts.timings = timings;
        opts.workers = workers;
        return run_command(std::move(opts), json);
    }

    if (suite->parsed()) {
        try {
            pedd::SuiteResult result =
                pedd::run_suite(resolve_seed(suite_seed_text), suite_workers);
            std::cout << (suite_json ? pedd::render_suite_json(result)
                                     : pedd::render_suite_text(result));
            return result.all_pass() ? 0 : 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
