#include "pedd/report.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pedd/errors.hpp"
#include "pedd/rng.hpp"

namespace pedd {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_complex(const Complex& c) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", c.real(), c.imag());
    return buf;
}

std::string fmt_point(const ComplexPoint& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += fmt_complex(p[i]);
    }
    return out + "]";
}

std::string status_name(PathStatus s) {
    switch (s) {
        case PathStatus::converged: return "converged";
        case PathStatus::diverged: return "diverged";
        case PathStatus::failed: return "failed";
    }
    return "?";
}

std::string join_beta(const std::vector<GaussianRational>& beta) {
    std::string out;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (i) out += ", ";
        out += to_string(beta[i]);
    }
    return out;
}

std::vector<PathDiagnostic> path_diagnostics(const CountReport& r) {
    std::vector<PathDiagnostic> out;
    for (std::size_t i = 0; i < r.paths.size(); ++i) {
        const TrackedSolution& p = r.paths[i];
        out.push_back({static_cast<int>(i), status_name(p.status), p.steps, p.residual,
                       p.cluster_id});
    }
    return out;
}

bool antipodal_paired(const std::vector<ComplexPoint>& witnesses, double tol) {
    for (const auto& x : witnesses) {
        bool found = false;
        for (const auto& y : witnesses) {
            if (&x == &y) continue;
            double d = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) d += std::norm(x[i] + y[i]);
            if (std::sqrt(d) < tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

void validate_beta_override(const std::vector<GaussianRational>& beta, int n) {
    if (static_cast<int>(beta.size()) != n + 1)
        throw std::invalid_argument("beta must have n+1 entries");
    GaussianRational sum;
    bool all_zero = true;
    for (const auto& b : beta) {
        if (!b.is_zero()) all_zero = false;
        sum += b * b;
    }
    if (all_zero) throw GenericityError("beta override is the zero vector");
    if (sum.is_zero()) throw GenericityError("beta override is isotropic (sum of squares is 0)");
}

}  // namespace

int EDReport::failed_paths() const {
    int total = cone.path_summary.failed;
    if (cover) total += cover->path_summary.failed;
    if (topology) {
        total += topology->xq.path_summary.failed;
        total += topology->xh.path_summary.failed;
    }
    return total;
}

const std::vector<ExampleSpec>& example_registry() {
    static const std::vector<ExampleSpec> registry = {
        {"nodal-cubic-1", "x0^2*x2 - x1^2*(x1+x2)", {"x0", "x1", "x2"}, 7},
        {"nodal-cubic-2", "x0^2*x1 - (x1 - i*x2)^2*x2", {"x0", "x1", "x2"}, 7},
        {"tangent-cubic", "x0^3 - (i*x0^2 + x1^2)*x2", {"x0", "x1", "x2"}, 6},
        {"whitney-surface", "x0^2*x1 - x2*x3^2", {"x0", "x1", "x2", "x3"}, 10},
        {"hyperplane", "x0 + 2*x1 + 3*x2", {"x0", "x1", "x2"}, 1},
        // expected count established by the cone solver itself, then frozen;
        // it agrees with -chi of the curve off the quadric and hyperplane
        {"smooth-conic", "x0^2 + 2*x1^2 + 5*x2^2", {"x0", "x1", "x2"}, 4},
    };
    return registry;
}

const ExampleSpec* find_example(const std::string& name) {
    for (const auto& e : example_registry())
        if (e.name == name) return &e;
    return nullptr;
}

EDReport run_variety(const RunOptions& o) {
    RationalPoly f = parse_polynomial(o.poly_text, o.variables);
    if (f.is_zero()) throw std::invalid_argument("the zero polynomial defines no hypersurface");
    auto [degree, homogeneous] = f.degree_and_homogeneity();
    if (!homogeneous)
        throw std::invalid_argument("defining polynomial must be homogeneous");
    const int n = f.variable_count() - 1;
    if (n < 1) throw std::invalid_argument("need at least two variables");

    EDReport r;
    r.poly_text = o.poly_text;
    r.canonical_poly = to_string(f, o.variables);
    r.variables = o.variables;
    r.projective_dimension = n;
    r.degree = degree;
    r.seed = o.seed;

    TrackerConfig cfg;
    cfg.newton_tolerance = o.tolerance;
    cfg.validate();

    CountOptions copt;
    copt.solve.workers = o.workers;
    copt.solve.keep_paths = o.paths_report;

    if (o.beta_override) validate_beta_override(*o.beta_override, n);

    // The independent pipelines must agree for generic data; disagreement is
    // evidence of an unlucky beta (e.g. a critical point driven out to the
    // numerical horizon), so the whole computation is retried on fresh
    // generic data, visibly flagged. A pinned beta is never resampled.
    std::vector<std::string> driver_flags;
    const int driver_attempts = o.beta_override ? 1 : 3;
    for (int attempt = 0; attempt < driver_attempts; ++attempt) {
        std::uint64_t attempt_seed =
            attempt == 0 ? o.seed : derive_seed(o.seed, "consistency-retry", attempt);
        GenericData g = sample_generic_beta(n, attempt_seed, o.complex_beta);
        if (o.beta_override) {
            g.beta = *o.beta_override;
            copt.allow_resample = false;
        }

        auto t0 = Clock::now();
        r.cone = count_cone_critical_points(f, g, cfg, copt);
        r.cone_ms = ms_since(t0);
        r.ped_numeric = r.cone.count;
        r.beta = r.cone.generic_used.beta;

        r.cover.reset();
        r.ped_double_cover_half.reset();
        if (!o.skip_cover) {
            t0 = Clock::now();
            r.cover = count_double_cover_critical_points(f, g, cfg, copt);
            r.cover_ms = ms_since(t0);
            if (r.cover->count % 2 == 0) r.ped_double_cover_half = r.cover->count / 2;
        }

        r.topology.reset();
        r.ped_topological.reset();
        r.strata_weighted_chi.reset();
        t0 = Clock::now();
        if (o.strata_file) {
            std::vector<StratumDatum> strata = read_strata_file(*o.strata_file);
            r.strata_weighted_chi = weighted_euler_characteristic(strata);
            int dim = n - 1;
            r.ped_topological =
                static_cast<int>((dim % 2 == 0 ? 1 : -1) * *r.strata_weighted_chi);
            r.topology_ms = ms_since(t0);
        } else if (n == 2) {
            std::vector<CurveSingularity> user_data;
            if (o.singularity_file) user_data = read_singularities_file(*o.singularity_file);
            r.topology =
                chi_eu_restricted(f, g, cfg, o.singularity_file ? &user_data : nullptr, copt);
            r.ped_topological = r.topology->ped_topological;
            r.topology_ms = ms_since(t0);
        }

        bool consistent = true;
        if (r.cover && r.cover->count != 2 * r.ped_numeric) consistent = false;
        if (r.ped_topological && *r.ped_topological != r.ped_numeric) consistent = false;
        if (consistent) break;
        if (attempt + 1 < driver_attempts)
            driver_flags.push_back("pipelines_disagreed_resampled (attempt " +
                                   std::to_string(attempt) + ")");
    }
    for (const auto& fl : driver_flags) r.cone.genericity_flags.push_back(fl);
    if (o.paths_report) {
        r.path_diagnostics.push_back({"cone", path_diagnostics(r.cone)});
        if (r.cover) r.path_diagnostics.push_back({"double-cover", path_diagnostics(*r.cover)});
    }

    // consistency verdicts
    auto add_check = [&](const std::string& name, bool pass, std::string detail) {
        r.consistency.push_back({name, pass, std::move(detail)});
    };
    {
        bool conserved = r.cone.path_summary.conserved();
        if (r.cover) conserved = conserved && r.cover->path_summary.conserved();
        if (r.topology)
            conserved = conserved && r.topology->xq.path_summary.conserved() &&
                        r.topology->xh.path_summary.conserved();
        add_check("path_conservation", conserved, "converged+diverged+failed = Bezout count");
        int failed = r.failed_paths();
        add_check("no_failed_paths", failed == 0, std::to_string(failed) + " failed path(s)");
    }
    {
        const RationalPoly l_beta = linear_form(r.cone.generic_used.beta);
        double beta_norm = 0.0;
        for (const auto& b : r.cone.generic_used.beta)
            beta_norm = std::max(beta_norm, std::abs(b.to_complex()));
        bool ok = true;
        double worst = 1e300;
        for (const auto& x : r.cone.witnesses) {
            double nx = 0.0;
            for (const Complex& c : x) nx = std::max(nx, std::abs(c));
            double margin = std::abs(evaluate(l_beta, x)) / ((1.0 + beta_norm) * std::max(1.0, nx));
            worst = std::min(worst, margin);
            if (margin <= 1e-8) ok = false;
        }
        add_check("no_witness_on_hyperplane", ok,
                  r.cone.witnesses.empty() ? "no witnesses" : "min |l_beta|/scale = " + fmt_double(worst));
    }
    if (r.cover) {
        bool twice = r.cover->count == 2 * r.ped_numeric;
        add_check("double_cover_is_twice_cone", twice,
                  std::to_string(r.cover->count) + " vs 2*" + std::to_string(r.ped_numeric));
        bool paired = antipodal_paired(r.cover->witnesses, 10.0 * cfg.cluster_radius);
        add_check("antipodal_pairing", paired, "each witness has its deck partner -x");
    }
    if (r.ped_topological) {
        add_check("topology_matches_numeric", *r.ped_topological == r.ped_numeric,
                  std::to_string(*r.ped_topological) + " vs " + std::to_string(r.ped_numeric));
    }
    if (r.topology) {
        add_check("quadric_bezout_ceiling", r.topology->count_XQ <= 2 * degree,
                  std::to_string(r.topology->count_XQ) + " <= " + std::to_string(2 * degree));
    }
    return r;
}

SuiteResult run_suite(std::uint64_t seed, int workers) {
    SuiteResult result;
    for (const auto& ex : example_registry()) {
        RunOptions o;
        o.poly_text = ex.poly_text;
        o.variables = ex.variables;
        o.seed = seed;
        o.workers = workers;
        SuiteRow row;
        row.name = ex.name;
        row.expected = ex.expected_ped;
        try {
            EDReport r = run_variety(o);
            row.computed = r.ped_numeric;
            row.consistent = r.all_checks_pass();
        } catch (const std::exception&) {
            row.computed = -1;
            row.consistent = false;
        }
        row.pass = row.computed == row.expected && row.consistent;
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

void render_count_text(std::ostringstream& os, const std::string& name, const CountReport& c) {
    os << "  " << name << ":\n";
    os << "    count: " << c.count << "\n";
    os << "    paths: total " << c.path_summary.expected << ", converged "
       << c.path_summary.converged << ", diverged " << c.path_summary.diverged << ", failed "
       << c.path_summary.failed << "\n";
    if (!c.genericity_flags.empty()) {
        os << "    genericity-flags:";
        for (const auto& fl : c.genericity_flags) os << " " << fl << ";";
        os << "\n";
    }
    bool fat = false;
    for (int s : c.cluster_sizes)
        if (s > 1) fat = true;
    if (fat) {
        os << "    cluster-sizes:";
        for (int s : c.cluster_sizes) os << " " << s;
        os << "\n";
    }
}

}  // namespace

std::string render_text(const EDReport& r, const RunOptions& opts) {
    std::ostringstream os;
    os << kToolName << " report (v" << r.tool_version << ")\n";
    os << "input:\n";
    os << "  polynomial: " << r.poly_text << "\n";
    os << "  canonical: " << r.canonical_poly << "\n";
    os << "  variables: ";
    for (std::size_t i = 0; i < r.variables.size(); ++i)
        os << (i ? ", " : "") << r.variables[i];
    os << "\n";
    os << "  projective-dimension: " << r.projective_dimension << "\n";
    os << "  degree: " << r.degree << "\n";
    os << "generic-data:\n";
    os << "  seed: " << r.seed << "\n";
    os << "  beta: " << join_beta(r.beta) << "\n";
    os << "results:\n";
    os << "  ped-numeric: " << r.ped_numeric << "\n";
    if (r.ped_double_cover_half)
        os << "  ped-double-cover-half: " << *r.ped_double_cover_half << "\n";
    if (r.ped_topological) os << "  ped-topological: " << *r.ped_topological << "\n";
    os << "pipelines:\n";
    render_count_text(os, "cone", r.cone);
    if (r.cover) render_count_text(os, "double-cover", *r.cover);
    if (r.topology) {
        const TopologyReport& t = *r.topology;
        os << "  topology:\n";
        os << "    chi-curve: " << t.chi_X << "\n";
        os << "    curve-meets-quadric: " << t.count_XQ << "\n";
        os << "    curve-meets-hyperplane: " << t.count_XH << "\n";
        os << "    chi-restricted: " << t.chi_restricted << "\n";
        os << "    chi-euler-obstruction-restricted: " << t.chi_eu_restricted << "\n";
        os << "    singularities:\n";
        for (const auto& s : t.singularities) {
            os << "      - location " << fmt_point(s.location) << " m " << s.multiplicity << " r "
               << s.branch_count << " delta " << s.delta << " kind "
               << (s.kind == SingularityKind::node
                       ? "node"
                       : s.kind == SingularityKind::cusp ? "cusp" : "user-supplied")
               << " on-quadric " << (s.on_quadric ? "yes" : "no") << " on-hyperplane "
               << (s.on_hyperplane ? "yes" : "no") << "\n";
        }
        if (t.singularities.empty()) os << "      (none)\n";
    }
    if (r.strata_weighted_chi) {
        os << "  strata:\n";
        os << "    weighted-chi: " << *r.strata_weighted_chi << "\n";
    }
    os << "consistency:\n";
    for (const auto& c : r.consistency)
        os << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL") << "  (" << c.detail << ")\n";
    if (opts.timings) {
        os << "timings-ms:\n";
        os << "  cone: " << r.cone_ms << "\n";
        if (r.cover) os << "  double-cover: " << r.cover_ms << "\n";
        if (r.ped_topological) os << "  topology: " << r.topology_ms << "\n";
    }
    if (opts.paths_report) {
        os << "paths:\n";
        for (const auto& pd : r.path_diagnostics) {
            os << "  " << pd.name << ":\n";
            for (const auto& p : pd.paths) {
                os << "    " << p.index << ": " << p.status << " steps " << p.steps
                   << " residual " << fmt_double(p.residual);
                if (p.cluster_id) os << " cluster " << *p.cluster_id;
                os << "\n";
            }
        }
    }
    os << "verdict: " << (r.all_checks_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_json(const EDReport& r, const RunOptions& opts) {
    using json = nlohmann::ordered_json;
    json j;
    j["tool"] = std::string(kToolName) + " " + r.tool_version;
    j["input"] = {{"polynomial", r.poly_text},
                  {"canonical", r.canonical_poly},
                  {"variables", r.variables},
                  {"projective_dimension", r.projective_dimension},
                  {"degree", r.degree}};
    json beta = json::array();
    for (const auto& b : r.beta) beta.push_back(to_string(b));
    j["generic_data"] = {{"seed", r.seed}, {"beta", beta}};
    j["ped_numeric"] = r.ped_numeric;
    if (r.ped_double_cover_half)
        j["ped_double_cover_half"] = *r.ped_double_cover_half;
    else if (r.cover)
        j["ped_double_cover_half"] = nullptr;
    if (r.ped_topological) j["ped_topological"] = *r.ped_topological;

    auto count_json = [](const CountReport& c) {
        json out;
        out["count"] = c.count;
        out["paths"] = {{"total", c.path_summary.expected},
                        {"converged", c.path_summary.converged},
                        {"diverged", c.path_summary.diverged},
                        {"failed", c.path_summary.failed}};
        out["cluster_sizes"] = c.cluster_sizes;
        out["genericity_flags"] = c.genericity_flags;
        json wit = json::array();
        for (const auto& x : c.witnesses) {
            json pt = json::array();
            for (const Complex& z : x) pt.push_back({fmt_double(z.real()), fmt_double(z.imag())});
            wit.push_back(pt);
        }
        out["witnesses"] = wit;
        return out;
    };
    j["cone"] = count_json(r.cone);
    if (r.cover) j["double_cover"] = count_json(*r.cover);
    if (r.topology) {
        const TopologyReport& t = *r.topology;
        json s = json::array();
        for (const auto& sing : t.singularities) {
            json pt = json::array();
            for (const Complex& z : sing.location)
                pt.push_back({fmt_double(z.real()), fmt_double(z.imag())});
            s.push_back({{"location", pt},
                         {"multiplicity", sing.multiplicity},
                         {"branches", sing.branch_count},
                         {"delta", sing.delta},
                         {"kind", sing.kind == SingularityKind::node
                                      ? "node"
                                      : sing.kind == SingularityKind::cusp ? "cusp"
                                                                           : "user-supplied"},
                         {"on_quadric", sing.on_quadric},
                         {"on_hyperplane", sing.on_hyperplane}});
        }
        j["topology"] = {{"chi_curve", t.chi_X},
                         {"curve_meets_quadric", t.count_XQ},
                         {"curve_meets_hyperplane", t.count_XH},
                         {"chi_restricted", t.chi_restricted},
                         {"chi_eu_restricted", t.chi_eu_restricted},
                         {"ped_topological", t.ped_topological},
                         {"singularities", s}};
    }
    if (r.strata_weighted_chi) j["strata_weighted_chi"] = *r.strata_weighted_chi;
    json checks = json::array();
    for (const auto& c : r.consistency)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["consistency"] = checks;
    if (opts.timings)
        j["timings_ms"] = {{"cone", r.cone_ms}, {"double_cover", r.cover_ms}, {"topology", r.topology_ms}};
    if (opts.paths_report) {
        json pipes = json::array();
        for (const auto& pd : r.path_diagnostics) {
            json paths = json::array();
            for (const auto& p : pd.paths) {
                json pj = {{"index", p.index},
                           {"status", p.status},
                           {"steps", p.steps},
                           {"residual", fmt_double(p.residual)}};
                if (p.cluster_id) pj["cluster"] = *p.cluster_id;
                paths.push_back(pj);
            }
            pipes.push_back({{"pipeline", pd.name}, {"paths", paths}});
        }
        j["paths"] = pipes;
    }
    j["verdict"] = r.all_checks_pass() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string render_suite_text(const SuiteResult& s) {
    std::ostringstream os;
    os << kToolName << " suite\n";
    os << "  example            expected  computed  consistent  verdict\n";
    for (const auto& row : s.rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  %-18s %8d  %8d  %-10s  %s\n", row.name.c_str(),
                      row.expected, row.computed, row.consistent ? "yes" : "no",
                      row.pass ? "pass" : "FAIL");
        os << buf;
    }
    os << "suite verdict: " << (s.all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_suite_json(const SuiteResult& s) {
    using json = nlohmann::ordered_json;
    json rows = json::array();
    for (const auto& row : s.rows)
        rows.push_back({{"example", row.name},
                        {"expected", row.expected},
                        {"computed", row.computed},
                        {"consistent", row.consistent},
                        {"pass", row.pass}});
    json j = {{"tool", std::string(kToolName) + " " + kToolVersion},
              {"rows", rows},
              {"pass", s.all_pass()}};
    return j.dump(2) + "\n";
}

int exit_code_for(const EDReport& r) {
    if (r.failed_paths() > 0) return 4;
    return r.all_checks_pass() ? 0 : 1;
}

std::vector<GaussianRational> parse_rational_list(const std::string& text) {
    std::vector<GaussianRational> out;
    std::size_t from = 0;
    while (from <= text.size()) {
        auto comma = text.find(',', from);
        std::string piece =
            comma == std::string::npos ? text.substr(from) : text.substr(from, comma - from);
        // trim
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front())))
            piece.erase(piece.begin());
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())))
            piece.pop_back();
        out.push_back(parse_complex_literal(piece));
        if (comma == std::string::npos) break;
        from = comma + 1;
    }
    return out;
}

}  // namespace pedd
