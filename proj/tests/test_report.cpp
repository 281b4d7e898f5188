#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "pedd/errors.hpp"
#include "pedd/report.hpp"

using namespace pedd;

namespace {

RunOptions hyperplane_options() {
    RunOptions o;
    const ExampleSpec* ex = find_example("hyperplane");
    REQUIRE(ex != nullptr);
    o.poly_text = ex->poly_text;
    o.variables = ex->variables;
    return o;
}

}  // namespace

TEST_CASE("example registry names") {
    for (const char* name : {"nodal-cubic-1", "nodal-cubic-2", "tangent-cubic",
                             "whitney-surface", "hyperplane", "smooth-conic"})
        CHECK(find_example(name) != nullptr);
    CHECK(find_example("no-such-example") == nullptr);
    CHECK(example_registry().size() == 6);
}

TEST_CASE("hyperplane run: one critical point, everything agrees") {
    EDReport r = run_variety(hyperplane_options());
    CHECK(r.ped_numeric == 1);
    CHECK(r.ped_double_cover_half == 1);
    CHECK(r.ped_topological == 1);
    CHECK(r.all_checks_pass());
    CHECK(exit_code_for(r) == 0);
    CHECK(r.degree == 1);
    CHECK(r.projective_dimension == 2);
}

TEST_CASE("reports are byte-identical for identical inputs and seed") {
    RunOptions o = hyperplane_options();
    EDReport a = run_variety(o);
    EDReport b = run_variety(o);
    CHECK(render_text(a, o) == render_text(b, o));
    CHECK(render_json(a, o) == render_json(b, o));
    // the default rendering carries no timing fields
    CHECK(render_text(a, o).find("timings") == std::string::npos);
}

TEST_CASE("skip-cover leaves the cover fields absent") {
    RunOptions o = hyperplane_options();
    o.skip_cover = true;
    EDReport r = run_variety(o);
    CHECK(!r.cover.has_value());
    CHECK(!r.ped_double_cover_half.has_value());
    CHECK(r.all_checks_pass());
}

TEST_CASE("beta override is honored and validated") {
    RunOptions o = hyperplane_options();
    o.beta_override = parse_rational_list("1,-2/3,3");
    EDReport r = run_variety(o);
    CHECK(r.ped_numeric == 1);
    CHECK(r.beta == *o.beta_override);

    o.beta_override = parse_rational_list("0,0,0");
    CHECK_THROWS_AS(run_variety(o), GenericityError);
    o.beta_override = parse_rational_list("1,i,0");  // isotropic
    CHECK_THROWS_AS(run_variety(o), GenericityError);
    o.beta_override = parse_rational_list("1,2");  // wrong length
    CHECK_THROWS_AS(run_variety(o), std::invalid_argument);
}

TEST_CASE("non-homogeneous input is rejected up front") {
    RunOptions o;
    o.poly_text = "x0^2 + x1";
    o.variables = {"x0", "x1", "x2"};
    CHECK_THROWS_AS(run_variety(o), std::invalid_argument);
}

TEST_CASE("unsupported singularities without user data raise the dedicated error") {
    RunOptions o;
    o.poly_text = "x1^2*x2^2 - x0^4";  // tacnodes at [0:0:1] and [0:1:0]
    o.variables = {"x0", "x1", "x2"};
    o.skip_cover = true;
    CHECK_THROWS_AS(run_variety(o), UnsupportedSingularityError);
}

TEST_CASE("strata file drives the topological side for the surface example") {
    const ExampleSpec* ex = find_example("whitney-surface");
    RunOptions o;
    o.poly_text = ex->poly_text;
    o.variables = ex->variables;
    std::string path = "whitney_test_strata.tmp";
    {
        std::ofstream out(path);
        out << "# chi eu over the generic open set\n";
        out << "whole-surface 13 1\n";
        out << "pinch-line-excess -3 1\n";
    }
    o.strata_file = path;
    EDReport r = run_variety(o);
    std::remove(path.c_str());
    CHECK(r.strata_weighted_chi == 10);
    CHECK(r.ped_topological == 10);  // dim X = 2: positive sign
    CHECK(r.ped_numeric == 10);
    CHECK(r.all_checks_pass());
}

TEST_CASE("strata sign flips in odd dimensions") {
    // for a curve the topological count is minus the weighted chi
    const ExampleSpec* ex = find_example("nodal-cubic-1");
    RunOptions o;
    o.poly_text = ex->poly_text;
    o.variables = ex->variables;
    o.skip_cover = true;
    std::string path = "curve_test_strata.tmp";
    {
        std::ofstream out(path);
        out << "smooth-part -9 1\n";
        out << "node 1 2\n";
    }
    o.strata_file = path;
    EDReport r = run_variety(o);
    std::remove(path.c_str());
    CHECK(r.strata_weighted_chi == -7);
    CHECK(r.ped_topological == 7);
    CHECK(r.all_checks_pass());
}

TEST_CASE("exit codes reflect failure classes") {
    EDReport ok;
    ok.consistency.push_back({"x", true, ""});
    CHECK(exit_code_for(ok) == 0);

    EDReport inconsistent = ok;
    inconsistent.consistency.push_back({"y", false, ""});
    CHECK(exit_code_for(inconsistent) == 1);

    EDReport failed_paths = ok;
    failed_paths.cone.path_summary.failed = 2;
    CHECK(exit_code_for(failed_paths) == 4);
}

TEST_CASE("rational list parsing") {
    auto v = parse_rational_list("1, -2/3, 5");
    REQUIRE(v.size() == 3);
    CHECK(v[1] == GaussianRational(Rational(-2, 3)));
    CHECK_THROWS_AS(parse_rational_list("1,,2"), ParseError);
}

TEST_CASE("singularity file feeds the curve pipeline through run_variety") {
    RunOptions o;
    o.poly_text = "x0^4 - x1^3*x2";
    o.variables = {"x0", "x1", "x2"};
    o.skip_cover = true;
    std::string path = "sing_test.tmp";
    {
        std::ofstream out(path);
        out << "0:0:1 3 1 3\n";
    }
    o.singularity_file = path;
    EDReport r = run_variety(o);
    std::remove(path.c_str());
    REQUIRE(r.topology.has_value());
    CHECK(r.topology->chi_X == 2);
    CHECK(r.ped_topological == r.ped_numeric);
    CHECK(r.all_checks_pass());
}
