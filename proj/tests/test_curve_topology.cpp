#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pedd/curve_topology.hpp"
#include "pedd/errors.hpp"
#include "pedd/polynomial.hpp"
#include "pedd/rng.hpp"

using namespace pedd;

namespace {

const std::vector<std::string> kXYZ = {"x0", "x1", "x2"};

RationalPoly nodal_cubic() { return parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", kXYZ); }
RationalPoly cuspidal_cubic() { return parse_polynomial("x0^3 - x1^2*x2", kXYZ); }

}  // namespace

TEST_CASE("multiplicity at the node is two") {
    CHECK(multiplicity_at(nodal_cubic(), {0.0, 0.0, 1.0}) == 2);
}

TEST_CASE("multiplicity at a smooth point is one") {
    // [1:0:0] lies on the nodal cubic and is smooth
    CHECK(multiplicity_at(nodal_cubic(), {1.0, 0.0, 0.0}) == 1);
}

TEST_CASE("multiplicity at the cusp is two (lowest jet is the double line)") {
    CHECK(multiplicity_at(cuspidal_cubic(), {0.0, 0.0, 1.0}) == 2);
}

TEST_CASE("multiplicity rejects points off the curve") {
    CHECK_THROWS_AS(multiplicity_at(nodal_cubic(), {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("multiplicity works on slightly perturbed numeric points") {
    ComplexPoint p = {1e-11, -2e-11, 1.0};
    CHECK(multiplicity_at(nodal_cubic(), p) == 2);
}

TEST_CASE("classification: nodes") {
    CurveSingularity s = classify_singularity(nodal_cubic(), {0.0, 0.0, 1.0});
    CHECK(s.kind == SingularityKind::node);
    CHECK(s.multiplicity == 2);
    CHECK(s.branch_count == 2);
    CHECK(s.delta == 1);

    RationalPoly tangent = parse_polynomial("x0^3 - (i*x0^2 + x1^2)*x2", kXYZ);
    CHECK(classify_singularity(tangent, {0.0, 0.0, 1.0}).kind == SingularityKind::node);
}

TEST_CASE("classification: cusp") {
    CurveSingularity s = classify_singularity(cuspidal_cubic(), {0.0, 0.0, 1.0});
    CHECK(s.kind == SingularityKind::cusp);
    CHECK(s.branch_count == 1);
    CHECK(s.delta == 1);
}

TEST_CASE("classification: degenerate double points are refused") {
    // two conics tangent at [0:0:1]: a tacnode, neither node nor cusp
    RationalPoly tacnode = parse_polynomial("x1^2*x2^2 - x0^4", kXYZ);
    CHECK_THROWS_AS(classify_singularity(tacnode, {0.0, 0.0, 1.0}), UnsupportedSingularityError);
    // smooth points are not singularities
    CHECK_THROWS_AS(classify_singularity(nodal_cubic(), {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("multiplicity additivity: a product of two random lines has a double point") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        SeededRng rng(seed);
        std::vector<GaussianRational> a, b;
        for (int i = 0; i < 3; ++i) a.push_back(GaussianRational(rng.small_rational()));
        for (int i = 0; i < 3; ++i) b.push_back(GaussianRational(rng.small_rational()));
        RationalPoly la(3), lb(3);
        for (int i = 0; i < 3; ++i) {
            Exponents e(3, 0);
            e[i] = 1;
            la.add_term(e, a[i]);
            lb.add_term(e, b[i]);
        }
        RationalPoly f = la * lb;
        if (f.term_count() < 2) continue;  // proportional lines: skip the degenerate draw
        // intersection point of the two lines via exact 2x2 elimination
        GaussianRational c0 = a[1] * b[2] - a[2] * b[1];
        GaussianRational c1 = a[2] * b[0] - a[0] * b[2];
        GaussianRational c2 = a[0] * b[1] - a[1] * b[0];
        ComplexPoint p = {c0.to_complex(), c1.to_complex(), c2.to_complex()};
        CurveSingularity s = classify_singularity(f, p);
        CHECK(s.multiplicity == 2);
        CHECK(s.kind == SingularityKind::node);
    }
}

TEST_CASE("euler characteristic of plane curves") {
    CurveSingularity node;
    node.multiplicity = 2;
    node.branch_count = 2;
    node.delta = 1;
    CHECK(euler_characteristic_curve(3, {node}) == 1);  // rational nodal cubic
    CHECK(euler_characteristic_curve(3, {}) == 0);      // smooth cubic = torus
    CHECK(euler_characteristic_curve(1, {}) == 2);      // projective line
    // degree 2 cannot carry a node (genus would be negative)
    CHECK_THROWS_AS(euler_characteristic_curve(2, {node}), std::invalid_argument);
}

TEST_CASE("weighted euler characteristic") {
    CHECK(weighted_euler_characteristic({{"surface", 13, 1}, {"line-excess", -3, 1}}) == 10);
    CHECK(weighted_euler_characteristic({{"s", 0, 1}}) == 0);
    CHECK(weighted_euler_characteristic({{"smooth", -9, 1}, {"node", 1, 2}}) == -7);
    CHECK(weighted_euler_characteristic({}) == 0);
}

TEST_CASE("strata files parse with comments and fail on malformed rows") {
    std::istringstream in(
        "# comment line\n"
        "whole-surface 13 1   # trailing comment\n"
        "\n"
        "pinch-line-excess -3 1\n");
    auto strata = read_strata(in);
    REQUIRE(strata.size() == 2);
    CHECK(strata[0].label == "whole-surface");
    CHECK(strata[0].chi == 13);
    CHECK(strata[1].eu == 1);
    CHECK(weighted_euler_characteristic(strata) == 10);

    std::istringstream bad("label-only 3\n");
    CHECK_THROWS_AS(read_strata(bad), ParseError);
}

TEST_CASE("singularity files parse complex projective points") {
    std::istringstream in(
        "# point m r delta\n"
        "0:0:1 2 2 1\n"
        "0:1:-i 3 2 2\n");
    auto sings = read_singularities(in);
    REQUIRE(sings.size() == 2);
    CHECK(sings[0].multiplicity == 2);
    CHECK(projective_distance(sings[1].location, {0.0, 1.0, Complex(0.0, -1.0)}) < 1e-12);
    CHECK(sings[1].delta == 2);

    std::istringstream bad("0:0 2 2 1\n");
    CHECK_THROWS_AS(read_singularities(bad), ParseError);
}

TEST_CASE("full topological pipeline: nodal cubic") {
    GenericData g = sample_generic_beta(2, 7);
    TopologyReport r = chi_eu_restricted(nodal_cubic(), g, TrackerConfig{});
    CHECK(r.chi_X == 1);
    CHECK(r.count_XQ == 6);
    CHECK(r.count_XH == 3);
    CHECK(r.chi_restricted == -8);
    CHECK(r.chi_eu_restricted == -7);
    CHECK(r.ped_topological == 7);
    REQUIRE(r.singularities.size() == 1);
    CHECK(!r.singularities[0].on_quadric);
    CHECK(!r.singularities[0].on_hyperplane);
}

TEST_CASE("full topological pipeline: node on the quadric contributes no correction") {
    RationalPoly f = parse_polynomial("x0^2*x1 - (x1 - i*x2)^2*x2", kXYZ);
    GenericData g = sample_generic_beta(2, 7);
    TopologyReport r = chi_eu_restricted(f, g, TrackerConfig{});
    CHECK(r.chi_X == 1);
    CHECK(r.count_XQ == 5);
    CHECK(r.count_XH == 3);
    CHECK(r.chi_eu_restricted == -7);
    CHECK(r.ped_topological == 7);
    REQUIRE(r.singularities.size() == 1);
    CHECK(r.singularities[0].on_quadric);
}

TEST_CASE("full topological pipeline: quadric tangency costs one") {
    RationalPoly f = parse_polynomial("x0^3 - (i*x0^2 + x1^2)*x2", kXYZ);
    GenericData g = sample_generic_beta(2, 7);
    TopologyReport r = chi_eu_restricted(f, g, TrackerConfig{});
    CHECK(r.count_XQ == 5);
    CHECK(r.chi_eu_restricted == -6);
    CHECK(r.ped_topological == 6);
}

TEST_CASE("smooth transversal curves satisfy the closed-form count") {
    // smooth conic: ped = -(chi - #XQ - #XH) = -(2 - 2d - d) at d = 2
    RationalPoly conic = parse_polynomial("x0^2 + 2*x1^2 + 5*x2^2", kXYZ);
    GenericData g = sample_generic_beta(2, 11);
    TopologyReport r = chi_eu_restricted(conic, g, TrackerConfig{});
    CHECK(r.singularities.empty());
    CHECK(r.ped_topological == -(2 - 2 * 2 - 2));
    CHECK(r.ped_topological == 4);
}

TEST_CASE("user-supplied singularity data covers what classification refuses") {
    // x0^4 = x1^3 x2 has one singular point [0:0:1] of multiplicity 3
    // (local form u^4 = v^3: one branch, delta 3); far beyond node/cusp
    RationalPoly quartic = parse_polynomial("x0^4 - x1^3*x2", kXYZ);
    GenericData g = sample_generic_beta(2, 13);
    CHECK_THROWS_AS(chi_eu_restricted(quartic, g, TrackerConfig{}), UnsupportedSingularityError);

    std::vector<CurveSingularity> user(1);
    user[0].location = {0.0, 0.0, 1.0};
    user[0].multiplicity = 3;
    user[0].branch_count = 1;
    user[0].delta = 3;
    TopologyReport r = chi_eu_restricted(quartic, g, TrackerConfig{}, &user);
    // rational curve: genus (4-1)(4-2)/2 - 3 = 0, one branch, so chi = 2
    CHECK(r.chi_X == 2);
    REQUIRE(r.singularities.size() == 1);
    CHECK(r.singularities[0].kind == SingularityKind::user_supplied);
    CHECK(r.chi_eu_restricted ==
          r.chi_X - r.count_XQ - r.count_XH + (r.singularities[0].multiplicity - 1));
}
