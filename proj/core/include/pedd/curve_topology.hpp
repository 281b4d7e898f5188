#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pedd/ed_systems.hpp"
#include "pedd/polynomial.hpp"

namespace pedd {

enum class SingularityKind { node, cusp, user_supplied };

/// A singular point of a plane curve with its local invariants.
/// node: (m, r, delta) = (2, 2, 1); cusp: (2, 1, 1).
struct CurveSingularity {
    ComplexPoint location;  // projective representative
    int multiplicity = 2;
    int branch_count = 1;
    int delta = 1;
    bool on_quadric = false;
    bool on_hyperplane = false;
    SingularityKind kind = SingularityKind::user_supplied;
};

struct StratumDatum {
    std::string label;
    long chi = 0;  // Euler characteristic of the stratum within the open set
    long eu = 0;   // constant value of the weight function along it
};

struct TopologyReport {
    int chi_X = 0;
    int count_XQ = 0;
    int count_XH = 0;
    std::vector<CurveSingularity> singularities;
    int chi_restricted = 0;     // chi of the curve within the generic open set
    int chi_eu_restricted = 0;  // weighted by the Euler obstruction
    int ped_topological = 0;    // = -chi_eu_restricted for curves
    CountReport xq;
    CountReport xh;
    std::vector<std::string> flags;
    GenericData generic_used;
};

/// Order of the lowest nonvanishing jet of f at the on-curve point p,
/// computed in the affine chart of p's largest coordinate. Exact when p
/// rationalizes (small-denominator Gaussian rationals), numeric otherwise
/// with a 1e-8 relative coefficient threshold.
int multiplicity_at(const RationalPoly& f, const ComplexPoint& p);

/// Splits a double point into node (two distinct tangents) or cusp (double
/// tangent with nonvanishing cubic along it). Anything else raises
/// UnsupportedSingularityError; multiplicity > 2 is rejected the same way.
CurveSingularity classify_singularity(const RationalPoly& f, const ComplexPoint& p);

/// chi of a projective plane curve of the given degree from its singularity
/// data: geometric genus g = (d-1)(d-2)/2 - sum delta, then
/// chi = (2 - 2g) - sum (r_p - 1).
int euler_characteristic_curve(int degree, const std::vector<CurveSingularity>& singularities);

/// The full topological pipeline for a plane curve (n = 2): singular points,
/// intersection counts with the isotropic quadric and the beta hyperplane,
/// and the signed weighted Euler characteristic whose negative is the
/// projective ED degree. `user_data` supplies (m, r, delta) for singularities
/// outside the node/cusp class, matched by projective location.
TopologyReport chi_eu_restricted(const RationalPoly& f, const GenericData& g,
                                 const TrackerConfig& config,
                                 const std::vector<CurveSingularity>* user_data = nullptr,
                                 const CountOptions& opts = {});

/// sum chi * eu over the strata.
long weighted_euler_characteristic(const std::vector<StratumDatum>& strata);

/// Strata file: one `label chi eu` line per stratum, '#' comments.
std::vector<StratumDatum> read_strata(std::istream& in);
std::vector<StratumDatum> read_strata_file(const std::string& path);

/// Singularity file: one `p0:p1:p2 m r delta` line per point, '#' comments.
/// Coordinates accept rational and complex literals like `-1/2`, `i`, `1-2i`.
std::vector<CurveSingularity> read_singularities(std::istream& in);
std::vector<CurveSingularity> read_singularities_file(const std::string& path);

}  // namespace pedd
