#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pedd/polynomial.hpp"
#include "pedd/solver.hpp"

namespace pedd {

/// Generic data for one computation: the distance base point beta (exact
/// rational or rational-complex entries), the seed everything derives from,
/// and a random linear chart used to slice projective solution sets.
struct GenericData {
    std::vector<GaussianRational> beta;
    std::uint64_t seed = 0;
    std::vector<GaussianRational> chart;
};

/// Seeded beta and chart for ambient projective dimension n. Entries are
/// small rationals, rejection-sampled so beta != 0 and sum(beta_i^2) != 0.
/// With complex_entries, entries get independent rational imaginary parts.
GenericData sample_generic_beta(int n, std::uint64_t seed, bool complex_entries = false);

struct PathTriple {
    int converged = 0;
    int diverged = 0;
    int failed = 0;
    long expected = 0;
    bool conserved() const { return converged + diverged + failed == expected; }
};

struct CountReport {
    int count = 0;
    PathTriple path_summary;
    std::vector<ComplexPoint> witnesses;
    std::vector<int> cluster_sizes;
    std::vector<std::string> genericity_flags;
    GenericData generic_used;
    /// per-path endpoints, present when SolveOptions::keep_paths was set
    std::vector<TrackedSolution> paths;
};

struct CountOptions {
    bool allow_resample = true;  // off when the caller pinned beta explicitly
    int max_retries = 8;
    SolveOptions solve;
};

/// x0^2 + ... + x_{nvars-1}^2.
RationalPoly isotropic_quadric_form(int nvars);
/// sum coeffs_i * x_i.
RationalPoly linear_form(const std::vector<GaussianRational>& coeffs);
/// True when f is a nonzero scalar multiple of the isotropic quadric form.
bool is_isotropic_quadric_multiple(const RationalPoly& f);

/// First-order conditions for a critical point of the squared distance from
/// beta on the cone {f = 0}, at smooth cone points. Unknowns (x_0..x_n, l):
///   f = 0,  x_i - beta_i - l * df/dx_i = 0.
PolynomialSystem build_cone_critical_system(const RationalPoly& f, const GenericData& g);

/// First-order conditions for a critical point of the beta linear form on
/// {f = 0} intersected with the unit sphere sum x_i^2 = 1. Unknowns
/// (x_0..x_n, l, m):
///   f = 0,  sum x_i^2 - 1 = 0,  beta_i - l * df/dx_i - 2 m x_i = 0.
PolynomialSystem build_double_cover_system(const RationalPoly& f, const GenericData& g);

/// Solves the cone critical system and counts distinct smooth-cone critical
/// points. This count is the projective ED degree. Genericity violations
/// ("point_on_Hbeta", "scalar_pair", ...) trigger a resample of beta with a
/// fresh derived seed, up to max_retries, then a GenericityError.
CountReport count_cone_critical_points(const RationalPoly& f, const GenericData& g,
                                       const TrackerConfig& config, const CountOptions& opts = {});

/// Same filtering on the double-cover system; the count equals twice the
/// projective ED degree (checked by callers, not assumed here).
CountReport count_double_cover_critical_points(const RationalPoly& f, const GenericData& g,
                                               const TrackerConfig& config,
                                               const CountOptions& opts = {});

/// Distinct points of the projective set cut out by `polys` in P^n, via a
/// random affine chart. Counts are verified against a second random chart;
/// instability (a continuum, or an unlucky chart) resamples and eventually
/// raises GenericityError. Cluster sizes > 1 witness tangencies.
CountReport count_distinct_projective_intersection(const std::vector<RationalPoly>& polys, int n,
                                                   const GenericData& g,
                                                   const TrackerConfig& config,
                                                   const CountOptions& opts = {});

/// Distinct projective points where all partials of f vanish. The singular
/// locus must be finite; a positive-dimensional locus shows up as persistent
/// chart instability and raises GenericityError("...not supported...").
std::vector<ComplexPoint> find_projective_singular_points(const RationalPoly& f, int n,
                                                          const GenericData& g,
                                                          const TrackerConfig& config,
                                                          const CountOptions& opts = {});

/// Scale-normalized projective (Fubini-Study style) distance in [0,1].
double projective_distance(const ComplexPoint& a, const ComplexPoint& b);

/// Representative with unit norm and first sizable coordinate rotated to the
/// positive real axis; stable input for printing and comparison.
ComplexPoint normalize_projective(const ComplexPoint& p);

}  // namespace pedd
