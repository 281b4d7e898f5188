#include "pedd/curve_topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pedd/errors.hpp"
#include "pedd/rng.hpp"

namespace pedd {

namespace {

constexpr double kIncidenceTol = 1e-8;
constexpr double kJetTol = 1e-8;
constexpr double kMatchTol = 1e-6;

double inf_norm(const ComplexPoint& x) {
    double m = 0.0;
    for (const Complex& c : x) m = std::max(m, std::abs(c));
    return m;
}

double coeff_inf_norm(const RationalPoly& p) {
    double m = 0.0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

std::size_t chart_index(const ComplexPoint& p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (std::abs(p[i]) > std::abs(p[best]) + 1e-12) best = i;
    return best;
}

/// p scaled so its largest coordinate is exactly 1 (kept at its index).
ComplexPoint chart_normalize(const ComplexPoint& p, std::size_t j) {
    ComplexPoint q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] / p[j];
    q[j] = Complex(1.0);
    return q;
}

/// Exact Gaussian-rational lift of the chart-normalized point, when its
/// coordinates rationalize and the point lies on f exactly.
std::optional<std::vector<GaussianRational>> exact_lift(const RationalPoly& f,
                                                        const ComplexPoint& q) {
    std::vector<GaussianRational> lift;
    for (const Complex& c : q) {
        auto r = rationalize(c, 1e-7, 4096);
        if (!r) return std::nullopt;
        lift.push_back(*r);
    }
    if (!evaluate_exact(f, lift).is_zero()) return std::nullopt;
    return lift;
}

void check_on_curve(const RationalPoly& f, const ComplexPoint& p) {
    if (static_cast<int>(p.size()) != f.variable_count())
        throw std::invalid_argument("point dimension mismatch");
    int d = f.total_degree();
    double scale = coeff_inf_norm(f) * static_cast<double>(f.term_count()) *
                   std::pow(std::max(1.0, inf_norm(p)), d);
    if (std::abs(evaluate(f, p)) > kIncidenceTol * scale)
        throw std::invalid_argument("point is not on the curve");
}

/// Coefficients of the local expansion of f around p, grouped by total
/// degree, in the affine chart of p's largest coordinate.
template <class C>
Polynomial<C> local_expansion(const Polynomial<C>& fc, const std::vector<C>& q, std::size_t j) {
    Polynomial<C> affine = dehomogenize(fc, static_cast<int>(j));
    std::vector<C> shift;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (i != j) shift.push_back(q[i]);
    return translate(affine, std::span<const C>(shift));
}

int lowest_order_numeric(const ComplexPoly& local, int max_order) {
    double maxc = 0.0;
    for (const auto& [e, c] : local.terms()) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) return -1;
    int best = -1;
    for (const auto& [e, c] : local.terms()) {
        int d = exponent_degree(e);
        if (std::abs(c) > kJetTol * maxc && (best < 0 || d < best)) best = d;
    }
    (void)max_order;
    return best;
}

int lowest_order_exact(const RationalPoly& local) {
    int best = -1;
    for (const auto& [e, c] : local.terms()) {
        int d = exponent_degree(e);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

}  // namespace

int multiplicity_at(const RationalPoly& f, const ComplexPoint& p) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    check_on_curve(f, p);
    std::size_t j = chart_index(p);
    ComplexPoint q = chart_normalize(p, j);

    if (auto lift = exact_lift(f, q)) {
        RationalPoly local = local_expansion(f, *lift, j);
        int m = lowest_order_exact(local);
        if (m < 0) throw std::invalid_argument("curve vanishes to all orders at the point");
        return m;
    }
    ComplexPoly local = local_expansion(to_complex(f), q, j);
    int m = lowest_order_numeric(local, f.total_degree());
    if (m < 0) throw std::invalid_argument("curve vanishes to all orders at the point");
    return m;
}

namespace {

template <class C>
C jet_coeff(const Polynomial<C>& local, int es, int et) {
    for (const auto& [e, c] : local.terms())
        if (e[0] == es && e[1] == et) return c;
    return C(0);
}

struct JetClassification {
    bool is_node = false;
    bool is_cusp = false;
};

JetClassification classify_exact(const RationalPoly& local) {
    GaussianRational a = jet_coeff(local, 2, 0);
    GaussianRational b = jet_coeff(local, 1, 1);
    GaussianRational c = jet_coeff(local, 0, 2);
    GaussianRational disc = b * b - GaussianRational(4) * (a * c);
    if (!disc.is_zero()) return {true, false};
    // double tangent line; cusp iff the cubic jet is nonzero along it
    GaussianRational vs, vt;
    if (!a.is_zero()) {
        vs = -b;
        vt = GaussianRational(2) * a;
    } else if (!c.is_zero()) {
        vs = GaussianRational(2) * c;
        vt = -b;
    } else {
        return {};  // jet2 = b*st with b=0: impossible when multiplicity is 2
    }
    GaussianRational cubic;
    for (int i = 0; i <= 3; ++i) {
        GaussianRational coef = jet_coeff(local, i, 3 - i);
        if (coef.is_zero()) continue;
        GaussianRational term = coef;
        for (int k = 0; k < i; ++k) term *= vs;
        for (int k = 0; k < 3 - i; ++k) term *= vt;
        cubic += term;
    }
    return {false, !cubic.is_zero()};
}

JetClassification classify_numeric(const ComplexPoly& local) {
    Complex a = jet_coeff(local, 2, 0);
    Complex b = jet_coeff(local, 1, 1);
    Complex c = jet_coeff(local, 0, 2);
    double scale2 = std::max({std::abs(a), std::abs(b), std::abs(c)});
    Complex disc = b * b - 4.0 * a * c;
    if (std::abs(disc) > kJetTol * scale2 * scale2) return {true, false};
    Complex vs, vt;
    if (std::abs(a) >= std::abs(c)) {
        vs = -b;
        vt = 2.0 * a;
    } else {
        vs = 2.0 * c;
        vt = -b;
    }
    double scale3 = 0.0;
    Complex cubic(0.0);
    for (int i = 0; i <= 3; ++i) {
        Complex coef = jet_coeff(local, i, 3 - i);
        scale3 = std::max(scale3, std::abs(coef));
        cubic += coef * std::pow(vs, i) * std::pow(vt, 3 - i);
    }
    double vnorm = std::max(std::abs(vs), std::abs(vt));
    if (scale3 == 0.0 || vnorm == 0.0) return {};
    return {false, std::abs(cubic) > kJetTol * scale3 * vnorm * vnorm * vnorm};
}

}  // namespace

CurveSingularity classify_singularity(const RationalPoly& f, const ComplexPoint& p) {
    if (f.variable_count() != 3)
        throw std::invalid_argument("singularity classification is for plane curves");
    int m = multiplicity_at(f, p);
    if (m < 2) throw std::invalid_argument("point is a smooth point, not a singularity");
    if (m > 2)
        throw UnsupportedSingularityError(
            "multiplicity " + std::to_string(m) +
            " singularity: supply (multiplicity, branches, delta) explicitly");

    std::size_t j = chart_index(p);
    ComplexPoint q = chart_normalize(p, j);
    JetClassification jc;
    if (auto lift = exact_lift(f, q)) {
        jc = classify_exact(local_expansion(f, *lift, j));
    } else {
        jc = classify_numeric(local_expansion(to_complex(f), q, j));
    }

    CurveSingularity s;
    s.location = normalize_projective(p);
    s.multiplicity = 2;
    if (jc.is_node) {
        s.branch_count = 2;
        s.delta = 1;
        s.kind = SingularityKind::node;
    } else if (jc.is_cusp) {
        s.branch_count = 1;
        s.delta = 1;
        s.kind = SingularityKind::cusp;
    } else {
        throw UnsupportedSingularityError(
            "degenerate double point (neither node nor cusp): supply "
            "(multiplicity, branches, delta) explicitly");
    }
    return s;
}

int euler_characteristic_curve(int degree, const std::vector<CurveSingularity>& singularities) {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    long delta_sum = 0, branch_excess = 0;
    for (const auto& s : singularities) {
        if (s.multiplicity < 2 || s.branch_count < 1 || s.delta < 1)
            throw std::invalid_argument("invalid singularity data");
        delta_sum += s.delta;
        branch_excess += s.branch_count - 1;
    }
    long genus = static_cast<long>(degree - 1) * (degree - 2) / 2 - delta_sum;
    if (genus < 0) throw std::invalid_argument("inconsistent singularity data: negative genus");
    return static_cast<int>(2 - 2 * genus - branch_excess);
}

long weighted_euler_characteristic(const std::vector<StratumDatum>& strata) {
    long acc = 0;
    for (const auto& s : strata) acc += s.chi * s.eu;
    return acc;
}

namespace {

/// Numeric incidence with exact confirmation when the point rationalizes.
bool lies_on(const RationalPoly& h, const ComplexPoint& p) {
    std::size_t j = chart_index(p);
    ComplexPoint q = chart_normalize(p, j);
    std::vector<GaussianRational> lift;
    bool exact = true;
    for (const Complex& c : q) {
        auto r = rationalize(c, 1e-7, 4096);
        if (!r) {
            exact = false;
            break;
        }
        lift.push_back(*r);
    }
    if (exact) return evaluate_exact(h, lift).is_zero();
    int d = h.total_degree();
    double scale = coeff_inf_norm(h) * static_cast<double>(h.term_count()) *
                   std::pow(std::max(1.0, inf_norm(q)), d);
    return std::abs(evaluate(h, q)) <= kIncidenceTol * scale;
}

bool beta_is_complex(const GenericData& g) {
    for (const auto& b : g.beta)
        if (b.im != 0) return true;
    return false;
}

}  // namespace

TopologyReport chi_eu_restricted(const RationalPoly& f, const GenericData& g0,
                                 const TrackerConfig& config,
                                 const std::vector<CurveSingularity>* user_data,
                                 const CountOptions& opts) {
    if (f.variable_count() != 3)
        throw std::invalid_argument("topological pipeline handles plane curves (3 variables)");
    auto [degree, homogeneous] = f.degree_and_homogeneity();
    if (!homogeneous) throw std::invalid_argument("defining polynomial must be homogeneous");
    if (is_isotropic_quadric_multiple(f))
        throw GenericityError("curve is contained in the isotropic quadric");

    const RationalPoly quadric = isotropic_quadric_form(3);

    // singular points and their local data; independent of beta
    std::vector<ComplexPoint> singular_points =
        find_projective_singular_points(f, 2, g0, config, opts);
    std::vector<CurveSingularity> singularities;
    for (const auto& sp : singular_points) {
        try {
            singularities.push_back(classify_singularity(f, sp));
        } catch (const UnsupportedSingularityError&) {
            const CurveSingularity* match = nullptr;
            if (user_data) {
                for (const auto& u : *user_data)
                    if (projective_distance(u.location, sp) < kMatchTol) match = &u;
            }
            if (!match) throw;
            CurveSingularity s = *match;
            s.location = normalize_projective(sp);
            s.kind = SingularityKind::user_supplied;
            singularities.push_back(std::move(s));
        }
    }

    const int chi_curve = euler_characteristic_curve(degree, singularities);
    const bool complex_mode = beta_is_complex(g0);
    std::vector<std::string> history;

    GenericData g = g0;
    const int attempts = std::max(1, opts.allow_resample ? opts.max_retries + 1 : 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0)
            g = sample_generic_beta(2, derive_seed(g0.seed, "topology-beta", attempt),
                                    complex_mode);
        const RationalPoly h_beta = linear_form(g.beta);

        CountReport xq =
            count_distinct_projective_intersection({f, quadric}, 2, g, config, opts);
        CountReport xh =
            count_distinct_projective_intersection({f, h_beta}, 2, g, config, opts);

        std::vector<std::string> flags;
        for (const auto& a : xq.witnesses)
            for (const auto& b : xh.witnesses)
                if (projective_distance(a, b) < kMatchTol)
                    flags.push_back("quadric_hyperplane_witness_overlap");
        for (auto& s : singularities) {
            s.on_quadric = lies_on(quadric, s.location);
            s.on_hyperplane = lies_on(h_beta, s.location);
            if (s.on_hyperplane) flags.push_back("singular_point_on_Hbeta");
        }
        if (!flags.empty()) {
            for (const auto& fl : flags)
                history.push_back(fl + " (attempt " + std::to_string(attempt) + ")");
            if (!opts.allow_resample)
                throw GenericityError("beta failed topology genericity checks (" + flags.front() +
                                      ") and resampling is disabled");
            continue;
        }

        TopologyReport report;
        report.chi_X = chi_curve;
        report.count_XQ = xq.count;
        report.count_XH = xh.count;
        report.singularities = singularities;
        report.chi_restricted = chi_curve - xq.count - xh.count;
        int correction = 0;
        for (const auto& s : singularities)
            if (!s.on_quadric && !s.on_hyperplane) correction += s.multiplicity - 1;
        report.chi_eu_restricted = report.chi_restricted + correction;
        report.ped_topological = -report.chi_eu_restricted;
        report.xq = std::move(xq);
        report.xh = std::move(xh);
        report.flags = history;
        report.generic_used = g;
        return report;
    }
    throw GenericityError("genericity retries exhausted for the topological pipeline");
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

std::vector<StratumDatum> read_strata(std::istream& in) {
    std::vector<StratumDatum> strata;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        StratumDatum s;
        if (!(ls >> s.label)) continue;  // blank
        if (!(ls >> s.chi >> s.eu))
            throw ParseError("strata line needs `label chi eu`", lineno);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens on strata line", lineno);
        strata.push_back(std::move(s));
    }
    return strata;
}

std::vector<StratumDatum> read_strata_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open strata file: " + path);
    return read_strata(in);
}

std::vector<CurveSingularity> read_singularities(std::istream& in) {
    std::vector<CurveSingularity> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        std::string point;
        if (!(ls >> point)) continue;
        CurveSingularity s;
        if (!(ls >> s.multiplicity >> s.branch_count >> s.delta))
            throw ParseError("singularity line needs `p0:p1:p2 m r delta`", lineno);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens on singularity line", lineno);
        ComplexPoint loc;
        std::size_t from = 0;
        while (from <= point.size()) {
            auto colon = point.find(':', from);
            std::string coord =
                colon == std::string::npos ? point.substr(from) : point.substr(from, colon - from);
            loc.push_back(parse_complex_literal(coord).to_complex());
            if (colon == std::string::npos) break;
            from = colon + 1;
        }
        if (loc.size() != 3) throw ParseError("point must have 3 coordinates", lineno);
        s.location = normalize_projective(loc);
        s.kind = SingularityKind::user_supplied;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<CurveSingularity> read_singularities_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open singularity file: " + path);
    return read_singularities(in);
}

}  // namespace pedd
