#include "pedd/ed_systems.hpp"

#include <algorithm>
#include <cmath>

#include "pedd/errors.hpp"
#include "pedd/rng.hpp"

namespace pedd {

namespace {

constexpr double kSmoothnessTol = 1e-8;     // relative smooth-cone-point filter
constexpr double kHyperplaneTol = 1e-8;     // Prop-style l_beta exclusion
constexpr double kProjectiveMatchTol = 1e-6;
constexpr double kPartialVanishTol = 1e-6;  // singular-point filter

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

bool beta_is_complex(const GenericData& g) {
    for (const auto& b : g.beta)
        if (b.im != 0) return true;
    return false;
}

GaussianRational sum_of_squares(const std::vector<GaussianRational>& v) {
    GaussianRational s;
    for (const auto& b : v) s += b * b;
    return s;
}

PathTriple to_triple(const SolveSummary& s) {
    return {s.converged, s.diverged, s.failed, s.expected_paths};
}

}  // namespace

GenericData sample_generic_beta(int n, std::uint64_t seed, bool complex_entries) {
    if (n < 1) throw std::invalid_argument("ambient projective dimension must be >= 1");
    SeededRng rng(seed);
    GenericData g;
    g.seed = seed;
    while (true) {
        g.beta.clear();
        for (int i = 0; i <= n; ++i) {
            GaussianRational b(rng.small_rational());
            if (complex_entries) b.im = rng.small_rational();
            g.beta.push_back(b);
        }
        if (!sum_of_squares(g.beta).is_zero()) break;  // also excludes beta = 0
    }
    g.chart.clear();
    for (int i = 0; i <= n; ++i) g.chart.push_back(GaussianRational(rng.small_rational()));
    return g;
}

RationalPoly isotropic_quadric_form(int nvars) {
    RationalPoly q(nvars);
    for (int i = 0; i < nvars; ++i) {
        Exponents e(nvars, 0);
        e[i] = 2;
        q.add_term(std::move(e), GaussianRational(1));
    }
    return q;
}

RationalPoly linear_form(const std::vector<GaussianRational>& coeffs) {
    int n = static_cast<int>(coeffs.size());
    RationalPoly l(n);
    for (int i = 0; i < n; ++i) {
        Exponents e(n, 0);
        e[i] = 1;
        l.add_term(std::move(e), coeffs[i]);
    }
    return l;
}

bool is_isotropic_quadric_multiple(const RationalPoly& f) {
    const RationalPoly q = isotropic_quadric_form(f.variable_count());
    if (f.term_count() != q.term_count() || f.is_zero()) return false;
    GaussianRational ratio;
    bool have_ratio = false;
    auto fit = f.terms().begin();
    auto qit = q.terms().begin();
    for (; fit != f.terms().end(); ++fit, ++qit) {
        if (fit->first != qit->first) return false;
        if (!have_ratio) {
            ratio = fit->second / qit->second;
            have_ratio = true;
        } else if (fit->second != ratio * qit->second) {
            return false;
        }
    }
    return true;
}

namespace {

void check_hypersurface_input(const RationalPoly& f, const GenericData& g) {
    if (f.is_zero()) throw std::invalid_argument("zero defining polynomial");
    auto [deg, homogeneous] = f.degree_and_homogeneity();
    if (!homogeneous) throw std::invalid_argument("defining polynomial must be homogeneous");
    if (deg < 1) throw std::invalid_argument("defining polynomial must have degree >= 1");
    if (static_cast<int>(g.beta.size()) != f.variable_count())
        throw std::invalid_argument("beta length must match the number of variables");
}

}  // namespace

PolynomialSystem build_cone_critical_system(const RationalPoly& f, const GenericData& g) {
    check_hypersurface_input(f, g);
    const int nx = f.variable_count();  // ambient coordinates x_0..x_n
    const int nv = nx + 1;              // plus the multiplier
    PolynomialSystem sys;
    sys.variable_count = nv;
    sys.equations.push_back(embed(f, nv));
    const RationalPoly lambda = RationalPoly::variable(nv, nx);
    for (int i = 0; i < nx; ++i) {
        RationalPoly eq = RationalPoly::variable(nv, i);
        eq = eq - RationalPoly::constant(nv, g.beta[i]);
        eq = eq - lambda * embed(f.partial_derivative(i), nv);
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

PolynomialSystem build_double_cover_system(const RationalPoly& f, const GenericData& g) {
    check_hypersurface_input(f, g);
    const int nx = f.variable_count();
    const int nv = nx + 2;  // two multipliers
    PolynomialSystem sys;
    sys.variable_count = nv;
    sys.equations.push_back(embed(f, nv));
    RationalPoly sphere = embed(isotropic_quadric_form(nx), nv);
    sphere = sphere - RationalPoly::constant(nv, GaussianRational(1));
    sys.equations.push_back(std::move(sphere));
    const RationalPoly lambda = RationalPoly::variable(nv, nx);
    const RationalPoly mu = RationalPoly::variable(nv, nx + 1);
    for (int i = 0; i < nx; ++i) {
        RationalPoly eq = RationalPoly::constant(nv, g.beta[i]);
        eq = eq - lambda * embed(f.partial_derivative(i), nv);
        eq = eq - GaussianRational(2) * (mu * RationalPoly::variable(nv, i));
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

double projective_distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double na = 0.0, nb = 0.0;
    Complex dot(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
        dot += std::conj(a[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    double c = std::norm(dot) / (na * nb);
    return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, c)));
}

ComplexPoint normalize_projective(const ComplexPoint& p) {
    double n2 = 0.0;
    for (const Complex& c : p) n2 += std::norm(c);
    if (n2 == 0.0) return p;
    double inv = 1.0 / std::sqrt(n2);
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::abs(p[i]) > best + 1e-12) {
            best = std::abs(p[i]);
            pivot = i;
        }
    }
    Complex phase = p[pivot] / std::abs(p[pivot]);
    ComplexPoint out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * inv / phase;
    return out;
}

namespace {

enum class CriticalKind { cone, double_cover };

CountReport count_critical(CriticalKind kind, const RationalPoly& f, const GenericData& g0,
                           const TrackerConfig& config, const CountOptions& opts) {
    check_hypersurface_input(f, g0);
    if (is_isotropic_quadric_multiple(f))
        throw GenericityError("variety is contained in the isotropic quadric");
    const int nx = f.variable_count();
    const int n = nx - 1;
    const int deg = f.total_degree();
    const bool complex_mode = beta_is_complex(g0);
    const char* tag = kind == CriticalKind::cone ? "cone" : "double-cover";

    std::vector<RationalPoly> partials;
    for (int i = 0; i < nx; ++i) partials.push_back(f.partial_derivative(i));
    const double grad_scale = [&] {
        double m = 0.0;
        for (const auto& p : partials) m = std::max(m, coeff_inf_norm(p));
        return std::max(m, 1e-300);
    }();

    std::vector<std::string> history;
    GenericData g = g0;
    const int attempts = std::max(1, opts.max_retries + 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0 && opts.allow_resample)
            g = sample_generic_beta(n, derive_seed(g0.seed, "resample-beta", attempt), complex_mode);

        PolynomialSystem sys = kind == CriticalKind::cone ? build_cone_critical_system(f, g)
                                                          : build_double_cover_system(f, g);
        TrackerConfig cfg = config;
        cfg.rng_seed = derive_seed(g.seed, tag, attempt);
        SolveResult res = solve_system(sys, cfg, opts.solve);

        CountReport report;
        report.path_summary = to_triple(res.summary);
        report.generic_used = g;
        report.genericity_flags = history;
        report.paths = std::move(res.paths);

        // keep converged, pairwise-distinct solutions at smooth cone points
        for (const auto& sol : res.solutions) {
            ComplexPoint x(sol.point.begin(), sol.point.begin() + nx);
            double grad = 0.0;
            for (const auto& p : partials) grad = std::max(grad, std::abs(evaluate(p, x)));
            double scale = grad_scale * std::pow(std::max(1.0, inf_norm(x)), deg - 1);
            if (grad <= kSmoothnessTol * scale) continue;
            report.witnesses.push_back(std::move(x));
            report.cluster_sizes.push_back(sol.cluster_size);
        }
        report.count = static_cast<int>(report.witnesses.size());

        std::vector<std::string> flags;
        if (kind == CriticalKind::cone) {
            const RationalPoly l_beta = linear_form(g.beta);
            double beta_norm = 0.0;
            for (const auto& b : g.beta) beta_norm = std::max(beta_norm, std::abs(b.to_complex()));
            for (const auto& x : report.witnesses) {
                double scale = (1.0 + beta_norm) * std::max(1.0, inf_norm(x));
                if (std::abs(evaluate(l_beta, x)) <= kHyperplaneTol * scale) {
                    flags.push_back("point_on_Hbeta");
                    break;
                }
            }
        }
        if (kind == CriticalKind::cone) {
            // on the double cover the deck pair (x, -x) is expected instead
            for (std::size_t a = 0; a < report.witnesses.size() && flags.empty(); ++a) {
                for (std::size_t b = a + 1; b < report.witnesses.size(); ++b) {
                    if (projective_distance(report.witnesses[a], report.witnesses[b]) <
                        kProjectiveMatchTol) {
                        flags.push_back("scalar_pair");
                        break;
                    }
                }
            }
        }

        if (!flags.empty() && !opts.allow_resample)
            throw GenericityError("beta failed genericity checks (" + flags.front() +
                                  ") and resampling is disabled");
        // tracking failures retry with a fresh start system even when beta
        // is pinned: the endpoints do not depend on the gamma/start draw
        if (res.summary.failed > 0) flags.push_back("failed_paths");
        if (flags.empty()) return report;
        for (const auto& fl : flags)
            history.push_back(fl + " (attempt " + std::to_string(attempt) + ")");
    }
    throw GenericityError(std::string("genericity retries exhausted for the ") + tag +
                          " critical count");
}

}  // namespace

CountReport count_cone_critical_points(const RationalPoly& f, const GenericData& g,
                                       const TrackerConfig& config, const CountOptions& opts) {
    return count_critical(CriticalKind::cone, f, g, config, opts);
}

CountReport count_double_cover_critical_points(const RationalPoly& f, const GenericData& g,
                                               const TrackerConfig& config,
                                               const CountOptions& opts) {
    return count_critical(CriticalKind::double_cover, f, g, config, opts);
}

namespace {

struct ChartSolve {
    std::vector<ComplexPoint> points;  // normalized projective representatives
    std::vector<int> cluster_sizes;
    PathTriple paths;
};

ChartSolve solve_on_chart(const std::vector<RationalPoly>& polys, int n,
                          const std::vector<GaussianRational>& chart, const TrackerConfig& config,
                          std::uint64_t solve_seed, const SolveOptions& solve_opts) {
    const int nv = n + 1;
    PolynomialSystem sys;
    sys.variable_count = nv;
    for (const auto& p : polys) sys.equations.push_back(p);
    RationalPoly ch = linear_form(chart);
    ch = ch - RationalPoly::constant(nv, GaussianRational(1));
    sys.equations.push_back(std::move(ch));
    if (!sys.is_square())
        throw std::invalid_argument("projective intersection needs exactly n polynomials in P^n");
    TrackerConfig cfg = config;
    cfg.rng_seed = solve_seed;
    SolveResult res = solve_system(sys, cfg, solve_opts);
    ChartSolve out;
    out.paths = to_triple(res.summary);
    for (const auto& sol : res.solutions) {
        out.points.push_back(normalize_projective(sol.point));
        out.cluster_sizes.push_back(sol.cluster_size);
    }
    return out;
}

bool projective_sets_match(const std::vector<ComplexPoint>& a, const std::vector<ComplexPoint>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        bool found = false;
        for (const auto& q : b)
            if (projective_distance(p, q) < kProjectiveMatchTol) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

std::vector<GaussianRational> sample_chart(int nv, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<GaussianRational> chart;
    for (int i = 0; i < nv; ++i) chart.push_back(GaussianRational(rng.small_rational()));
    return chart;
}

}  // namespace

CountReport count_distinct_projective_intersection(const std::vector<RationalPoly>& polys, int n,
                                                   const GenericData& g,
                                                   const TrackerConfig& config,
                                                   const CountOptions& opts) {
    if (polys.empty()) throw std::invalid_argument("no polynomials given");
    for (const auto& p : polys) {
        if (p.variable_count() != n + 1)
            throw std::invalid_argument("intersection polynomials must have n+1 variables");
        if (p.is_zero() || !p.degree_and_homogeneity().second)
            throw std::invalid_argument("intersection polynomials must be nonzero homogeneous");
    }
    std::vector<std::string> history;
    const int attempts = std::max(1, opts.allow_resample ? opts.max_retries + 1 : 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::vector<GaussianRational> chart1 =
            attempt == 0 ? g.chart : sample_chart(n + 1, derive_seed(g.seed, "chart1", attempt));
        std::vector<GaussianRational> chart2 =
            sample_chart(n + 1, derive_seed(g.seed, "chart2", attempt));
        ChartSolve s1 = solve_on_chart(polys, n, chart1, config,
                                       derive_seed(g.seed, "isect1", attempt), opts.solve);
        ChartSolve s2 = solve_on_chart(polys, n, chart2, config,
                                       derive_seed(g.seed, "isect2", attempt), opts.solve);
        if (s1.paths.failed > 0 || s2.paths.failed > 0) {
            history.push_back("failed_paths (attempt " + std::to_string(attempt) + ")");
            continue;
        }
        if (projective_sets_match(s1.points, s2.points)) {
            CountReport report;
            report.count = static_cast<int>(s1.points.size());
            report.path_summary = s1.paths;
            report.witnesses = s1.points;
            report.cluster_sizes = s1.cluster_sizes;
            report.genericity_flags = history;
            report.generic_used = g;
            report.generic_used.chart = chart1;
            return report;
        }
        history.push_back("chart_instability (attempt " + std::to_string(attempt) + ")");
        if (!opts.allow_resample) break;
    }
    throw GenericityError("projective intersection count is chart-unstable");
}

std::vector<ComplexPoint> find_projective_singular_points(const RationalPoly& f, int n,
                                                          const GenericData& g,
                                                          const TrackerConfig& config,
                                                          const CountOptions& opts) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    if (f.variable_count() != n + 1)
        throw std::invalid_argument("polynomial must have n+1 variables");
    auto [deg, homogeneous] = f.degree_and_homogeneity();
    if (!homogeneous) throw std::invalid_argument("polynomial must be homogeneous");
    if (deg == 1) return {};  // hyperplanes are smooth

    std::vector<RationalPoly> partials;
    for (int i = 0; i <= n; ++i) partials.push_back(f.partial_derivative(i));
    double dscale = 0.0;
    for (const auto& p : partials) dscale = std::max(dscale, coeff_inf_norm(p));

    auto filter_singular = [&](const std::vector<ComplexPoint>& pts) {
        std::vector<ComplexPoint> kept;
        for (const auto& x : pts) {
            double scale = dscale * std::pow(std::max(1.0, inf_norm(x)), deg - 1);
            bool singular = true;
            for (const auto& p : partials)
                if (std::abs(evaluate(p, x)) > kPartialVanishTol * scale) {
                    singular = false;
                    break;
                }
            if (singular) kept.push_back(x);
        }
        return kept;
    };

    const int attempts = std::max(1, opts.allow_resample ? opts.max_retries + 1 : 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        // n random combinations of the n+1 partials cut out a finite superset
        // of the singular locus; the filter keeps the true singular points
        SeededRng rng(derive_seed(g.seed, "singular-combos", attempt));
        std::vector<RationalPoly> combos;
        for (int j = 0; j < n; ++j) {
            RationalPoly combo(n + 1);
            for (int i = 0; i <= n; ++i)
                combo = combo + GaussianRational(rng.small_rational()) * partials[i];
            if (combo.is_zero()) combo = partials[0];
            combos.push_back(std::move(combo));
        }
        std::vector<GaussianRational> chart1 = sample_chart(n + 1, derive_seed(g.seed, "sing-chart1", attempt));
        std::vector<GaussianRational> chart2 = sample_chart(n + 1, derive_seed(g.seed, "sing-chart2", attempt));
        ChartSolve s1 = solve_on_chart(combos, n, chart1, config,
                                       derive_seed(g.seed, "sing1", attempt), opts.solve);
        ChartSolve s2 = solve_on_chart(combos, n, chart2, config,
                                       derive_seed(g.seed, "sing2", attempt), opts.solve);
        if (s1.paths.failed > 0 || s2.paths.failed > 0) continue;
        std::vector<ComplexPoint> k1 = filter_singular(s1.points);
        std::vector<ComplexPoint> k2 = filter_singular(s2.points);
        if (projective_sets_match(k1, k2)) return k1;
    }
    throw GenericityError(
        "positive-dimensional singular locus: not supported for automated topology");
}

}  // namespace pedd
