#include "pedd/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "pedd/rng.hpp"

namespace pedd {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double inf_norm(const ComplexPoint& x) {
    double m = 0.0;
    for (const Complex& c : x) m = std::max(m, std::abs(c));
    return m;
}

bool all_finite(const VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
}

}  // namespace

CompiledSystem::CompiledSystem(const PolynomialSystem& system) {
    std::vector<ComplexPoly> eqs;
    eqs.reserve(system.equations.size());
    for (const auto& p : system.equations) eqs.push_back(to_complex(p));
    nvars_ = system.variable_count;
    compile(std::move(eqs));
}

CompiledSystem::CompiledSystem(std::vector<ComplexPoly> equations) {
    if (equations.empty()) throw std::invalid_argument("empty system");
    nvars_ = equations.front().variable_count();
    compile(std::move(equations));
}

void CompiledSystem::compile(std::vector<ComplexPoly> eqs) {
    for (const auto& p : eqs) {
        if (p.variable_count() != nvars_) throw std::invalid_argument("variable count mismatch");
        if (p.is_zero()) throw std::invalid_argument("zero equation in system");
    }
    equations_ = std::move(eqs);
    degrees_.clear();
    for (const auto& p : equations_) degrees_.push_back(p.total_degree());
    max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
    coeff_norm_ = 0.0;
    for (const auto& p : equations_)
        for (const auto& [e, c] : p.terms()) coeff_norm_ = std::max(coeff_norm_, std::abs(c));
    jacobian_.clear();
    jacobian_.reserve(equations_.size() * nvars_);
    for (const auto& p : equations_)
        for (int j = 0; j < nvars_; ++j) jacobian_.push_back(p.partial_derivative(j));
}

long CompiledSystem::bezout_number() const {
    long b = 1;
    for (int d : degrees_) b *= d;
    return b;
}

namespace {

// Shared per-point power table: powers[i*(maxdeg+1)+k] = x_i^k.
void fill_powers(const ComplexPoint& x, int nvars, int maxdeg, std::vector<Complex>& powers) {
    powers.assign(static_cast<std::size_t>(nvars) * (maxdeg + 1), Complex(1.0));
    for (int i = 0; i < nvars; ++i)
        for (int k = 1; k <= maxdeg; ++k)
            powers[i * (maxdeg + 1) + k] = powers[i * (maxdeg + 1) + k - 1] * x[i];
}

Complex eval_with_powers(const ComplexPoly& p, const std::vector<Complex>& powers, int stride) {
    Complex acc(0.0);
    for (const auto& [e, c] : p.terms()) {
        Complex t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= powers[i * stride + e[i]];
        acc += t;
    }
    return acc;
}

}  // namespace

void CompiledSystem::evaluate(const ComplexPoint& x, std::vector<Complex>& out) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
    std::vector<Complex> powers;
    fill_powers(x, nvars_, max_degree_, powers);
    out.resize(equations_.size());
    for (std::size_t i = 0; i < equations_.size(); ++i)
        out[i] = eval_with_powers(equations_[i], powers, max_degree_ + 1);
}

void CompiledSystem::evaluate_with_jacobian(const ComplexPoint& x, std::vector<Complex>& f,
                                            std::vector<Complex>& jac) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
    std::vector<Complex> powers;
    fill_powers(x, nvars_, max_degree_, powers);
    int k = size();
    f.resize(k);
    jac.resize(static_cast<std::size_t>(k) * nvars_);
    for (int i = 0; i < k; ++i) f[i] = eval_with_powers(equations_[i], powers, max_degree_ + 1);
    for (std::size_t i = 0; i < jacobian_.size(); ++i)
        jac[i] = eval_with_powers(jacobian_[i], powers, max_degree_ + 1);
}

double CompiledSystem::residual_inf(const ComplexPoint& x) const {
    std::vector<Complex> f;
    evaluate(x, f);
    double m = 0.0;
    for (const Complex& c : f) m = std::max(m, std::abs(c));
    return m;
}

TotalDegreeStart total_degree_start(const CompiledSystem& target, std::uint64_t seed) {
    if (target.size() != target.variable_count())
        throw std::invalid_argument("total-degree start requires a square system");
    SeededRng rng(seed);
    StartSystem start;
    start.degrees = target.degrees();
    for (std::size_t i = 0; i < start.degrees.size(); ++i)
        start.constants.push_back(rng.unit_complex());
    start.gamma = rng.unit_complex();

    // start points: the full grid of d_i-th roots of c_i
    int k = target.size();
    std::vector<std::vector<Complex>> roots(k);
    for (int i = 0; i < k; ++i) {
        int d = start.degrees[i];
        double r = std::pow(std::abs(start.constants[i]), 1.0 / d);
        double base = std::arg(start.constants[i]);
        for (int j = 0; j < d; ++j) {
            double th = (base + 2.0 * 3.14159265358979323846 * j) / d;
            roots[i].push_back(Complex(r * std::cos(th), r * std::sin(th)));
        }
    }
    std::vector<ComplexPoint> points;
    points.reserve(static_cast<std::size_t>(target.bezout_number()));
    ComplexPoint cur(k);
    std::vector<int> idx(k, 0);
    while (true) {
        for (int i = 0; i < k; ++i) cur[i] = roots[i][idx[i]];
        points.push_back(cur);
        int i = k - 1;
        while (i >= 0 && ++idx[i] == start.degrees[i]) idx[i--] = 0;
        if (i < 0) break;
    }
    return {std::move(start), std::move(points)};
}

void Homotopy::evaluate(const ComplexPoint& x, double t, std::vector<Complex>& h,
                        std::vector<Complex>& hx, std::vector<Complex>& ht) const {
    int k = target_.size();
    target_.evaluate_with_jacobian(x, f_buf_, jac_buf_);
    h.resize(k);
    ht.resize(k);
    hx.assign(static_cast<std::size_t>(k) * k, Complex(0.0));
    Complex g1 = start_.gamma * (1.0 - t);
    for (int i = 0; i < k; ++i) {
        int d = start_.degrees[i];
        Complex xd = std::pow(x[i], d);
        Complex g = xd - start_.constants[i];
        Complex gx = static_cast<double>(d) * std::pow(x[i], d - 1);
        h[i] = g1 * g + t * f_buf_[i];
        ht[i] = f_buf_[i] - start_.gamma * g;
        for (int j = 0; j < k; ++j) hx[i * k + j] = t * jac_buf_[i * k + j];
        hx[i * k + i] += g1 * gx;
    }
}

namespace {

struct LinearSolver {
    MatrixXcd a;
    VectorXcd b;
    int k;

    explicit LinearSolver(int size) : a(size, size), b(size), k(size) {}

    // solve A dx = -rhs; false when the factorization is unusable
    bool solve(const std::vector<Complex>& mat, const std::vector<Complex>& rhs, VectorXcd& out) {
        for (int i = 0; i < k; ++i) {
            b[i] = -rhs[i];
            for (int j = 0; j < k; ++j) a(i, j) = mat[i * k + j];
        }
        Eigen::PartialPivLU<MatrixXcd> lu(a);
        out = lu.solve(b);
        return all_finite(out);
    }
};

// Newton iteration against the target system; mutates x in place.
// Returns the norm of the last step taken.
double polish_on_target(const CompiledSystem& target, ComplexPoint& x, int max_iters,
                        double tol, double divergence_norm) {
    int k = target.size();
    LinearSolver lin(k);
    std::vector<Complex> f, jac;
    VectorXcd dx(k);
    double last = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        target.evaluate_with_jacobian(x, f, jac);
        if (!lin.solve(jac, f, dx)) break;
        last = dx.norm();
        for (int i = 0; i < k; ++i) x[i] += dx[i];
        if (inf_norm(x) > divergence_norm) break;
        if (last <= tol * std::max(1.0, inf_norm(x))) break;
    }
    return last;
}

}  // namespace

TrackedSolution track_path(const Homotopy& homotopy, const ComplexPoint& start,
                           const TrackerConfig& config) {
    config.validate();
    const CompiledSystem& target = homotopy.target();
    const int k = target.size();
    const double accept_residual = config.newton_tolerance * (1.0 + target.coefficient_norm());

    TrackedSolution out;
    out.point = start;
    ComplexPoint& x = out.point;
    double t = 0.0;
    double h = config.initial_step;
    int consecutive = 0;
    bool diverged = false, gave_up = false;
    // endgame security classification: a stalled path whose norm blew past
    // this is a solution at infinity even though it never reached
    // divergence_norm (double precision cannot resolve 1-t far enough for
    // slowly-branching paths). Kept far above legitimate solution scales:
    // critical points near a singular locus carry huge multiplier values.
    const double security_norm = 1e-2 * config.divergence_norm;

    LinearSolver lin(k);
    std::vector<Complex> hv, hxv, htv;
    VectorXcd k1(k), k2(k), k3(k), k4(k), dx(k);
    ComplexPoint xs(k);

    auto davidenko = [&](const ComplexPoint& px, double pt, VectorXcd& slope) {
        homotopy.evaluate(px, pt, hv, hxv, htv);
        return lin.solve(hxv, htv, slope);
    };

    // one predictor-corrector attempt of size hs from (x, t); on success
    // advances x (and reports the accepted point through x itself)
    auto attempt_step = [&](double hs, double t2, double trust_factor) {
        bool ok = davidenko(x, t, k1);
        if (ok) {
            for (int i = 0; i < k; ++i) xs[i] = x[i] + 0.5 * hs * k1[i];
            ok = davidenko(xs, t + 0.5 * hs, k2);
        }
        if (ok) {
            for (int i = 0; i < k; ++i) xs[i] = x[i] + 0.5 * hs * k2[i];
            ok = davidenko(xs, t + 0.5 * hs, k3);
        }
        if (ok) {
            for (int i = 0; i < k; ++i) xs[i] = x[i] + hs * k3[i];
            ok = davidenko(xs, t + hs, k4);
        }
        if (!ok) return false;
        for (int i = 0; i < k; ++i)
            xs[i] = x[i] + hs / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        double pred_norm = inf_norm(xs);
        if (!std::isfinite(pred_norm)) return false;
        // Newton corrector at t2, confined to a trust region around the
        // prediction so it cannot hop into a different solution's basin
        double moved = 0.0;
        for (int it = 0; it < config.max_corrector_iterations; ++it) {
            homotopy.evaluate(xs, t2, hv, hxv, htv);
            if (!lin.solve(hxv, hv, dx)) return false;
            for (int i = 0; i < k; ++i) xs[i] += dx[i];
            moved += dx.norm();
            double nx = inf_norm(xs);
            if (!std::isfinite(nx) || nx > 10.0 * config.divergence_norm) return false;
            if (moved > trust_factor * std::max(1.0, pred_norm)) return false;
            if (dx.norm() <= config.newton_tolerance * std::max(1.0, nx)) {
                x = xs;
                return true;
            }
        }
        return false;
    };

    // Newton against the target from the stalled state, with the candidate
    // verified by tracking backward from it to the stall time: the candidate
    // is this path's endpoint only if its own solution curve leads back here.
    auto salvage_endpoint = [&]() {
        double nx = inf_norm(x);
        if (nx >= security_norm) return false;
        ComplexPoint xt = x;
        std::vector<Complex> f, jac;
        target.evaluate_with_jacobian(xt, f, jac);
        if (!lin.solve(jac, f, dx)) return false;
        if (dx.norm() > 0.25 * std::max(1.0, nx)) return false;
        for (int i = 0; i < k; ++i) xt[i] += dx[i];
        polish_on_target(target, xt, 40, config.newton_tolerance, config.divergence_norm);
        double moved = 0.0;
        for (int i = 0; i < k; ++i) moved += std::norm(xt[i] - x[i]);
        double displacement = std::sqrt(moved);
        if (displacement > 0.5 * std::max(1.0, nx)) return false;
        if (inf_norm(xt) > config.divergence_norm) return false;
        if (target.residual_inf(xt) >= accept_residual) return false;

        // backward verification: correct the homotopy at times walking from
        // 1 down to the stall time, starting at the candidate
        ComplexPoint w = xt;
        double rem_stall = 1.0 - t;
        bool back_ok = true;
        for (double frac : {1.0 / 64.0, 1.0 / 16.0, 1.0 / 4.0, 1.0}) {
            double tb = 1.0 - rem_stall * frac;
            bool corrected = false;
            for (int it = 0; it < 12; ++it) {
                homotopy.evaluate(w, tb, hv, hxv, htv);
                if (!lin.solve(hxv, hv, dx)) break;
                for (int i = 0; i < k; ++i) w[i] += dx[i];
                if (!std::isfinite(inf_norm(w))) break;
                if (dx.norm() <= 1e2 * config.newton_tolerance * std::max(1.0, inf_norm(w))) {
                    corrected = true;
                    break;
                }
            }
            if (!corrected) {
                back_ok = false;
                break;
            }
        }
        if (back_ok) {
            double dist = 0.0;
            for (int i = 0; i < k; ++i) dist += std::norm(w[i] - x[i]);
            if (std::sqrt(dist) > 0.1 * std::max(1.0, nx)) return false;
        } else {
            // backward correction can stall when the candidate is a singular
            // endpoint; accept only a genuinely local hop in that case
            if (displacement > 1e-2 * std::max(1.0, nx)) return false;
        }
        x = xt;
        return true;
    };

    // Cauchy test on log-spaced endgame samples: when the remaining time
    // keeps halving, a path with a finite endpoint moves geometrically less
    // per sample, while a path escaping to infinity keeps moving (its norm
    // may stay modest far longer than double precision can resolve 1-t).
    std::vector<std::pair<double, ComplexPoint>> endgame_samples;  // (1-t, x)
    auto record_growth = [&]() {
        double rem = 1.0 - t;
        if (!endgame_samples.empty() && rem > 0.6 * endgame_samples.back().first) return;
        endgame_samples.emplace_back(rem, x);
        if (endgame_samples.size() > 24)
            endgame_samples.erase(endgame_samples.begin());
    };
    auto diverging_by_growth = [&]() {
        std::size_t m = endgame_samples.size();
        if (m < 4) return false;
        if (endgame_samples.back().first > 0.25 * endgame_samples.front().first)
            return false;  // barely marched
        auto dist = [&](std::size_t a, std::size_t b) {
            double s = 0.0;
            for (int i = 0; i < k; ++i)
                s += std::norm(endgame_samples[a].second[i] - endgame_samples[b].second[i]);
            return std::sqrt(s);
        };
        double d1 = dist(m - 4, m - 3), d2 = dist(m - 3, m - 2), d3 = dist(m - 2, m - 1);
        double scale = std::max(1.0, inf_norm(endgame_samples[m - 1].second));
        return d3 >= 1e-2 * scale && d2 > 0.95 * d1 && d3 > 0.95 * d2;
    };

    const int max_steps = 5000;
    bool endpoint_salvaged = false;

    // main phase: adaptive stepping up to the endgame boundary. Step
    // underflow here falls through to the endgame march, which owns the
    // converged/diverged/failed classification.
    while (t < config.endgame_start) {
        ++out.steps;
        if (out.steps > max_steps) {
            gave_up = true;
            break;
        }
        if (inf_norm(x) > config.divergence_norm) {
            diverged = true;
            break;
        }
        double hs = std::min(h, config.endgame_start - t + 1e-12);
        if (attempt_step(hs, t + hs, 0.1)) {
            t += hs;
            if (++consecutive >= 3) {
                h = std::min(h * 2.0, config.initial_step);
                consecutive = 0;
            }
        } else {
            consecutive = 0;
            h = hs / 2.0;
            if (h < config.min_step) break;  // classified by the march below
        }
    }

    // endgame: adaptive stepping on the shrinking remainder. The step floor
    // is relative to the remaining time, so paths to infinity keep climbing
    // until they betray themselves (divergence norm, security norm, or
    // power-law growth), while a jump that lands on t=1 must reproduce under
    // step halving before it is believed.
    if (!diverged && !gave_up) {
        const int max_endgame_steps = 600;
        const double endgame_trust = 0.25;
        double h_eg = std::min(h, 0.5 * (1.0 - t));
        int eg_successes = 0;
        bool classified = false;
        for (int eg = 0; t < 1.0 && !classified; ++eg) {
            ++out.steps;
            if (inf_norm(x) > config.divergence_norm) {
                diverged = true;
                break;
            }
            double rem = 1.0 - t;
            record_growth();
            bool stall = eg >= max_endgame_steps || rem < 1e-13;
            bool advanced = false;
            if (!stall && h_eg >= rem) {
                // full jump to t=1, verified against two half-steps
                ComplexPoint x0 = x;
                if (attempt_step(rem, 1.0, endgame_trust)) {
                    ComplexPoint xa = x;
                    x = x0;
                    bool halves_ok = attempt_step(0.5 * rem, t + 0.5 * rem, endgame_trust) &&
                                     attempt_step(0.5 * rem, 1.0, endgame_trust);
                    if (halves_ok) {
                        double dist = 0.0;
                        for (int i = 0; i < k; ++i) dist += std::norm(x[i] - xa[i]);
                        if (std::sqrt(dist) <=
                            1e3 * config.newton_tolerance * std::max(1.0, inf_norm(xa))) {
                            t = 1.0;
                            advanced = true;
                        } else {
                            x = x0;  // halves disagree with the jump
                            h_eg = 0.5 * rem;
                        }
                    } else {
                        x = x0;
                        h_eg = 0.5 * rem;
                    }
                } else {
                    h_eg = 0.5 * rem;
                }
            } else if (!stall) {
                // small marching steps cannot basin-hop (the target roots only
                // attract at t=1), so they run without a trust cap; jumps to
                // t=1 keep theirs plus the halving verification
                if (attempt_step(h_eg, t + h_eg, h_eg <= 0.26 * rem ? 4.0 : endgame_trust)) {
                    t += h_eg;
                    advanced = true;
                    if (++eg_successes >= 3) {
                        h_eg = std::min(h_eg * 2.0, config.initial_step);
                        eg_successes = 0;
                    }
                } else {
                    eg_successes = 0;
                    h_eg *= 0.5;
                    if (h_eg >= 1e-10 * rem) continue;  // keep trying smaller
                }
            }
            if (!advanced && !stall && h_eg >= 1e-10 * (1.0 - t)) continue;
            if (!advanced) {
                // stalled or out of resolution: classify what we are looking at
                if (salvage_endpoint()) {
                    endpoint_salvaged = true;
                } else if (inf_norm(x) >= security_norm || diverging_by_growth()) {
                    diverged = true;
                } else {
                    gave_up = true;
                }
                classified = true;
            }
        }
    }

    out.t_final = t;
    if (diverged || inf_norm(x) > config.divergence_norm) {
        out.status = PathStatus::diverged;
        out.residual = 0.0;
        return out;
    }
    if (gave_up || (t < 1.0 && !endpoint_salvaged)) {
        out.status = PathStatus::failed;
        out.residual = target.residual_inf(x);
        return out;
    }
    // endpoint: sharpen against the target and classify by residual
    polish_on_target(target, x, 8, config.newton_tolerance, config.divergence_norm);
    if (inf_norm(x) > config.divergence_norm) {
        out.status = PathStatus::diverged;
        return out;
    }
    out.residual = target.residual_inf(x);
    if (out.residual < accept_residual) {
        out.status = PathStatus::converged;
    } else if (inf_norm(x) >= security_norm) {
        out.status = PathStatus::diverged;
    } else {
        out.status = PathStatus::failed;
    }
    return out;
}

namespace {

std::vector<std::int64_t> rounding_key(const ComplexPoint& x) {
    std::vector<std::int64_t> key;
    key.reserve(2 * x.size());
    for (const Complex& c : x) {
        key.push_back(std::llround(c.real() * 1e9));
        key.push_back(std::llround(c.imag() * 1e9));
    }
    return key;
}

double distance(const ComplexPoint& a, const ComplexPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double dr = a[i].real() - b[i].real(), di = a[i].imag() - b[i].imag();
        s += dr * dr + di * di;
    }
    return std::sqrt(s);
}

}  // namespace

SolveResult solve_system(const CompiledSystem& system, const TrackerConfig& config,
                         const SolveOptions& options) {
    config.validate();
    if (system.size() != system.variable_count())
        throw std::invalid_argument("solve_system requires a square system");

    TotalDegreeStart tds = total_degree_start(system, config.rng_seed);
    Homotopy homotopy(system, tds.start);

    std::vector<TrackedSolution> paths(tds.points.size());
    int workers = options.workers > 0
                      ? options.workers
                      : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(tds.points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tds.points.size(); ++i)
            paths[i] = track_path(homotopy, tds.points[i], config);
    } else {
        std::atomic<std::size_t> next(0);
        auto work = [&]() {
            // each homotopy evaluation shares buffers; give each worker its own
            Homotopy local(system, tds.start);
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tds.points.size()) return;
                paths[i] = track_path(local, tds.points[i], config);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SolveResult result;
    result.summary.expected_paths = system.bezout_number();
    for (const auto& p : paths) {
        switch (p.status) {
            case PathStatus::converged: ++result.summary.converged; break;
            case PathStatus::diverged: ++result.summary.diverged; break;
            case PathStatus::failed: ++result.summary.failed; break;
        }
    }

    // single-linkage clustering of converged endpoints (path order: this is
    // deterministic and independent of worker scheduling)
    std::vector<std::size_t> conv;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].status == PathStatus::converged) conv.push_back(i);
    std::vector<int> cluster(conv.size(), -1);
    int nclusters = 0;
    for (std::size_t i = 0; i < conv.size(); ++i) {
        if (cluster[i] >= 0) continue;
        int id = nclusters++;
        cluster[i] = id;
        std::vector<std::size_t> frontier{i};
        while (!frontier.empty()) {
            std::size_t j = frontier.back();
            frontier.pop_back();
            for (std::size_t m = 0; m < conv.size(); ++m) {
                if (cluster[m] >= 0) continue;
                if (distance(paths[conv[j]].point, paths[conv[m]].point) <= config.cluster_radius) {
                    cluster[m] = id;
                    frontier.push_back(m);
                }
            }
        }
    }

    struct Rep {
        TrackedSolution sol;
        std::vector<std::int64_t> key;
    };
    std::vector<Rep> reps(nclusters);
    std::vector<int> sizes(nclusters, 0);
    for (std::size_t i = 0; i < conv.size(); ++i) {
        const TrackedSolution& s = paths[conv[i]];
        int id = cluster[i];
        ++sizes[id];
        if (reps[id].key.empty() || s.residual < reps[id].sol.residual ||
            (s.residual == reps[id].sol.residual && rounding_key(s.point) < reps[id].key)) {
            reps[id].sol = s;
            reps[id].key = rounding_key(s.point);
        }
    }
    for (int id = 0; id < nclusters; ++id) reps[id].sol.cluster_size = sizes[id];
    std::sort(reps.begin(), reps.end(), [](const Rep& a, const Rep& b) { return a.key < b.key; });
    result.solutions.reserve(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        reps[i].sol.cluster_id = static_cast<int>(i);
        result.solutions.push_back(std::move(reps[i].sol));
    }
    if (options.keep_paths) {
        // tag each converged path with the cluster it landed in
        for (std::size_t i = 0; i < conv.size(); ++i) {
            for (std::size_t r = 0; r < result.solutions.size(); ++r)
                if (distance(paths[conv[i]].point, result.solutions[r].point) <=
                    2.0 * config.cluster_radius)
                    paths[conv[i]].cluster_id = static_cast<int>(r);
        }
        result.paths = std::move(paths);
    }
    return result;
}

SolveResult solve_system(const PolynomialSystem& system, const TrackerConfig& config,
                         const SolveOptions& options) {
    return solve_system(CompiledSystem(system), config, options);
}

std::vector<double> newton_step_norms(const CompiledSystem& system, ComplexPoint point, int steps) {
    int k = system.size();
    LinearSolver lin(k);
    std::vector<Complex> f, jac;
    VectorXcd dx(k);
    std::vector<double> norms;
    for (int it = 0; it < steps; ++it) {
        system.evaluate_with_jacobian(point, f, jac);
        if (!lin.solve(jac, f, dx)) break;
        norms.push_back(dx.norm());
        for (int i = 0; i < k; ++i) point[i] += dx[i];
    }
    return norms;
}

}  // namespace pedd
