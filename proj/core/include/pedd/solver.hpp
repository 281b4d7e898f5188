#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pedd/polynomial.hpp"

namespace pedd {

struct TrackerConfig {
    double newton_tolerance = 1e-10;
    int max_corrector_iterations = 5;
    double initial_step = 0.05;
    double min_step = 1e-7;
    double divergence_norm = 1e8;
    double endgame_start = 0.9;
    double cluster_radius = 1e-6;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!(min_step > 0 && min_step < initial_step))
            throw std::invalid_argument("require 0 < min_step < initial_step");
        if (!(initial_step > 0 && initial_step <= 1))
            throw std::invalid_argument("initial_step must lie in (0,1]");
        if (!(newton_tolerance > 0 && newton_tolerance < cluster_radius))
            throw std::invalid_argument("require 0 < newton_tolerance < cluster_radius");
        if (!(divergence_norm > 0)) throw std::invalid_argument("divergence_norm must be positive");
        if (!(endgame_start > 0 && endgame_start < 1))
            throw std::invalid_argument("endgame_start must lie in (0,1)");
        if (max_corrector_iterations < 1)
            throw std::invalid_argument("max_corrector_iterations must be >= 1");
    }
};

enum class PathStatus { converged, diverged, failed };

struct TrackedSolution {
    ComplexPoint point;
    double residual = 0.0;
    PathStatus status = PathStatus::failed;
    std::optional<int> cluster_id;
    int cluster_size = 1;
    int steps = 0;
    double t_final = 0.0;  // how far along [0,1] the path got
};

/// Start data of a total-degree homotopy: G_i = x_i^{d_i} - c_i, together
/// with the gamma of H(x,t) = gamma*(1-t)*G(x) + t*F(x).
struct StartSystem {
    std::vector<int> degrees;
    std::vector<Complex> constants;
    Complex gamma;
};

struct TotalDegreeStart {
    StartSystem start;
    std::vector<ComplexPoint> points;
};

/// Complex view of a square system plus its Jacobian, ready for tracking.
class CompiledSystem {
public:
    explicit CompiledSystem(const PolynomialSystem& system);
    explicit CompiledSystem(std::vector<ComplexPoly> equations);

    int size() const { return static_cast<int>(equations_.size()); }
    int variable_count() const { return nvars_; }
    const std::vector<int>& degrees() const { return degrees_; }
    long bezout_number() const;
    /// Max absolute coefficient over all equations.
    double coefficient_norm() const { return coeff_norm_; }

    void evaluate(const ComplexPoint& x, std::vector<Complex>& out) const;
    /// Jacobian in row-major order, size k*k.
    void evaluate_with_jacobian(const ComplexPoint& x, std::vector<Complex>& f,
                                std::vector<Complex>& jac) const;
    double residual_inf(const ComplexPoint& x) const;

private:
    void compile(std::vector<ComplexPoly> eqs);

    int nvars_ = 0;
    std::vector<ComplexPoly> equations_;
    std::vector<ComplexPoly> jacobian_;  // row-major k*k
    std::vector<int> degrees_;
    int max_degree_ = 0;
    double coeff_norm_ = 0.0;
};

/// Seeded start system and the full grid of product-of-roots start points.
TotalDegreeStart total_degree_start(const CompiledSystem& target, std::uint64_t seed);

/// Shares scratch buffers across evaluations, so one instance must not be
/// used from two threads at once; workers each hold their own.
class Homotopy {
public:
    Homotopy(const CompiledSystem& target, StartSystem start)
        : target_(target), start_(std::move(start)) {}

    const CompiledSystem& target() const { return target_; }
    const StartSystem& start() const { return start_; }

    /// H, dH/dx (row-major), dH/dt at (x, t).
    void evaluate(const ComplexPoint& x, double t, std::vector<Complex>& h,
                  std::vector<Complex>& hx, std::vector<Complex>& ht) const;

private:
    const CompiledSystem& target_;
    StartSystem start_;
    mutable std::vector<Complex> f_buf_, jac_buf_;
};

/// Predictor-corrector tracking of one path from t=0 to t=1: RK4 on the
/// Davidenko ODE, Newton correction, adaptive step halving/doubling.
TrackedSolution track_path(const Homotopy& homotopy, const ComplexPoint& start,
                           const TrackerConfig& config);

struct SolveSummary {
    int converged = 0;
    int diverged = 0;
    int failed = 0;
    long expected_paths = 0;
    bool conserved() const { return converged + diverged + failed == expected_paths; }
};

struct SolveResult {
    /// One representative per cluster, deterministically ordered.
    std::vector<TrackedSolution> solutions;
    SolveSummary summary;
    /// All per-path endpoints in start-point order (kept when requested).
    std::vector<TrackedSolution> paths;
};

struct SolveOptions {
    int workers = 0;  // 0: hardware concurrency
    bool keep_paths = false;
};

/// Tracks every start point of the total-degree homotopy, clusters converged
/// endpoints (single linkage, cluster_radius), and returns one representative
/// per cluster sorted by rounded-coordinate key. Deterministic for fixed
/// (system, config, seed) regardless of worker count.
SolveResult solve_system(const PolynomialSystem& system, const TrackerConfig& config,
                         const SolveOptions& options = {});
SolveResult solve_system(const CompiledSystem& system, const TrackerConfig& config,
                         const SolveOptions& options = {});

/// Newton step norms at `point` for the square `system` (test/verification
/// helper: a genuine solution contracts).
std::vector<double> newton_step_norms(const CompiledSystem& system, ComplexPoint point, int steps);

}  // namespace pedd
