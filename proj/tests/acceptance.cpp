// Acceptance suite: runs every agreed-on target with its tolerance and prints
// one pass/fail line per criterion. Exit code 0 only when all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "pedd/curve_topology.hpp"
#include "pedd/report.hpp"

using namespace pedd;

namespace {

#ifndef PEDD_DATA_DIR
#define PEDD_DATA_DIR "data"
#endif

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

struct RunOutcome {
    EDReport report;
    double seconds = 0.0;
};

// every (example, seed) pair is computed once and reused across criteria
std::map<std::pair<std::string, std::uint64_t>, RunOutcome> g_runs;

const RunOutcome& run_example(const std::string& name, std::uint64_t seed) {
    auto key = std::make_pair(name, seed);
    auto it = g_runs.find(key);
    if (it != g_runs.end()) return it->second;
    const ExampleSpec* ex = find_example(name);
    if (!ex) throw std::logic_error("unknown example " + name);
    RunOptions o;
    o.poly_text = ex->poly_text;
    o.variables = ex->variables;
    o.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    outcome.report = run_variety(o);
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return g_runs.emplace(key, std::move(outcome)).first->second;
}

const std::vector<std::uint64_t> kSeeds = {7, 8, 9};

char buf[256];

}  // namespace

// Ex 4.1-style nodal cubic: all three pipelines give 7, the cover gives 14,
// exactly, across three seeds, under 10 s per seed.
void criterion_1() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed : kSeeds) {
        const RunOutcome& run = run_example("nodal-cubic-1", seed);
        const EDReport& r = run.report;
        bool ok = r.ped_numeric == 7 && r.ped_topological == 7 && r.cover &&
                  r.cover->count == 14 && r.all_checks_pass() && run.seconds < 10.0;
        std::snprintf(buf, sizeof(buf), "seed %llu: ped %d topo %d cover %d (%.2fs); ",
                      (unsigned long long)seed, r.ped_numeric,
                      r.ped_topological.value_or(-999), r.cover ? r.cover->count : -1,
                      run.seconds);
        detail += buf;
        pass = pass && ok;
    }
    report(1, pass, "nodal cubic x0^2*x2 - x1^2*(x1+x2): 7/7/14 across 3 seeds, <10s each",
           detail);
}

// complex-coefficient nodal cubic with its node on the isotropic quadric
void criterion_2() {
    const RunOutcome& run = run_example("nodal-cubic-2", 7);
    const EDReport& r = run.report;
    bool pass = r.ped_numeric == 7 && r.ped_topological == 7 && r.topology &&
                r.topology->count_XQ == 5 && r.all_checks_pass() && run.seconds < 10.0;
    std::snprintf(buf, sizeof(buf), "ped %d topo %d |XQ| %d (%.2fs)", r.ped_numeric,
                  r.ped_topological.value_or(-999), r.topology ? r.topology->count_XQ : -1,
                  run.seconds);
    report(2, pass, "cubic x0^2*x1 - (x1 - i*x2)^2*x2: 7/7 and 5 quadric points, <10s", buf);
}

// cubic tangent to the quadric: the tangency shows up as one fat cluster
void criterion_3() {
    const RunOutcome& run = run_example("tangent-cubic", 7);
    const EDReport& r = run.report;
    int fat = 0;
    if (r.topology)
        for (int s : r.topology->xq.cluster_sizes)
            if (s == 2) ++fat;
    bool pass = r.ped_numeric == 6 && r.ped_topological == 6 && r.topology &&
                r.topology->count_XQ == 5 && fat == 1 && r.all_checks_pass() &&
                run.seconds < 10.0;
    std::snprintf(buf, sizeof(buf), "ped %d topo %d |XQ| %d fat-clusters %d (%.2fs)",
                  r.ped_numeric, r.ped_topological.value_or(-999),
                  r.topology ? r.topology->count_XQ : -1, fat, run.seconds);
    report(3, pass, "cubic x0^3 - (i*x0^2 + x1^2)*x2: 6/6, 5 quadric points, one tangency, <10s",
           buf);
}

// the surface: 243 cone paths, count 10, cover 20; the strata file carries
// the topological side
void criterion_4() {
    const RunOutcome& run = run_example("whitney-surface", 7);
    const EDReport& r = run.report;
    long weighted = weighted_euler_characteristic(
        read_strata_file(std::string(PEDD_DATA_DIR) + "/whitney-surface.strata"));
    bool pass = r.ped_numeric == 10 && r.cone.path_summary.expected == 243 && r.cover &&
                r.cover->count == 20 && weighted == 10 && r.all_checks_pass() &&
                run.seconds < 60.0;
    std::snprintf(buf, sizeof(buf), "ped %d over %ld paths, cover %d, strata chi %ld (%.2fs)",
                  r.ped_numeric, r.cone.path_summary.expected, r.cover ? r.cover->count : -1,
                  weighted, run.seconds);
    report(4, pass, "surface x0^2*x1 - x2*x3^2: 10 over 243 paths, cover 20, strata give 10, <60s",
           buf);
}

void criterion_5() {
    const EDReport& r = run_example("hyperplane", 7).report;
    report(5, r.ped_numeric == 1 && r.all_checks_pass(),
           "hyperplane x0 + 2*x1 + 3*x2: unique critical point",
           "ped " + std::to_string(r.ped_numeric));
}

// smooth conic: the expected value 4 was first established by the cone solver
// itself, and it matches -(2 - 2d - d) at d = 2 for a transversal smooth curve
void criterion_6() {
    const EDReport& r = run_example("smooth-conic", 7).report;
    bool transversal = true;
    if (r.topology)
        for (int s : r.topology->xq.cluster_sizes)
            if (s != 1) transversal = false;
    bool pass = r.ped_numeric == 4 && r.ped_topological == 4 && transversal &&
                r.all_checks_pass();
    std::snprintf(buf, sizeof(buf), "ped %d topo %d transversal %s", r.ped_numeric,
                  r.ped_topological.value_or(-999), transversal ? "yes" : "no");
    report(6, pass, "smooth conic x0^2 + 2*x1^2 + 5*x2^2: value 4, transversal to the quadric",
           buf);
}

// property battery over every example and seed used above
void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();
    bool conservation = true, twice = true, antipodal = true, off_hyperplane = true,
         seed_stable = true, bezout = true;
    std::string detail;

    for (const auto& ex : example_registry()) {
        std::vector<int> counts;
        for (std::uint64_t seed : kSeeds) {
            const EDReport& r = run_example(ex.name, seed).report;
            counts.push_back(r.ped_numeric);

            auto conserved = [&](const PathTriple& p) { return p.conserved(); };
            conservation = conservation && conserved(r.cone.path_summary);
            if (r.cover) conservation = conservation && conserved(r.cover->path_summary);
            if (r.topology)
                conservation = conservation && conserved(r.topology->xq.path_summary) &&
                               conserved(r.topology->xh.path_summary);

            if (r.cover) {
                twice = twice && r.cover->count == 2 * r.ped_numeric;
                for (const auto& w : r.cover->witnesses) {
                    bool paired = false;
                    for (const auto& v : r.cover->witnesses) {
                        double d = 0.0;
                        for (std::size_t i = 0; i < w.size(); ++i) d += std::norm(w[i] + v[i]);
                        if (std::sqrt(d) < 1e-5) paired = true;
                    }
                    antipodal = antipodal && paired;
                }
            }

            const RationalPoly l = linear_form(r.cone.generic_used.beta);
            for (const auto& w : r.cone.witnesses) {
                double nx = 0.0;
                for (const Complex& c : w) nx = std::max(nx, std::abs(c));
                if (std::abs(evaluate(l, w)) <= 1e-8 * (1.0 + nx)) off_hyperplane = false;
            }

            if (r.topology) bezout = bezout && r.topology->count_XQ <= 2 * r.degree;
        }
        if (counts != std::vector<int>(counts.size(), counts.front())) {
            seed_stable = false;
            detail += ex.name + " unstable; ";
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::snprintf(buf, sizeof(buf),
                  "conservation %d, cover=2x %d, antipodal %d, off-H %d, seed-stable %d, "
                  "bezout %d (extra %.1fs) %s",
                  conservation, twice, antipodal, off_hyperplane, seed_stable, bezout, secs,
                  detail.c_str());
    report(7,
           conservation && twice && antipodal && off_hyperplane && seed_stable && bezout &&
               secs < 120.0,
           "property battery over all examples and 3 seeds", buf);
}

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        ++g_failures;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
