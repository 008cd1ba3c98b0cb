// Acceptance suite: one line per criterion, exit status = number of failures.
// Criteria run the same code paths as the CLI experiments, at the pinned
// resolutions, plus the direct geometry properties (exact distance transform,
// fiber bijectivity, pseudometric axioms).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "setderiv/experiments.hpp"
#include "setderiv/harness.hpp"
#include "setderiv/steiner.hpp"

using namespace setderiv;

namespace {

int g_failures = 0;
std::vector<std::string> g_summary;

struct Criterion {
    const char* label;
    bool ok = true;
    std::vector<std::string> details;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(const char* l) : label(l) {}
    void check(bool cond, const std::string& what) {
        if (!cond) ok = false;
        details.push_back(std::string(cond ? "  - ok: " : "  - FAIL: ") + what);
    }
    ~Criterion() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %s (%.1f s)", ok ? "PASS" : "FAIL", label, secs);
        std::puts(line);
        for (const auto& d : details) std::puts(d.c_str());
        g_summary.push_back(line);
        if (!ok) ++g_failures;
    }
};

ExperimentConfig default_cfg(const std::string& name) {
    Config cfg = Config::parse_string("[experiment]\nname = " + name + "\n");
    return experiment_config_from(cfg);
}

bool run_registry_experiment(Criterion& c, const std::string& name) {
    ExperimentOutcome oc = run_experiment(default_cfg(name));
    for (const auto& line : oc.lines)
        if (line.rfind("FAIL", 0) == 0) c.details.push_back("  - " + line);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "experiment %s in %.1f s", name.c_str(), oc.seconds);
    c.check(oc.pass, buf);
    return oc.pass;
}

// ---------------------------------------------------------------- criterion 9

void criterion_core_geometry() {
    Criterion c("9 core geometry properties");

    // Exact distance transform vs brute force, 100 random 128^2 bitmaps.
    bool edt_ok = true;
    for (uint64_t seed = 0; seed < 100 && edt_ok; ++seed) {
        std::mt19937_64 rng(seed * 977 + 13);
        GridSet gs;
        int n = 128;
        gs.h = 1.0 / n;
        gs.nx = gs.ny = n;
        gs.bbox = {{0, 0}, {1, 1}};
        gs.margin = 2 * gs.h;
        gs.mode = GridMode::solid;
        gs.occ.assign((size_t)n * n, 0);
        int sites = 20 + (int)(rng() % 160);
        for (int s = 0; s < sites; ++s)
            gs.occ[gs.idx(2 + (int)(rng() % (uint64_t)(n - 4)),
                          2 + (int)(rng() % (uint64_t)(n - 4)))] = 1;
        DistanceField df = distance_field(gs, gs.occ);
        edt_ok = df.d2 == brute_force_d2(gs);
    }
    c.check(edt_ok, "distance transform exact on 100 random bitmaps");

    // Fiber bijectivity on three shapes, 1e4 probes each.
    struct ShapeCase {
        const char* name;
        ShapePtr shape;
        double lo, hi;
    };
    double hc = std::pow(2.0, -9);
    CombInstance ci = make_comb(dyadic_sequence(5), 4, hc);
    std::vector<ShapeCase> shapes = {
        {"disk", make_disk({0, 0}, 1.0), -1.4, 1.4},
        {"square", make_rect({0, 0}, {1, 1}), -0.4, 1.4},
        {"comb", ci.f, -1.2, 1.2},
    };
    for (const auto& sc : shapes) {
        double h = sc.shape == ci.f ? hc : 1.0 / 512;
        auto a = analyze(sc.shape, h, 0.45);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> U(sc.lo, sc.hi);
        int done = 0;
        double worst = 0;
        for (int i = 0; i < 400000 && done < 10000; ++i) {
            Vec2 z{U(rng), U(rng)};
            if (!a->gs.in_domain(z)) continue;
            auto m = magnify_point(a->df, a->bp, z, 0.125);
            if (m.status != MagnifyStatus::ok) continue;
            Vec2 back = m.x + m.u * (0.125 * m.t);
            worst = std::max(worst, dist(back, z));
            ++done;
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: %d probes, worst round trip %.2e <= 2h=%.2e",
                      sc.name, done, worst, 2 * h);
        c.check(done == 10000 && worst <= 2 * h, buf);
    }

    // Pseudometric axioms, exact on the interval encoding.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-2, 2);
    auto rand_list = [&] {
        IntervalList v;
        int n = (int)(rng() % 5);
        for (int i = 0; i < n; ++i) {
            double lo = U(rng), len = std::abs(U(rng));
            v.push_back({lo, lo + len});
        }
        return normalize_intervals(std::move(v));
    };
    bool pm_ok = true;
    for (int it = 0; it < 3000; ++it) {
        auto x = rand_list(), y = rand_list(), z = rand_list();
        double dxy = intervals_symdiff_length(x, y);
        pm_ok = pm_ok && intervals_symdiff_length(x, x) == 0;
        pm_ok = pm_ok && std::abs(dxy - intervals_symdiff_length(y, x)) < 1e-12;
        pm_ok = pm_ok &&
                dxy <= intervals_symdiff_length(x, z) + intervals_symdiff_length(z, y) + 1e-9;
    }
    c.check(pm_ok, "symmetric difference pseudometric axioms (3000 random triples)");
}

}  // namespace

int main() {
    std::puts("acceptance suite");
    {
        Criterion c("1 local Steiner validation");
        run_registry_experiment(c, "steiner-square");
        run_registry_experiment(c, "steiner-twosided");
    }
    {
        Criterion c("2 comb counterexample");
        run_registry_experiment(c, "comb-counterexample");
    }
    {
        Criterion c("3 reach-restricted rescue");
        run_registry_experiment(c, "comb-rdiff");
    }
    {
        Criterion c("4 local parallel sets");
        run_registry_experiment(c, "local-parallel");
    }
    {
        Criterion c("5 Minkowski families");
        run_registry_experiment(c, "minkowski-convex");
    }
    {
        Criterion c("6 measure derivative");
        run_registry_experiment(c, "disk-gaussian-derivative");
    }
    {
        Criterion c("7 derivative algebra");
        run_registry_experiment(c, "algebra-suite");
        run_registry_experiment(c, "subgraph");
    }
    {
        Criterion c("8 bifurcation");
        run_registry_experiment(c, "split-bifurcation");
    }
    criterion_core_geometry();

    std::puts("---");
    for (const auto& s : g_summary) std::puts(s.c_str());
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
