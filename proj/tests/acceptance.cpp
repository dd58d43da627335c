// Acceptance suite: one hard pass/fail line per criterion, each with a
// runtime ceiling. Exits nonzero if any criterion fails. Expected values come
// from the recorded walks and from the independent oracles in oracles.hpp.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pythwalk/distance.hpp"
#include "pythwalk/families.hpp"
#include "pythwalk/geometry.hpp"
#include "pythwalk/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#else
static int omp_get_max_threads() { return 1; }
#endif

using namespace pythwalk;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Outcome {
    bool ok = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& what) {
    o.ok = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
}

template <typename Fn>
void criterion(int number, const char* name, double limit_seconds, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        fn(o);
    } catch (const std::exception& e) {
        fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_seconds)
        fail(o, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_seconds) +
                    " s");
    if (o.ok) {
        std::printf("[PASS] criterion %d: %s (%.2f s <= %.0f s)\n", number, name, secs,
                    limit_seconds);
    } else {
        std::printf("[FAIL] criterion %d: %s (%.2f s) — %s\n", number, name, secs,
                    o.detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

WalkPath build_path(std::initializer_list<std::pair<i64, i64>> steps) {
    WalkPath p;
    for (const auto& [dx, dy] : steps) {
        const StepResult s = step_from(dx, dy);
        if (!s.ok()) throw std::runtime_error("acceptance: invalid step in fixture");
        p.steps.push_back(s.step);
    }
    return p;
}

std::string temp_file(const char* tag) {
    return (fs::temp_directory_path() / (std::string("pythwalk_acceptance_") + tag + ".jsonl"))
        .string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<LatticePoint> kExceptional = {{0, 1}, {0, 2}, {1, 2}};

SweepConfig sweep40_config(const std::string& path) {
    SweepConfig cfg;
    cfg.g_max = cfg.h_max = 40;
    cfg.leg_bound = 65536;
    cfg.escalation = default_escalation(cfg.leg_bound);
    cfg.chunk = 4;
    cfg.output_path = path;
    return cfg;
}

// 1. The recorded walks all verify, with exact step lengths for the long haul.
void recorded_walks(Outcome& o) {
    const auto check = [&](std::initializer_list<std::pair<i64, i64>> steps, LatticePoint end,
                           const char* tag) {
        if (!verify_path(build_path(steps), end).ok) fail(o, std::string("walk to ") + tag);
    };
    check({{4, -3}, {-3, 4}}, {1, 1}, "(1,1)");
    check({{9, 12}, {-12, -9}, {4, -3}}, {1, 0}, "(1,0)");
    check({{9, 12}, {-5, -12}}, {4, 0}, "(4,0)");
    check({{77, -36}, {-75, 40}}, {2, 4}, "(2,4)");
    const WalkPath big = build_path({{-50643549, 196449668}, {50645660, -196449099}});
    if (!verify_path(big, {2111, 569}).ok) fail(o, "walk to (2111,569)");
    if (big.steps[0].len != 202872475) fail(o, "first long step length");
    if (big.steps[1].len != 202872451) fail(o, "second long step length");
}

// 2. D3_CERTIFIED exactly on the three exceptional orbits; no two-step walk
//    for them at bounds 10^3, 10^4, 10^5.
void exceptional_orbits(Outcome& o) {
    for (const LatticePoint t : kExceptional) {
        for (const LatticePoint member : symmetry_orbit(t)) {
            const DistanceVerdict v = classify(member, 256);
            if (v.cls != VerdictClass::d3_certified)
                fail(o, "orbit member not certified: (" + std::to_string(member.x) + "," +
                            std::to_string(member.y) + ")");
            else if (!v.certificate || !check_certificate(*v.certificate))
                fail(o, "certificate fails its own check");
        }
    }
    const std::vector<i64> schedule{256, 1024};
    for (i64 g = 0; g <= 6; ++g) {
        for (i64 h = g; h <= 6; ++h) {
            const LatticePoint t{g, h};
            bool exceptional = false;
            for (const LatticePoint& e : kExceptional) exceptional |= (t == e);
            if (exceptional) continue;
            const DistanceVerdict v = classify_escalating(t, schedule);
            if (v.cls == VerdictClass::d3_certified)
                fail(o, "non-exceptional node certified: (" + std::to_string(g) + "," +
                            std::to_string(h) + ")");
        }
    }
    for (const i64 bound : {i64(1000), i64(10000), i64(100000)}) {
        for (const LatticePoint t : kExceptional) {
            if (find_two_step(t, bound).has_value())
                fail(o, "two-step walk found for exceptional node at bound " +
                            std::to_string(bound));
        }
    }
}

// 3. The minimal two-step walk to (2,4) has both step lengths exactly 85.
void minimal_walk_24(Outcome& o) {
    const auto w = shortest_two_step({2, 4}, 100000);
    if (!w) {
        fail(o, "no walk found");
        return;
    }
    if (w->steps.size() != 2 || w->steps[0].len != 85 || w->steps[1].len != 85)
        fail(o, "lengths " + std::to_string(w->steps[0].len) + "," +
                    std::to_string(w->steps[1].len) + " != 85,85");
}

// 4. The gap-one quadratic solves to exactly {(2,0),(0,1)}; a direct scan of
//    3x^2+4xy-8x-4y+4 over |x|,|y| <= 10^4 finds no other zeros.
void quadratic_zero_set(Outcome& o) {
    const auto sols = gap_one_quadratic_solutions();
    if (sols != std::vector<LatticePoint>{{2, 0}, {0, 1}}) fail(o, "closed-form solution set");
    long long extra = 0, hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : extra, hits)
    for (long long x = -10000; x <= 10000; ++x) {
        for (long long y = -10000; y <= 10000; ++y) {
            if (oracle::gap_one_poly(x, y) != 0) continue;
            ++hits;
            if (!((x == 2 && y == 0) || (x == 0 && y == 1))) ++extra;
        }
    }
    if (hits != 2) fail(o, "scan found " + std::to_string(hits) + " zeros");
    if (extra != 0) fail(o, std::to_string(extra) + " unexpected zeros");
}

// 5. Three steps always suffice: 10^5 random targets in [-10^6,10^6]^2.
void universal_three_steps(Outcome& o) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<i64> coord(-1000000, 1000000);
    for (int i = 0; i < 100000; ++i) {
        const LatticePoint t{coord(rng), coord(rng)};
        const WalkPath p = three_step_construct(t);
        if (p.steps.size() > 3 || !verify_path(p, t).ok) {
            fail(o, "target (" + std::to_string(t.x) + "," + std::to_string(t.y) + ")");
            return;
        }
    }
}

// 6. Closed-form families at scale, plus the leading gh series.
void family_soundness(Outcome& o) {
    for (i64 n = 3; n <= 10000; ++n) {
        const FamilySolution s = n0_witness(n);
        if (s.path.steps.size() != 2 || !verify_path(s.path, {n, 0}).ok) {
            fail(o, "(n,0) family fails at n=" + std::to_string(n));
            break;
        }
    }
    for (i64 n = 2; n <= 10000; ++n) {
        const FamilySolution s = n2n_witness(n);
        if (s.path.steps.size() != 2 || !verify_path(s.path, {n, 2 * n}).ok) {
            fail(o, "(n,2n) family fails at n=" + std::to_string(n));
            break;
        }
    }
    const auto targets = [](const PythTriple& t, int count) {
        std::vector<LatticePoint> out;
        for (const FamilySolution& s : gh_enumerate(t, count)) out.push_back(s.target);
        return out;
    };
    if (targets({4, 3, 5}, 3) != std::vector<LatticePoint>{{1, 1}, {3, 2}, {5, 3}})
        fail(o, "g=2h-1 series (first members)");
    if (targets({3, 4, 5}, 3) != std::vector<LatticePoint>{{1, 3}, {2, 5}, {3, 7}})
        fail(o, "2g=h-1 series (first members)");
    const auto series17 = gh_enumerate({8, 15, 17}, 3);
    if (series17.size() != 3) fail(o, "9g=2h-1 series size");
    for (const FamilySolution& s : series17) {
        if (9 * s.target.x != 2 * s.target.y - 1) fail(o, "9g=2h-1 relation");
        if (!verify_path(s.path, s.target).ok) fail(o, "9g=2h-1 walk verification");
    }
    if (!series17.empty() && !(series17[0].target == LatticePoint{1, 5}))
        fail(o, "9g=2h-1 first member");
}

// 7. Desk-scale sweep of [0,40)^2 with escalating bounds: everything outside
//    the exceptional orbits reaches distance <= 2 with self-verifying
//    witnesses; nothing is left unresolved.
void desk_scale_sweep(Outcome& o) {
    const std::string path = temp_file("c7_parallel");
    const SweepSummary s = run_sweep(sweep40_config(path), ExecMode::parallel, 0);
    if (s.class_counts[std::size_t(VerdictClass::unresolved)] != 0)
        fail(o, "unresolved nodes remain");
    if (s.not_within_two !=
        std::vector<LatticePoint>{{0, 0}, {0, 1}, {0, 2}, {1, 2}})
        fail(o, "nodes beyond two steps differ from the exceptional set");
    const ConjectureReport rep = report(path);
    if (rep.total != s.total) fail(o, "record count mismatch");
    if (!rep.corrupt.empty())
        fail(o, "witness re-verification failed on " + std::to_string(rep.corrupt.size()) +
                    " records");
    if (rep.unresolved != std::vector<LatticePoint>{}) fail(o, "report lists unresolved nodes");
    if (rep.certified != kExceptional) fail(o, "certified set differs");
}

// 8. Determinism: serial, one worker and N workers produce identical bytes.
void sweep_determinism(Outcome& o) {
    const std::string pa = temp_file("c7_parallel"); // written by criterion 7
    const std::string pb = temp_file("c8_one_worker");
    const std::string pc = temp_file("c8_serial");
    SweepConfig cfg = sweep40_config(pb);
    run_sweep(cfg, ExecMode::parallel, 1);
    cfg.output_path = pc;
    run_sweep(cfg, ExecMode::serial);
    const std::string a = slurp(pa), b = slurp(pb), c = slurp(pc);
    if (a.empty()) fail(o, "criterion 7 output missing");
    if (a != b)
        fail(o, "one-worker bytes differ from " + std::to_string(omp_get_max_threads()) +
                    "-worker bytes");
    if (a != c) fail(o, "serial reference bytes differ from parallel bytes");
    fs::remove(pa);
    fs::remove(pb);
    fs::remove(pc);
}

// 9. The table-driven two-step search agrees exactly with an exhaustive
//    midpoint scan at bound 200 on all canonical targets up to (10,10).
void oracle_cross_check(Outcome& o) {
    for (i64 g = 0; g <= 10; ++g) {
        for (i64 h = g; h <= 10; ++h) {
            if (g == 0 && h == 0) continue;
            const auto got = find_two_step({g, h}, 200);
            const auto want = oracle::two_step_scan(g, h, 200);
            const std::string at = "(" + std::to_string(g) + "," + std::to_string(h) + ")";
            if (got.has_value() != want.has_value()) {
                fail(o, "existence disagrees at " + at);
                continue;
            }
            if (!got) continue;
            const bool same = got->steps[0].dx == want->s1x && got->steps[0].dy == want->s1y &&
                              got->steps[1].dx == want->s2x && got->steps[1].dy == want->s2y &&
                              got->steps[0].len == want->len1 && got->steps[1].len == want->len2;
            if (!same) fail(o, "minimal witness disagrees at " + at);
        }
    }
}

} // namespace

int main() {
    std::printf("pythwalk acceptance suite (%d hardware threads)\n", omp_get_max_threads());
    criterion(1, "recorded-walk regressions", 1.0, recorded_walks);
    criterion(2, "exceptional-orbit certification", 60.0, exceptional_orbits);
    criterion(3, "minimal walk to (2,4) has step lengths 85,85", 10.0, minimal_walk_24);
    criterion(4, "gap-one quadratic zero set", 10.0, quadratic_zero_set);
    criterion(5, "three steps reach 10^5 random targets", 30.0, universal_three_steps);
    criterion(6, "closed-form families at scale", 60.0, family_soundness);
    criterion(7, "desk-scale conjecture sweep (40x40)", 600.0, desk_scale_sweep);
    criterion(8, "sweep determinism across workers", 600.0, sweep_determinism);
    criterion(9, "two-step search vs exhaustive midpoint scan", 60.0, oracle_cross_check);
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
