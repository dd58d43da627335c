// pythwalk: exact queries on the integer-distance lattice walk graph.
//
// Vertices are the points of Z^2; edges join points at integer Euclidean
// distance that share neither coordinate line. Subcommands classify graph
// distance from the origin, build and verify walks, generate the closed-form
// two-step families, enumerate Pythagorean triples, and run/replay the
// conjecture sweep.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pythwalk/distance.hpp"
#include "pythwalk/families.hpp"
#include "pythwalk/geometry.hpp"
#include "pythwalk/sweep.hpp"
#include "pythwalk/triples.hpp"

namespace {

using namespace pythwalk;
using nlohmann::ordered_json;

// exit codes: 0 ok, 2 usage, 3 verification failure, 4 domain/range error, 5 I/O
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitRange = 4;
constexpr int kExitIo = 5;

std::string grouped(i64 v) {
    // human mode groups digits the way long lengths are usually printed
    std::string raw = std::to_string(v < 0 ? -v : v);
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i > 0 && (raw.size() - i) % 3 == 0) out += ',';
        out += raw[i];
    }
    return (v < 0 ? "-" : "") + out;
}

std::string step_str(const StepVector& s) {
    return "(" + std::to_string(s.dx) + "," + std::to_string(s.dy) + ")";
}

void require_verified_before_print(const WalkPath& path, LatticePoint end) {
    if (!verify_path(path, end).ok)
        throw std::logic_error("internal error: walk failed re-verification before printing");
}

ordered_json witness_json(const WalkPath& path) {
    ordered_json w = ordered_json::array();
    for (const StepVector& s : path.steps) w.push_back({s.dx, s.dy});
    return w;
}

ordered_json lengths_json(const WalkPath& path) {
    ordered_json l = ordered_json::array();
    for (const StepVector& s : path.steps) l.push_back(s.len);
    return l;
}

ordered_json certificate_json(const Certificate& cert) {
    ordered_json c;
    c["kind"] = to_string(cert.kind);
    c["canonical_target"] = {cert.canonical_target.x, cert.canonical_target.y};
    ordered_json cases = ordered_json::array();
    for (const ExclusionCase& ec : cert.cases) {
        ordered_json e;
        e["length_gap"] = ec.length_gap;
        e["rule"] = to_string(ec.rule);
        if (!ec.forced_midpoints.empty()) {
            ordered_json fm = ordered_json::array();
            for (const LatticePoint& p : ec.forced_midpoints) fm.push_back({p.x, p.y});
            e["forced_midpoints"] = std::move(fm);
        }
        cases.push_back(std::move(e));
    }
    c["cases"] = std::move(cases);
    return c;
}

void print_verdict(LatticePoint t, const DistanceVerdict& v, bool json_mode) {
    if (v.witness) require_verified_before_print(*v.witness, t);
    if (json_mode) {
        ordered_json j;
        j["g"] = t.x;
        j["h"] = t.y;
        j["class"] = to_string(v.cls);
        j["witness"] = v.witness ? witness_json(*v.witness) : ordered_json(nullptr);
        j["step_lengths"] = v.witness ? lengths_json(*v.witness) : ordered_json(nullptr);
        j["bound_used"] = v.bound_used;
        j["family_fast_path"] = v.family_fast_path;
        j["certificate"] = v.certificate ? certificate_json(*v.certificate) : ordered_json(nullptr);
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "node: (" << t.x << ", " << t.y << ")\n";
    std::cout << "class: " << to_string(v.cls) << "\n";
    if (v.witness && !v.witness->steps.empty()) {
        std::cout << "witness:";
        for (const StepVector& s : v.witness->steps) std::cout << " " << step_str(s);
        std::cout << "   lengths:";
        for (const StepVector& s : v.witness->steps) std::cout << " " << grouped(s.len);
        std::cout << "\n";
    }
    if (v.certificate) {
        std::cout << "certificate: " << to_string(v.certificate->kind) << "\n";
        for (const ExclusionCase& ec : v.certificate->cases) {
            std::cout << "  gap " << ec.length_gap << ": " << to_string(ec.rule);
            if (!ec.forced_midpoints.empty()) {
                std::cout << " via";
                for (const LatticePoint& p : ec.forced_midpoints)
                    std::cout << " (" << p.x << "," << p.y << ")";
            }
            std::cout << "\n";
        }
    }
    if (v.cls == VerdictClass::unresolved)
        std::cout << "note: UNRESOLVED is relative to the search bound " << v.bound_used
                  << "; a two-step walk may exist beyond it\n";
    std::cout << "bound_used: " << v.bound_used << "\n";
}

void print_family(const FamilySolution& sol, bool json_mode) {
    require_verified_before_print(sol.path, sol.target);
    if (json_mode) {
        ordered_json j;
        switch (sol.source.kind) {
            case FamilyKind::gh: j["kind"] = "gh"; break;
            case FamilyKind::n0: j["kind"] = "n0"; break;
            case FamilyKind::n2n: j["kind"] = "n2n"; break;
        }
        j["target"] = {sol.target.x, sol.target.y};
        j["steps"] = witness_json(sol.path);
        j["step_lengths"] = lengths_json(sol.path);
        if (sol.source.kind == FamilyKind::gh) {
            j["triple"] = {sol.source.triple.a, sol.source.triple.b, sol.source.triple.c};
            j["signs"] = {sol.source.s_a, sol.source.s_b};
        } else {
            j["base_n"] = sol.source.base_n;
            j["scale"] = sol.source.scale;
        }
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "(" << sol.target.x << ", " << sol.target.y << "):";
    for (const StepVector& s : sol.path.steps) std::cout << " " << step_str(s);
    std::cout << "   lengths:";
    for (const StepVector& s : sol.path.steps) std::cout << " " << grouped(s.len);
    if (sol.source.scale > 1)
        std::cout << "   [base n=" << sol.source.base_n << " scaled by " << sol.source.scale << "]";
    std::cout << "\n";
}

int cmd_dist(i64 g, i64 h, i64 bound, bool json_mode) {
    print_verdict({g, h}, classify({g, h}, bound, FamilyUse::after_search), json_mode);
    return kExitOk;
}

int cmd_path(i64 g, i64 h, bool shortest, i64 limit, i64 bound, bool json_mode) {
    const LatticePoint t{g, h};
    WalkPath path;
    if (shortest && !(t == LatticePoint{0, 0})) {
        if (auto w = shortest_two_step(t, limit)) {
            path = *w;
        } else {
            std::cerr << "no two-step walk with first step length <= " << limit
                      << "; falling back to the three-step construction\n";
            const DistanceVerdict v = classify(t, 256, FamilyUse::after_search);
            path = v.witness.value_or(three_step_construct(t));
        }
    } else {
        const DistanceVerdict v = classify(t, bound, FamilyUse::after_search);
        path = v.witness.value_or(WalkPath{});
    }
    require_verified_before_print(path, t);
    const PathDoc doc = to_doc(path);
    if (json_mode) {
        std::cout << path_to_json(doc) << "\n";
        return kExitOk;
    }
    std::cout << "(0,0)";
    LatticePoint at{0, 0};
    for (const StepVector& s : path.steps) {
        at = at + LatticePoint{s.dx, s.dy};
        std::cout << " -" << step_str(s) << "-> (" << at.x << "," << at.y << ")";
    }
    std::cout << "\n";
    std::cout << "steps: " << path.steps.size() << "   lengths:";
    for (const StepVector& s : path.steps) std::cout << " " << grouped(s.len);
    std::cout << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& file, bool has_end, i64 eg, i64 eh, bool json_mode) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << file << "\n";
        return kExitIo;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const PathDoc doc = path_from_json(ss.str());
    std::optional<LatticePoint> expected;
    if (has_end) expected = LatticePoint{eg, eh};
    WalkPath path;
    const PathCheck chk = verify_doc(doc, expected, &path);
    if (json_mode) {
        ordered_json j;
        j["ok"] = chk.ok;
        if (!chk.ok) {
            j["bad_step"] = chk.bad_step;
            j["endpoint_mismatch"] = chk.endpoint_mismatch;
        } else {
            j["end"] = {doc.end.x, doc.end.y};
            j["step_lengths"] = lengths_json(path);
        }
        std::cout << j.dump() << "\n";
        return chk.ok ? kExitOk : kExitVerify;
    }
    if (!chk.ok) {
        if (chk.bad_step >= 0)
            std::cout << "INVALID: step " << chk.bad_step << " "
                      << (chk.step_fail == StepFail::zero_component ? "has a zero component"
                                                                    : "has a non-integral length")
                      << "\n";
        else
            std::cout << "INVALID: endpoint mismatch\n";
        return kExitVerify;
    }
    std::cout << "OK: " << path.steps.size() << " steps to (" << doc.end.x << "," << doc.end.y
              << ")   lengths:";
    for (const StepVector& s : path.steps) std::cout << " " << grouped(s.len);
    std::cout << "\n";
    return kExitOk;
}

int cmd_families(const std::string& kind, const std::vector<i64>& triple, i64 n, int count,
                 bool json_mode) {
    if (kind == "gh") {
        if (triple.size() != 3) throw std::domain_error("families gh needs --triple A B C");
        const PythTriple t{triple[0], triple[1], triple[2]};
        if (i128(t.a) * t.a + i128(t.b) * t.b != i128(t.c) * t.c)
            throw std::domain_error("--triple is not a Pythagorean triple");
        for (const FamilySolution& sol : gh_enumerate(t, count)) print_family(sol, json_mode);
        return kExitOk;
    }
    if (kind == "n0") {
        print_family(n0_witness(n), json_mode);
        return kExitOk;
    }
    if (kind == "n2n") {
        print_family(n2n_witness(n), json_mode);
        return kExitOk;
    }
    throw std::domain_error("unknown family kind " + kind);
}

int cmd_triples(i64 leg_max, const std::vector<i64>& box, bool json_mode) {
    const auto emit = [&](const PythTriple& t) {
        if (json_mode) {
            ordered_json j;
            j["a"] = t.a;
            j["b"] = t.b;
            j["c"] = t.c;
            if (t.has_params()) {
                j["m"] = t.m;
                j["n"] = t.n;
                j["d"] = t.d;
            }
            std::cout << j.dump() << "\n";
        } else {
            std::cout << t.a << " " << t.b << " " << t.c << "\n";
        }
    };
    if (leg_max > 0) {
        for (const PythTriple& t : triples_up_to_leg(leg_max)) emit(t);
        return kExitOk;
    }
    if (box.size() == 3) {
        for_each_triple_from_params(box[0], box[1], box[2], emit);
        return kExitOk;
    }
    throw std::domain_error("triples needs either --leg-max or all of --mmax --nmax --dmax");
}

int cmd_sweep(const SweepConfig& cfg, bool serial, int threads, bool json_mode) {
    const SweepSummary s = run_sweep(cfg, serial ? ExecMode::serial : ExecMode::parallel, threads);
    if (json_mode) {
        std::cout << summary_to_json(s) << "\n";
        return kExitOk;
    }
    std::cout << "swept " << s.total << " canonical nodes into " << cfg.output_path << "\n";
    for (int c = 0; c < 5; ++c)
        std::cout << "  " << to_string(static_cast<VerdictClass>(c)) << ": "
                  << s.class_counts[static_cast<std::size_t>(c)] << "\n";
    std::cout << "  not within two steps:";
    for (const LatticePoint& p : s.not_within_two) std::cout << " (" << p.x << "," << p.y << ")";
    std::cout << "\n";
    if (s.preexisting > 0) std::cout << "  resumed past " << s.preexisting << " records\n";
    std::cout << "  elapsed: " << s.seconds << " s\n";
    return kExitOk;
}

int cmd_report(const std::string& file, bool json_mode) {
    const ConjectureReport rep = report(file);
    if (json_mode) {
        std::cout << report_to_json(rep) << "\n";
    } else {
        std::cout << "records: " << rep.total << "\n";
        for (int c = 0; c < 5; ++c)
            std::cout << "  " << to_string(static_cast<VerdictClass>(c)) << ": "
                      << rep.class_counts[static_cast<std::size_t>(c)] << "\n";
        std::cout << "unresolved:";
        for (const LatticePoint& p : rep.unresolved) std::cout << " (" << p.x << "," << p.y << ")";
        std::cout << "\ncertified:";
        for (const LatticePoint& p : rep.certified) std::cout << " (" << p.x << "," << p.y << ")";
        std::cout << "\nmax witness step length: " << grouped(rep.max_step_length) << "\n";
        std::cout << "walks with a step >= 10x the geometric distance: " << rep.long_steps.size()
                  << "\n";
        for (const auto& ls : rep.long_steps)
            std::cout << "  (" << ls.node.x << "," << ls.node.y << "): max step "
                      << grouped(ls.max_step) << " (" << ls.ratio << "x)\n";
        if (!rep.corrupt.empty()) {
            std::cout << "CORRUPT RECORDS: " << rep.corrupt.size() << "\n";
            for (const RecordIssue& ri : rep.corrupt)
                std::cout << "  line " << ri.line << ": " << ri.what << "\n";
        }
    }
    return rep.corrupt.empty() ? kExitOk : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact walk-distance queries on the integer-distance lattice graph"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --json appear after the subcommand (inheritable)
    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit machine-readable JSON / JSONL")->configurable(false);

    // dist
    i64 dg = 0, dh = 0, dbound = 256;
    CLI::App* dist = app.add_subcommand("dist", "classify the graph distance from the origin");
    dist->add_option("G", dg, "target x")->required();
    dist->add_option("H", dh, "target y")->required();
    dist->add_option("--bound", dbound,
                     "midpoint coordinate bound for the two-step search; UNRESOLVED verdicts "
                     "are relative to it")
        ->check(CLI::PositiveNumber);

    // path
    i64 pg = 0, ph = 0, plimit = 1000000, pbound = 256;
    bool pshortest = false;
    CLI::App* path = app.add_subcommand("path", "construct a walk from the origin");
    path->add_option("G", pg)->required();
    path->add_option("H", ph)->required();
    path->add_flag("--shortest", pshortest, "globally minimal two-step walk");
    path->add_option("--limit", plimit, "first-step length limit for --shortest")
        ->check(CLI::PositiveNumber);
    path->add_option("--bound", pbound, "midpoint bound for the default walk search")
        ->check(CLI::PositiveNumber);

    // families
    std::string fkind;
    std::vector<i64> ftriple;
    i64 fn = 0;
    int fcount = 1;
    CLI::App* families = app.add_subcommand("families", "closed-form two-step walk generators");
    families->add_option("kind", fkind, "gh | n0 | n2n")->required();
    families->add_option("--triple", ftriple, "triple A B C for gh")->expected(3);
    families->add_option("--n", fn, "target parameter for n0 (n,0) / n2n (n,2n)");
    families->add_option("--count", fcount, "number of gh solutions")->check(CLI::PositiveNumber);

    // sweep
    SweepConfig cfg;
    bool serial = false;
    int threads = 0;
    std::vector<i64> escalation;
    CLI::App* sweep = app.add_subcommand("sweep", "classify every node of a grid into a JSONL file");
    sweep->add_option("--gmax", cfg.g_max, "exclusive grid bound for g")->required();
    sweep->add_option("--hmax", cfg.h_max, "exclusive grid bound for h")->required();
    sweep->add_option("--bound", cfg.leg_bound, "final midpoint bound")->required();
    sweep->add_option("--chunk", cfg.chunk, "canonical rows per work unit");
    sweep->add_option("--escalation", escalation,
                      "increasing bound schedule (default: 256,1024,... up to --bound)");
    sweep->add_option("--out", cfg.output_path, "output JSONL file")->required();
    sweep->add_flag("--resume", cfg.resume, "complete an interrupted run");
    sweep->add_flag("--serial", serial, "use the serial reference implementation");
    sweep->add_option("--threads", threads, "worker threads (0 = all)");

    // report
    std::string report_file;
    CLI::App* rep = app.add_subcommand("report", "verify and aggregate a sweep file");
    rep->add_option("file", report_file)->required();

    // verify
    std::string verify_file;
    std::vector<i64> vend;
    CLI::App* verify = app.add_subcommand("verify", "check a walk document");
    verify->add_option("file", verify_file)->required();
    verify->add_option("--end", vend, "expected endpoint G H")->expected(2);

    // triples
    i64 leg_max = 0;
    std::vector<i64> box;
    i64 box_m = 0, box_n = 0, box_d = 0;
    CLI::App* triples = app.add_subcommand("triples", "enumerate Pythagorean triples");
    triples->add_option("--leg-max", leg_max, "all triples with both legs <= L");
    triples->add_option("--mmax", box_m, "parameter box: m < mmax");
    triples->add_option("--nmax", box_n, "parameter box: n < nmax");
    triples->add_option("--dmax", box_d, "parameter box: d < dmax");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*dist) return cmd_dist(dg, dh, dbound, json_mode);
        if (*path) return cmd_path(pg, ph, pshortest, plimit, pbound, json_mode);
        if (*families) return cmd_families(fkind, ftriple, fn, fcount, json_mode);
        if (*sweep) {
            cfg.escalation = escalation.empty() ? default_escalation(cfg.leg_bound) : escalation;
            return cmd_sweep(cfg, serial, threads, json_mode);
        }
        if (*rep) return cmd_report(report_file, json_mode);
        if (*verify) return cmd_verify(verify_file, vend.size() == 2, vend.empty() ? 0 : vend[0],
                                       vend.empty() ? 0 : vend[1], json_mode);
        if (*triples) {
            if (box_m > 0 || box_n > 0 || box_d > 0) box = {box_m, box_n, box_d};
            return cmd_triples(leg_max, box, json_mode);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const std::range_error& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return kExitRange;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitUsage;
}
