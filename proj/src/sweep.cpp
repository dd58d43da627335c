#include "pythwalk/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#else
static int omp_get_max_threads() { return 1; }
#endif

namespace pythwalk {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kLongStepRatio = 10.0;

// --- canonical node order -------------------------------------------------

// Row h contains g in [0, row_upper]; a canonical (g, h) is swept iff its
// orbit meets the grid, i.e. (g,h) or (h,g) lies in [0,g_max) x [0,h_max).
i64 row_upper(const SweepConfig& cfg, i64 h) {
    i64 ub = -1;
    if (h < cfg.h_max) ub = std::max(ub, std::min(h, cfg.g_max - 1));
    if (h < cfg.g_max) ub = std::max(ub, std::min(h, cfg.h_max - 1));
    return ub;
}

i64 total_rows(const SweepConfig& cfg) { return std::max(cfg.g_max, cfg.h_max); }

i64 total_canonical_nodes(const SweepConfig& cfg) {
    i64 n = 0;
    for (i64 h = 0; h < total_rows(cfg); ++h) n += row_upper(cfg, h) + 1;
    return n;
}

// --- header and records ----------------------------------------------------

u64 fnv1a(std::string_view s) {
    u64 hash = 1469598103934665603ull;
    for (const char c : s) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string config_fingerprint(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "g_max=" << cfg.g_max << ";h_max=" << cfg.h_max << ";leg_bound=" << cfg.leg_bound
       << ";chunk=" << cfg.chunk << ";escalation=";
    for (const i64 b : cfg.escalation) os << b << ",";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

std::string header_line(const SweepConfig& cfg) {
    ordered_json j;
    ordered_json c;
    c["g_max"] = cfg.g_max;
    c["h_max"] = cfg.h_max;
    c["leg_bound"] = cfg.leg_bound;
    c["escalation"] = cfg.escalation;
    c["chunk"] = cfg.chunk;
    j["config"] = std::move(c);
    j["fingerprint"] = config_fingerprint(cfg);
    j["version"] = 1;
    return j.dump();
}

bool witness_stored(VerdictClass c) { return c == VerdictClass::d1 || c == VerdictClass::d2; }

std::string record_line(LatticePoint node, const DistanceVerdict& v) {
    if (witness_stored(v.cls)) {
        if (!v.witness || !verify_path(*v.witness, node).ok)
            throw std::logic_error("sweep: classification produced an unverifiable witness");
    }
    ordered_json j;
    j["g"] = node.x;
    j["h"] = node.y;
    j["class"] = to_string(v.cls);
    if (witness_stored(v.cls)) {
        ordered_json w = ordered_json::array(), l = ordered_json::array();
        for (const StepVector& s : v.witness->steps) {
            w.push_back({s.dx, s.dy});
            l.push_back(s.len);
        }
        j["witness"] = std::move(w);
        j["step_lengths"] = std::move(l);
    } else {
        j["witness"] = nullptr;
        j["step_lengths"] = nullptr;
    }
    j["bound_used"] = v.bound_used;
    return j.dump();
}

std::string error_line(LatticePoint node, const char* what) {
    ordered_json j;
    j["g"] = node.x;
    j["h"] = node.y;
    j["class"] = "RANGE_ERROR";
    j["witness"] = nullptr;
    j["step_lengths"] = nullptr;
    j["bound_used"] = 0;
    j["error"] = what;
    return j.dump();
}

struct LocalStats {
    std::array<i64, 5> counts{};
    std::vector<LatticePoint> not_within_two;

    void account(LatticePoint node, VerdictClass c) {
        counts[static_cast<std::size_t>(c)]++;
        if (!witness_stored(c)) not_within_two.push_back(node);
    }
    void merge(const LocalStats& o) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
        not_within_two.insert(not_within_two.end(), o.not_within_two.begin(),
                              o.not_within_two.end());
    }
};

std::string classify_node_line(const SweepConfig& cfg, LatticePoint node, LocalStats& stats) {
    try {
        const DistanceVerdict v = classify_escalating(
            node, std::span<const i64>(cfg.escalation), FamilyUse::before_search);
        stats.account(node, v.cls);
        return record_line(node, v);
    } catch (const std::range_error& e) {
        // per-node range failures are recorded, never fatal to the sweep
        stats.not_within_two.push_back(node);
        return error_line(node, e.what());
    }
}

// --- emit engine ------------------------------------------------------------

// Remaining nodes grouped into row chunks; chunks are classified out of order
// but written strictly in order, so the bytes never depend on scheduling.
struct WorkPlan {
    std::vector<LatticePoint> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> chunks; // [begin, end) into nodes
};

WorkPlan plan_remaining(const SweepConfig& cfg, i64 skip) {
    WorkPlan plan;
    i64 index = 0;
    i64 current_chunk = -1;
    for (i64 h = 0; h < total_rows(cfg); ++h) {
        const i64 ub = row_upper(cfg, h);
        for (i64 g = 0; g <= ub; ++g, ++index) {
            if (index < skip) continue;
            const i64 chunk_id = h / cfg.chunk;
            if (chunk_id != current_chunk) {
                plan.chunks.emplace_back(plan.nodes.size(), plan.nodes.size());
                current_chunk = chunk_id;
            }
            plan.nodes.push_back({g, h});
            plan.chunks.back().second = plan.nodes.size();
        }
    }
    return plan;
}

void emit_serial(const SweepConfig& cfg, const WorkPlan& plan, std::ofstream& out,
                 LocalStats& stats) {
    for (const LatticePoint node : plan.nodes) {
        out << classify_node_line(cfg, node, stats) << '\n';
    }
}

void emit_parallel(const SweepConfig& cfg, const WorkPlan& plan, std::ofstream& out,
                   LocalStats& stats, int workers) {
#ifndef _OPENMP
    (void)workers;
    emit_serial(cfg, plan, out, stats);
#else
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    const std::size_t window = static_cast<std::size_t>(threads) * 4;
    const std::size_t n_chunks = plan.chunks.size();
    for (std::size_t w0 = 0; w0 < n_chunks; w0 += window) {
        const std::size_t w1 = std::min(w0 + window, n_chunks);
        std::vector<std::string> bufs(w1 - w0);
        std::vector<LocalStats> local(w1 - w0);
        const auto count = static_cast<std::ptrdiff_t>(w1 - w0);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::ptrdiff_t k = 0; k < count; ++k) {
            const auto [begin, end] = plan.chunks[w0 + static_cast<std::size_t>(k)];
            std::string buf;
            for (std::size_t i = begin; i < end; ++i) {
                buf += classify_node_line(cfg, plan.nodes[i], local[static_cast<std::size_t>(k)]);
                buf += '\n';
            }
            bufs[static_cast<std::size_t>(k)] = std::move(buf);
        }
        for (std::size_t k = 0; k < bufs.size(); ++k) {
            out << bufs[k];
            stats.merge(local[k]);
        }
    }
#endif
}

// --- resume parsing ---------------------------------------------------------

struct ExistingPrefix {
    i64 records = 0;
    std::uintmax_t valid_bytes = 0; // header + complete record lines
    LocalStats stats;
};

ExistingPrefix scan_existing(const SweepConfig& cfg, const std::string& text) {
    const std::string header = header_line(cfg);
    if (text.size() < header.size() + 1 || text.compare(0, header.size(), header) != 0 ||
        text[header.size()] != '\n')
        throw std::runtime_error("resume: existing file header does not match this config "
                                 "(fingerprint mismatch); refusing to append");

    ExistingPrefix pre;
    pre.valid_bytes = header.size() + 1;

    i64 index = 0;
    i64 h = 0, g = 0;
    const auto next_expected = [&](LatticePoint& node) {
        while (h < total_rows(cfg) && g > row_upper(cfg, h)) { ++h; g = 0; }
        if (h >= total_rows(cfg)) return false;
        node = {g, h};
        ++g;
        return true;
    };

    std::size_t pos = header.size() + 1;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) break; // trailing partial line, dropped
        const std::string_view line(text.data() + pos, eol - pos);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception&) {
            throw std::runtime_error("resume: record line " + std::to_string(pre.records + 2) +
                                     " is not valid JSON; refusing to append");
        }
        LatticePoint expected;
        if (!next_expected(expected))
            throw std::runtime_error("resume: file holds more records than the config sweeps");
        if (!j.contains("g") || !j.contains("h") || j["g"].get<i64>() != expected.x ||
            j["h"].get<i64>() != expected.y)
            throw std::runtime_error("resume: records are not a prefix of the canonical node order");
        const std::string cls = j.value("class", "");
        bool known = false;
        for (int c = 0; c < 5; ++c) {
            if (cls == to_string(static_cast<VerdictClass>(c))) {
                pre.stats.account(expected, static_cast<VerdictClass>(c));
                known = true;
                break;
            }
        }
        if (!known) pre.stats.not_within_two.push_back(expected); // RANGE_ERROR records
        ++pre.records;
        ++index;
        pos = eol + 1;
        pre.valid_bytes = pos;
    }
    (void)index;
    return pre;
}

SweepSummary finish_summary(const SweepConfig& cfg, const LocalStats& stats, i64 preexisting,
                            double seconds) {
    SweepSummary s;
    s.total = total_canonical_nodes(cfg);
    s.class_counts = stats.counts;
    s.not_within_two = stats.not_within_two;
    s.preexisting = preexisting;
    s.seconds = seconds;
    return s;
}

SweepSummary fresh_run(const SweepConfig& cfg, ExecMode mode, int workers) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("sweep: cannot open output file " + cfg.output_path);
    out << header_line(cfg) << '\n';

    const WorkPlan plan = plan_remaining(cfg, 0);
    LocalStats stats;
    if (mode == ExecMode::serial)
        emit_serial(cfg, plan, out, stats);
    else
        emit_parallel(cfg, plan, out, stats, workers);
    out.flush();
    if (!out) throw std::runtime_error("sweep: write failure on " + cfg.output_path);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish_summary(cfg, stats, 0, secs);
}

} // namespace

std::vector<i64> default_escalation(i64 leg_bound) {
    if (leg_bound < 1) throw std::domain_error("default_escalation: bound must be positive");
    std::vector<i64> out;
    for (i64 b = 256; b < leg_bound; b *= 4) out.push_back(b);
    if (out.empty() || out.back() != leg_bound) out.push_back(leg_bound);
    return out;
}

void validate(const SweepConfig& cfg) {
    if (cfg.g_max < 1 || cfg.h_max < 1) throw std::domain_error("sweep: grid bounds must be >= 1");
    if (cfg.leg_bound < 1) throw std::domain_error("sweep: leg bound must be >= 1");
    if (cfg.chunk < 1) throw std::domain_error("sweep: chunk must be >= 1");
    if (cfg.escalation.empty()) throw std::domain_error("sweep: escalation schedule is empty");
    for (std::size_t i = 1; i < cfg.escalation.size(); ++i)
        if (cfg.escalation[i] <= cfg.escalation[i - 1])
            throw std::domain_error("sweep: escalation schedule must be strictly increasing");
    if (cfg.escalation.back() != cfg.leg_bound)
        throw std::domain_error("sweep: escalation must end at leg_bound");
    if (cfg.output_path.empty()) throw std::domain_error("sweep: output path is empty");
}

SweepSummary run_sweep(const SweepConfig& cfg, ExecMode mode, int workers) {
    validate(cfg);
    if (cfg.resume) return resume_sweep(cfg, mode, workers);
    return fresh_run(cfg, mode, workers);
}

SweepSummary resume_sweep(const SweepConfig& cfg, ExecMode mode, int workers) {
    validate(cfg);
    if (!std::filesystem::exists(cfg.output_path)) return fresh_run(cfg, mode, workers);

    const auto t0 = std::chrono::steady_clock::now();
    std::string text;
    {
        std::ifstream in(cfg.output_path, std::ios::binary);
        if (!in) throw std::runtime_error("resume: cannot read " + cfg.output_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    const ExistingPrefix pre = scan_existing(cfg, text);
    if (pre.valid_bytes != text.size())
        std::filesystem::resize_file(cfg.output_path, pre.valid_bytes);

    LocalStats stats = pre.stats;
    if (pre.records < total_canonical_nodes(cfg)) {
        std::ofstream out(cfg.output_path, std::ios::binary | std::ios::app);
        if (!out) throw std::runtime_error("resume: cannot append to " + cfg.output_path);
        const WorkPlan plan = plan_remaining(cfg, pre.records);
        if (mode == ExecMode::serial)
            emit_serial(cfg, plan, out, stats);
        else
            emit_parallel(cfg, plan, out, stats, workers);
        out.flush();
        if (!out) throw std::runtime_error("resume: write failure on " + cfg.output_path);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish_summary(cfg, stats, pre.records, secs);
}

namespace {

void flag(ConjectureReport& rep, std::size_t line, std::string what) {
    rep.corrupt.push_back({line, std::move(what)});
}

void check_record(ConjectureReport& rep, std::size_t line_no, const json& j) {
    static const std::vector<LatticePoint> kExceptional = {{0, 1}, {0, 2}, {1, 2}};

    const LatticePoint node{j.at("g").get<i64>(), j.at("h").get<i64>()};
    const std::string cls = j.value("class", "");
    if (cls == "RANGE_ERROR") {
        flag(rep, line_no, "range error record");
        return;
    }
    int cls_idx = -1;
    for (int c = 0; c < 5; ++c)
        if (cls == to_string(static_cast<VerdictClass>(c))) cls_idx = c;
    if (cls_idx < 0) {
        flag(rep, line_no, "unknown class " + cls);
        return;
    }
    const auto vc = static_cast<VerdictClass>(cls_idx);
    rep.class_counts[static_cast<std::size_t>(cls_idx)]++;

    const bool has_witness = j.contains("witness") && !j["witness"].is_null();
    if (witness_stored(vc) != has_witness) {
        flag(rep, line_no, "witness presence does not match class");
        return;
    }

    switch (vc) {
        case VerdictClass::d0:
            if (!(node == LatticePoint{0, 0})) flag(rep, line_no, "D0 off the origin");
            return;
        case VerdictClass::d1:
        case VerdictClass::d2: {
            PathDoc doc;
            doc.start = {0, 0};
            for (const auto& s : j["witness"]) doc.steps.emplace_back(s[0].get<i64>(), s[1].get<i64>());
            doc.end = node;
            WalkPath path;
            const PathCheck chk = verify_doc(doc, node, &path);
            if (!chk.ok) {
                flag(rep, line_no, "witness fails verification");
                return;
            }
            const std::size_t want_steps = vc == VerdictClass::d1 ? 1 : 2;
            if (path.steps.size() != want_steps) {
                flag(rep, line_no, "witness step count does not match class");
                return;
            }
            if (vc == VerdictClass::d2 && classify_one_step(node)) {
                flag(rep, line_no, "D2 recorded for a one-step node");
                return;
            }
            std::vector<i64> lens;
            if (j.contains("step_lengths") && j["step_lengths"].is_array())
                for (const auto& l : j["step_lengths"]) lens.push_back(l.get<i64>());
            i64 rec_max = 0;
            for (std::size_t i = 0; i < path.steps.size(); ++i) {
                if (i >= lens.size() || lens[i] != path.steps[i].len) {
                    flag(rep, line_no, "stored step lengths disagree with the witness");
                    return;
                }
                rec_max = std::max(rec_max, path.steps[i].len);
            }
            rep.max_step_length = std::max(rep.max_step_length, rec_max);
            if (!(node == LatticePoint{0, 0})) {
                const double dist = std::sqrt(static_cast<double>(norm2(node.x, node.y)));
                const double ratio = static_cast<double>(rec_max) / dist;
                if (ratio >= kLongStepRatio) rep.long_steps.push_back({node, rec_max, ratio});
            }
            return;
        }
        case VerdictClass::d3_certified: {
            const LatticePoint r = canonical_rep(node);
            if (std::find(kExceptional.begin(), kExceptional.end(), r) == kExceptional.end())
                flag(rep, line_no, "D3_CERTIFIED outside the certified orbits");
            else
                rep.certified.push_back(node);
            return;
        }
        case VerdictClass::unresolved: {
            const LatticePoint r = canonical_rep(node);
            if (std::find(kExceptional.begin(), kExceptional.end(), r) != kExceptional.end())
                flag(rep, line_no, "UNRESOLVED node is actually a certified orbit");
            else if (classify_one_step(node))
                flag(rep, line_no, "UNRESOLVED node is one step away");
            else
                rep.unresolved.push_back(node);
            return;
        }
    }
}

} // namespace

ConjectureReport report(const std::string& records_path) {
    ConjectureReport rep;
    std::ifstream in(records_path, std::ios::binary);
    if (!in) throw std::runtime_error("report: cannot read " + records_path);

    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            flag(rep, line_no, std::string("bad JSON: ") + e.what());
            continue;
        }
        if (!saw_header && j.contains("config")) {
            saw_header = true;
            continue;
        }
        if (!j.contains("g") || !j.contains("h")) {
            flag(rep, line_no, "record without coordinates");
            continue;
        }
        ++rep.total;
        try {
            check_record(rep, line_no, j);
        } catch (const std::exception& e) {
            flag(rep, line_no, std::string("malformed record: ") + e.what());
        }
    }
    return rep;
}

std::string summary_to_json(const SweepSummary& s) {
    ordered_json j;
    j["total"] = s.total;
    ordered_json hist;
    for (int c = 0; c < 5; ++c)
        hist[to_string(static_cast<VerdictClass>(c))] = s.class_counts[static_cast<std::size_t>(c)];
    j["histogram"] = std::move(hist);
    ordered_json rest = ordered_json::array();
    for (const LatticePoint& p : s.not_within_two) rest.push_back({p.x, p.y});
    j["not_within_two"] = std::move(rest);
    j["preexisting_records"] = s.preexisting;
    j["seconds"] = s.seconds;
    return j.dump();
}

std::string report_to_json(const ConjectureReport& r) {
    ordered_json j;
    j["total"] = r.total;
    ordered_json hist;
    for (int c = 0; c < 5; ++c)
        hist[to_string(static_cast<VerdictClass>(c))] = r.class_counts[static_cast<std::size_t>(c)];
    j["histogram"] = std::move(hist);
    const auto points = [](const std::vector<LatticePoint>& v) {
        ordered_json a = ordered_json::array();
        for (const LatticePoint& p : v) a.push_back({p.x, p.y});
        return a;
    };
    j["unresolved"] = points(r.unresolved);
    j["certified"] = points(r.certified);
    j["max_step_length"] = r.max_step_length;
    ordered_json longs = ordered_json::array();
    for (const auto& ls : r.long_steps) {
        ordered_json e;
        e["node"] = {ls.node.x, ls.node.y};
        e["max_step"] = ls.max_step;
        e["ratio"] = ls.ratio;
        longs.push_back(std::move(e));
    }
    j["long_steps"] = std::move(longs);
    ordered_json bad = ordered_json::array();
    for (const RecordIssue& ri : r.corrupt) {
        ordered_json e;
        e["line"] = ri.line;
        e["what"] = ri.what;
        bad.push_back(std::move(e));
    }
    j["corrupt"] = std::move(bad);
    return j.dump();
}

} // namespace pythwalk
