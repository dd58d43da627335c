#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pythwalk/distance.hpp"
#include "pythwalk/geometry.hpp"

namespace pythwalk {

// Grid sweep: classify every canonical node (g, h), 0 <= g <= h, whose orbit
// meets the grid [0, g_max) x [0, h_max), append one JSONL record per node and
// summarize. Output is byte-identical for a fixed config regardless of worker
// count or execution mode, and a partial file can be resumed.

struct SweepConfig {
    i64 g_max = 0, h_max = 0; // exclusive grid bounds
    i64 leg_bound = 0;
    std::vector<i64> escalation; // strictly increasing, last entry == leg_bound
    i64 chunk = 4;               // canonical rows (h values) per work unit
    std::string output_path;
    bool resume = false;
};

/// Escalation used when none is given: powers of four from 256 up to the leg
/// bound, with the bound itself as the final entry.
std::vector<i64> default_escalation(i64 leg_bound);

/// Throws std::domain_error when a config invariant fails.
void validate(const SweepConfig& config);

enum class ExecMode { serial, parallel };

struct SweepSummary {
    i64 total = 0;
    std::array<i64, 5> class_counts{}; // indexed by VerdictClass
    std::vector<LatticePoint> not_within_two; // every node outside {D1, D2}
    i64 preexisting = 0;                       // records found on resume
    double seconds = 0;
};

/// Fresh sweep (or a resumed one when config.resume is set). `workers` caps
/// the parallel team; 0 means the OpenMP default. Serial mode is the reference
/// implementation and must produce byte-identical output.
SweepSummary run_sweep(const SweepConfig& config, ExecMode mode = ExecMode::parallel,
                       int workers = 0);

/// Completes a partial output file. Refuses (std::runtime_error) when the
/// file's header fingerprint does not match the config or the records are not
/// a prefix of the canonical node order. A missing file is an empty prefix; a
/// complete file is a no-op.
SweepSummary resume_sweep(const SweepConfig& config, ExecMode mode = ExecMode::parallel,
                          int workers = 0);

struct RecordIssue {
    std::size_t line = 0; // 1-based line number in the file
    std::string what;
};

struct ConjectureReport {
    i64 total = 0;
    std::array<i64, 5> class_counts{};
    std::vector<LatticePoint> unresolved;
    std::vector<LatticePoint> certified;
    i64 max_step_length = 0;
    struct LongStep {
        LatticePoint node{};
        i64 max_step = 0;
        double ratio = 0; // max step length / geometric distance
    };
    std::vector<LongStep> long_steps; // ratio >= 10
    std::vector<RecordIssue> corrupt;
};

/// Re-verifies every stored witness and aggregates. Verification failures are
/// flagged per record, never dropped silently.
ConjectureReport report(const std::string& records_path);

std::string summary_to_json(const SweepSummary& s);
std::string report_to_json(const ConjectureReport& r);

} // namespace pythwalk
