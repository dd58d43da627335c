#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pythwalk/int_arith.hpp"

namespace pythwalk {

// Vertices are exact lattice points. Edges connect points at integer Euclidean
// distance that share neither a horizontal nor a vertical line, i.e. every
// edge displacement is the leg pair of a Pythagorean triangle.

struct LatticePoint {
    i64 x = 0, y = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend bool operator<(const LatticePoint& l, const LatticePoint& r) {
        return l.x != r.x ? l.x < r.x : l.y < r.y;
    }
};

inline LatticePoint operator+(LatticePoint p, LatticePoint q) {
    return {checked_add(p.x, q.x), checked_add(p.y, q.y)};
}
inline LatticePoint operator-(LatticePoint p, LatticePoint q) {
    return {checked_sub(p.x, q.x), checked_sub(p.y, q.y)};
}

struct StepVector {
    i64 dx = 0, dy = 0;
    i64 len = 0; // integral length; invariant dx^2 + dy^2 = len^2, dx,dy != 0
    friend bool operator==(const StepVector&, const StepVector&) = default;
};

enum class StepFail { none, zero_component, non_square_length };

struct StepResult {
    StepVector step{};
    StepFail fail = StepFail::none;
    bool ok() const noexcept { return fail == StepFail::none; }
};

/// Builds the edge displacement (dx, dy) or reports which invariant failed.
StepResult step_from(i64 dx, i64 dy);

/// True iff p.x != q.x, p.y != q.y and |pq| is an integer.
bool is_edge(LatticePoint p, LatticePoint q);

// The eight signed/swap symmetries (+-x, +-y), (+-y, +-x). They are graph
// automorphisms fixing the origin, so they map walks to walks.
struct D4Transform {
    bool swap_xy = false;
    int sx = 1, sy = 1;

    LatticePoint apply(LatticePoint p) const {
        const i64 px = swap_xy ? p.y : p.x;
        const i64 py = swap_xy ? p.x : p.y;
        return {sx * px, sy * py};
    }
    StepVector apply(const StepVector& s) const {
        const i64 dx = swap_xy ? s.dy : s.dx;
        const i64 dy = swap_xy ? s.dx : s.dy;
        return {sx * dx, sy * dy, s.len};
    }
};

const std::array<D4Transform, 8>& d4_transforms();

/// The orbit {(+-x, +-y), (+-y, +-x)} with duplicates removed, sorted.
std::vector<LatticePoint> symmetry_orbit(LatticePoint p);

/// The unique orbit member (g, h) with 0 <= g <= h.
LatticePoint canonical_rep(LatticePoint p);

/// First transform (in the fixed d4_transforms order) mapping `from` to `to`;
/// empty when the points are in different orbits.
std::optional<D4Transform> orbit_transform(LatticePoint from, LatticePoint to);

// A walk stores displacement vectors, not vertices, so translating the start
// never touches the steps; vertices are derived on demand.
struct WalkPath {
    LatticePoint start{};
    std::vector<StepVector> steps;

    LatticePoint end() const {
        LatticePoint p = start;
        for (const StepVector& s : steps) p = p + LatticePoint{s.dx, s.dy};
        return p;
    }
    friend bool operator==(const WalkPath&, const WalkPath&) = default;
};

struct PathCheck {
    bool ok = false;
    int bad_step = -1; // first violated step (0-based), -1 if steps are fine
    bool endpoint_mismatch = false;
    StepFail step_fail = StepFail::none;
};

/// Re-derives every step invariant from raw (dx, dy) and checks the endpoint.
PathCheck verify_path(const WalkPath& path, LatticePoint claimed_end);

// On-disk form of a walk: {"start":[x,y],"steps":[[dx,dy],...],"end":[x,y]}.
// Steps are raw displacements so that invalid files can still be loaded and
// then rejected with a step index.
struct PathDoc {
    LatticePoint start{};
    std::vector<std::pair<i64, i64>> steps;
    LatticePoint end{};
};

PathDoc to_doc(const WalkPath& path);

/// Validates a document; when `out` is given and the check passes, the
/// reconstructed walk is stored there.
PathCheck verify_doc(const PathDoc& doc, std::optional<LatticePoint> expected_end,
                     WalkPath* out = nullptr);

std::string path_to_json(const PathDoc& doc);
PathDoc path_from_json(const std::string& text); // throws std::runtime_error on bad input

} // namespace pythwalk
