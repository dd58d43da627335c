#pragma once

#include <optional>
#include <vector>

#include "pythwalk/geometry.hpp"
#include "pythwalk/triples.hpp"

namespace pythwalk {

// Closed-form two-step walk generators.
//
//  gh  : from a triple (a,b,c) and signs s_a, s_b with
//            s_a*a*g + s_b*b*h = c*(h-g) - 1,
//        the legs (a*g*h + s_a*g, b*g*h + s_b*h) and (a*g*h, b*g*h) form two
//        valid steps whose difference lands on (s_a*g, s_b*h).
//  n0  : targets (n,0), n >= 3, via leg pairs sharing the long leg n^3-n and
//        differing by n in the short leg; n = 4 has its own small pair.
//  n2n : targets (n,2n), n >= 2, via leg pairs differing by n and 2n; n = 2
//        has its own small pair.
// Even targets are reduced to an odd (or minimal even) base and the base walk
// is scaled by the stripped power of two.

enum class FamilyKind { gh, n0, n2n };

struct FamilySource {
    FamilyKind kind = FamilyKind::gh;
    PythTriple triple{}; // gh only
    int s_a = 0, s_b = 0; // gh only
    i64 base_n = 0;       // n0/n2n: the n the closed form was built for
    i64 scale = 1;        // > 1 when the base walk was scaled by a power of two
};

struct FamilySolution {
    FamilySource source;
    LatticePoint target{};
    WalkPath path;
};

enum class GhFail { none, relation_not_satisfied, zero_component_step };

struct GhResult {
    std::optional<FamilySolution> solution;
    GhFail fail = GhFail::none;
};

/// Two-step walk to (g, h) when the sign relation holds; both steps are
/// re-validated as Pythagorean vectors before anything is returned.
/// Preconditions: g != 0, h != 0, s_a and s_b in {-1, +1}.
GhResult gh_witness(const PythTriple& triple, i64 g, i64 h, int s_a, int s_b);

/// Solves the relation for each of the four sign pairs in a fixed order,
/// h = 1, 2, 3, ... within a pair, and emits up to `count` verified walks.
/// May emit fewer (a triple with both legs even satisfies no relation at all:
/// the left side is even, the right side odd).
std::vector<FamilySolution> gh_enumerate(const PythTriple& triple, int count);

/// Two-step walk to (n, 0). Throws std::domain_error for n < 3: (1,0) and
/// (2,0) are at graph distance 3, no such walk exists.
FamilySolution n0_witness(i64 n);

/// Two-step walk to (n, 2n). Throws std::domain_error for n < 2: (1,2) is at
/// graph distance 3.
FamilySolution n2n_witness(i64 n);

} // namespace pythwalk
