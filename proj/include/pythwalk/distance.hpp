#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pythwalk/families.hpp"
#include "pythwalk/geometry.hpp"
#include "pythwalk/triples.hpp"

namespace pythwalk {

// Classification of the graph distance from the origin to a target node.
//
//   d0           target is the origin
//   d1           target is one step away
//   d2           a verified two-step walk was found
//   d3_certified target is in one of the three orbits ((1,0), (2,0), (2,1)
//                types) proven to admit no two-step walk; a three-step
//                witness and a machine-checkable certificate are attached
//   unresolved   no two-step walk within the search bound; a three-step
//                witness is attached and the exhausted bound recorded.
//                Never a distance claim beyond the certified orbits.

enum class VerdictClass { d0, d1, d2, d3_certified, unresolved };
const char* to_string(VerdictClass c);

enum class CertificateKind { unit_gap, parity_n0, mixed_21 };
const char* to_string(CertificateKind k);

// One excluded value of | |OP| - |TP| | together with the rule that kills it.
enum class ExclusionRule {
    axis_collinear,        // midpoint forced onto the axis through O and T: no such edges
    bisector_nonintegral,  // midpoint forced onto a perpendicular bisector with no lattice points
    adjacent_square_gap,   // forced |OP|^2 = y^2 + 1, strictly between consecutive squares
    parity_mismatch,       // |OP| and |TP| parities cannot produce this gap
    quadratic_no_midpoint, // the gap-1 quadratic has integer solutions, but none is a usable midpoint
};
const char* to_string(ExclusionRule r);

struct ExclusionCase {
    int length_gap = 0;
    ExclusionRule rule{};
    std::vector<LatticePoint> forced_midpoints; // quadratic_no_midpoint only
};

struct Certificate {
    CertificateKind kind{};
    LatticePoint canonical_target{};
    std::vector<ExclusionCase> cases;
};

/// Re-derives everything checkable in a certificate: case coverage, the
/// quadratic solution set, non-edge status of forced midpoints.
bool check_certificate(const Certificate& cert);

struct DistanceVerdict {
    VerdictClass cls = VerdictClass::unresolved;
    std::optional<WalkPath> witness;
    std::optional<Certificate> certificate;
    i64 bound_used = 0;       // leg bound consumed by the two-step search; 0 if none ran
    bool family_fast_path = false;
};

/// True iff the target itself is a valid step from the origin.
bool classify_one_step(LatticePoint t);

/// Minimal two-step walk to t among midpoints P with max(|P.x|, |P.y|) <=
/// leg_bound, or empty. Minimality order: smallest max step length, then
/// smallest min step length, then the lexicographically greatest first step —
/// a total order, so the result is independent of scan order and worker count.
std::optional<WalkPath> find_two_step(LatticePoint t, i64 leg_bound);

/// Globally minimal two-step walk under the same order, found by scanning
/// candidate first steps in increasing length and stopping once no longer
/// step can win. Empty if none exists with first-step length <= escalation_limit.
std::optional<WalkPath> shortest_two_step(LatticePoint t, i64 escalation_limit);

/// Certificate for the three exceptional orbits, empty for everything else.
std::optional<Certificate> certify_three(LatticePoint t);

/// All integer solutions of 3x^2 + 4xy - 8x - 4y + 4 = 0, the equation behind
/// the gap-1 case of the (2,1)-type certificate. The discriminant argument
/// forces y into {0, 1}; the result is exactly {(2,0), (0,1)}.
std::vector<LatticePoint> gap_one_quadratic_solutions();

/// y^2 - y + 1, the quarter-discriminant of the gap-1 quadratic in x.
/// It is a perfect square only for y in {0, 1}.
bool gap_one_discriminant_is_square(i64 y);

// Coefficients on the spanning steps A(3,4), B(4,3), C(4,-3):
// (3x+4y)*A - (3x+4y)*B + (x+y)*C = (x, y) for every lattice point.
struct BasisDecomposition {
    i64 k_a = 0, k_b = 0, k_c = 0;
};
BasisDecomposition basis_decomposition(LatticePoint t);

/// Walk of at most three steps to any target (empty for the origin);
/// zero-coefficient steps are omitted.
WalkPath three_step_construct(LatticePoint t);

// Family generators may answer before or after the bounded search. The search
// yields the minimal witness; families are cheap but not minimal.
enum class FamilyUse { after_search, before_search, off };

/// Full classification at a single leg bound. The target is reduced to its
/// canonical orbit representative and the witness mapped back through the
/// matching symmetry, so verdicts across an orbit agree and their witnesses
/// are related by the corresponding signed/swap transform.
DistanceVerdict classify(LatticePoint t, i64 leg_bound,
                         FamilyUse family_use = FamilyUse::after_search);

/// classify at each bound of a strictly increasing schedule until the verdict
/// is better than unresolved.
DistanceVerdict classify_escalating(LatticePoint t, std::span<const i64> schedule,
                                    FamilyUse family_use = FamilyUse::after_search);

/// Shared immutable triple table for a leg bound, sorted by hypotenuse.
/// Built once per bound under a lock; concurrent readers share the result.
std::shared_ptr<const std::vector<PythTriple>> step_table(i64 leg_bound);

} // namespace pythwalk
