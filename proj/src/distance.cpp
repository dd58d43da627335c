#include "pythwalk/distance.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pythwalk {

const char* to_string(VerdictClass c) {
    switch (c) {
        case VerdictClass::d0: return "D0";
        case VerdictClass::d1: return "D1";
        case VerdictClass::d2: return "D2";
        case VerdictClass::d3_certified: return "D3_CERTIFIED";
        case VerdictClass::unresolved: return "UNRESOLVED";
    }
    return "?";
}

const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::unit_gap: return "UNIT_GAP";
        case CertificateKind::parity_n0: return "PARITY_N0";
        case CertificateKind::mixed_21: return "MIXED_21";
    }
    return "?";
}

const char* to_string(ExclusionRule r) {
    switch (r) {
        case ExclusionRule::axis_collinear: return "axis_collinear";
        case ExclusionRule::bisector_nonintegral: return "bisector_nonintegral";
        case ExclusionRule::adjacent_square_gap: return "adjacent_square_gap";
        case ExclusionRule::parity_mismatch: return "parity_mismatch";
        case ExclusionRule::quadratic_no_midpoint: return "quadratic_no_midpoint";
    }
    return "?";
}

bool classify_one_step(LatticePoint t) {
    return step_from(t.x, t.y).ok();
}

std::shared_ptr<const std::vector<PythTriple>> step_table(i64 leg_bound) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const std::vector<PythTriple>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(leg_bound);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<std::vector<PythTriple>>();
    // built directly so small bounds (down to the (3,4,5) legs) stay usable
    for_each_triple_up_to_leg(leg_bound, [&](const PythTriple& t) { table->push_back(t); });
    std::sort(table->begin(), table->end(), [](const PythTriple& l, const PythTriple& r) {
        if (l.c != r.c) return l.c < r.c;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
    cache.emplace(leg_bound, table);
    return table;
}

namespace {

constexpr LatticePoint kOrigin{0, 0};

struct TwoStepCandidate {
    StepVector s1{}, s2{};
    i64 max_len = 0, min_len = 0;
};

// Smaller max length, then smaller min length, then the lexicographically
// greatest first step. Total order: equal first steps mean equal candidates.
bool better(const TwoStepCandidate& a, const TwoStepCandidate& b) {
    if (a.max_len != b.max_len) return a.max_len < b.max_len;
    if (a.min_len != b.min_len) return a.min_len < b.min_len;
    if (a.s1.dx != b.s1.dx) return a.s1.dx > b.s1.dx;
    return a.s1.dy > b.s1.dy;
}

// Tries the eight signed/swap placements of the triple's legs as a midpoint.
template <typename F>
void for_each_leg_placement(const PythTriple& t, F&& f) {
    const i64 xs[2] = {t.a, t.b};
    for (int swap = 0; swap < 2; ++swap) {
        const i64 a = xs[swap], b = xs[1 - swap];
        f(a, b);
        f(a, -b);
        f(-a, b);
        f(-a, -b);
    }
}

void consider_midpoint(LatticePoint t, i64 dx, i64 dy, i64 len1,
                       std::optional<TwoStepCandidate>& best) {
    const i64 vx = checked_sub(t.x, dx);
    const i64 vy = checked_sub(t.y, dy);
    if (vx == 0 || vy == 0) return;
    const i64 len2 = integer_length(vx, vy);
    if (len2 < 0) return;
    TwoStepCandidate cand;
    cand.s1 = {dx, dy, len1};
    cand.s2 = {vx, vy, len2};
    cand.max_len = len1 > len2 ? len1 : len2;
    cand.min_len = len1 > len2 ? len2 : len1;
    if (!best || better(cand, *best)) best = cand;
    // A found pair walks equally well in either order, and the preferred
    // order must not depend on which of the two midpoints sits inside the
    // bound, or growing the bound could flip an already-found witness.
    std::swap(cand.s1, cand.s2);
    if (better(cand, *best)) best = cand;
}

WalkPath to_walk(const TwoStepCandidate& c) {
    WalkPath p;
    p.steps = {c.s1, c.s2};
    return p;
}

} // namespace

std::optional<WalkPath> find_two_step(LatticePoint t, i64 leg_bound) {
    if (t == kOrigin) throw std::domain_error("find_two_step: target must not be the origin");
    if (leg_bound < 1) throw std::domain_error("find_two_step: leg bound must be positive");
    const auto table = step_table(leg_bound);
    std::optional<TwoStepCandidate> best;
    for (const PythTriple& tri : *table)
        for_each_leg_placement(tri, [&](i64 dx, i64 dy) { consider_midpoint(t, dx, dy, tri.c, best); });
    if (!best) return std::nullopt;
    return to_walk(*best);
}

std::optional<WalkPath> shortest_two_step(LatticePoint t, i64 escalation_limit) {
    if (t == kOrigin) throw std::domain_error("shortest_two_step: target must not be the origin");
    if (escalation_limit < 1) throw std::domain_error("shortest_two_step: limit must be positive");
    if (escalation_limit < 5) return std::nullopt;

    i64 hyp_cap = escalation_limit < 64 ? escalation_limit : 64;
    for (;;) {
        std::optional<TwoStepCandidate> best;
        bool confirmed = false;
        // Scan in increasing first-step length so the cut-off is sound.
        const std::vector<PythTriple> triples = triples_up_to_hyp(hyp_cap);
        for (const PythTriple& tri : triples) {
            if (best && tri.c > best->max_len) { confirmed = true; break; }
            for_each_leg_placement(tri, [&](i64 dx, i64 dy) { consider_midpoint(t, dx, dy, tri.c, best); });
        }
        if (best && best->max_len <= hyp_cap) confirmed = true;
        if (confirmed) return to_walk(*best);
        if (hyp_cap >= escalation_limit) return best ? std::optional<WalkPath>(to_walk(*best)) : std::nullopt;
        hyp_cap = hyp_cap > escalation_limit / 4 ? escalation_limit : hyp_cap * 4;
    }
}

std::vector<LatticePoint> gap_one_quadratic_solutions() {
    // 3x^2 + 4(y-2)x + (4-4y) = 0. An integer x needs the discriminant
    // 16(y^2-y+1) to be a perfect square; y^2-y+1 sits strictly between
    // consecutive squares for every y outside {0, 1}.
    std::vector<LatticePoint> out;
    for (i64 y = 0; y <= 1; ++y) {
        const i64 b = 4 * (y - 2), c = 4 - 4 * y;
        const i64 disc = b * b - 12 * c;
        const i64 s = isqrt(disc);
        for (const i64 num : {-b + s, -b - s}) {
            if (num % 6 != 0) continue;
            const i64 x = num / 6;
            if (3 * x * x + 4 * x * y - 8 * x - 4 * y + 4 != 0) continue;
            const LatticePoint p{x, y};
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    }
    return out;
}

bool gap_one_discriminant_is_square(i64 y) {
    return is_perfect_square(i128(y) * y - y + 1);
}

std::optional<Certificate> certify_three(LatticePoint t) {
    const LatticePoint r = canonical_rep(t);
    Certificate cert;
    cert.canonical_target = r;
    if (r == LatticePoint{0, 1}) {
        cert.kind = CertificateKind::unit_gap;
        cert.cases = {
            {0, ExclusionRule::bisector_nonintegral, {}},
            {1, ExclusionRule::axis_collinear, {}},
        };
    } else if (r == LatticePoint{0, 2}) {
        cert.kind = CertificateKind::parity_n0;
        cert.cases = {
            {0, ExclusionRule::adjacent_square_gap, {}},
            {1, ExclusionRule::parity_mismatch, {}},
            {2, ExclusionRule::axis_collinear, {}},
        };
    } else if (r == LatticePoint{1, 2}) {
        cert.kind = CertificateKind::mixed_21;
        cert.cases = {
            {0, ExclusionRule::bisector_nonintegral, {}},
            {1, ExclusionRule::quadratic_no_midpoint, {{0, 2}, {1, 0}}},
            {2, ExclusionRule::parity_mismatch, {}},
        };
    } else {
        return std::nullopt;
    }
    return cert;
}

namespace {

bool check_case(const Certificate& cert, const ExclusionCase& ec) {
    const LatticePoint t = cert.canonical_target;
    switch (ec.rule) {
        case ExclusionRule::axis_collinear: {
            // The gap equals |OT| exactly, so the midpoint degenerates onto the
            // line through O and T; that line must be an axis (no edges leave it
            // toward its own points). Holds when O and T share a coordinate.
            if (i128(ec.length_gap) * ec.length_gap != norm2(t.x, t.y)) return false;
            if (t.x != 0 && t.y != 0) return false;
            for (i64 k = -4; k <= 4; ++k) {
                const LatticePoint p = t.x == 0 ? LatticePoint{0, k} : LatticePoint{k, 0};
                if (is_edge(kOrigin, p) || is_edge(t, p)) return false;
            }
            return true;
        }
        case ExclusionRule::bisector_nonintegral: {
            // Equidistant midpoints satisfy 2*t.x*x + 2*t.y*y = |OT|^2; with an
            // even left side and odd right side there is no lattice solution.
            if (ec.length_gap != 0) return false;
            const i64 g = std::gcd(2 * t.x, 2 * t.y);
            const i128 rhs = norm2(t.x, t.y);
            return g != 0 && rhs % g != 0;
        }
        case ExclusionRule::adjacent_square_gap: {
            // Canonical (0,2): equidistant midpoints sit on y = 1 and need
            // x^2 + 1 to be a perfect square, which fails for every x != 0,
            // and x = 0 lands on the axis shared with O and T.
            if (!(t == LatticePoint{0, 2}) || ec.length_gap != 0) return false;
            for (i64 x = 1; x <= 512; ++x)
                if (is_perfect_square(norm2(x, 1))) return false;
            return !is_edge(kOrigin, {0, 1}) && !is_edge(t, {0, 1});
        }
        case ExclusionRule::parity_mismatch: {
            // |OP|^2 and |TP|^2 parities admit only gaps of the other parity.
            for (i64 x = -8; x <= 8; ++x) {
                for (i64 y = -8; y <= 8; ++y) {
                    const int par_o = static_cast<int>(norm2(x, y) & 1);
                    const int par_t = static_cast<int>(norm2(x - t.x, y - t.y) & 1);
                    // same parity of squares => same parity of integer lengths
                    // => even gap; different => odd gap.
                    const bool same = par_o == par_t;
                    if (same && (ec.length_gap % 2) != 0) continue;
                    if (!same && (ec.length_gap % 2) != 1) continue;
                    return false; // the claimed gap parity is actually possible
                }
            }
            return true;
        }
        case ExclusionRule::quadratic_no_midpoint: {
            if (!(t == LatticePoint{1, 2}) || ec.length_gap != 1) return false;
            // Solutions are computed in the (2,1) frame; swap into canonical.
            std::vector<LatticePoint> expect;
            for (const LatticePoint& p : gap_one_quadratic_solutions())
                expect.push_back({p.y, p.x});
            std::vector<LatticePoint> got = ec.forced_midpoints;
            std::sort(expect.begin(), expect.end());
            std::sort(got.begin(), got.end());
            if (expect != got) return false;
            for (const LatticePoint& p : got)
                if (is_edge(kOrigin, p) || is_edge(t, p)) return false;
            return true;
        }
    }
    return false;
}

} // namespace

bool check_certificate(const Certificate& cert) {
    const LatticePoint t = cert.canonical_target;
    const bool known = (t == LatticePoint{0, 1} && cert.kind == CertificateKind::unit_gap) ||
                       (t == LatticePoint{0, 2} && cert.kind == CertificateKind::parity_n0) ||
                       (t == LatticePoint{1, 2} && cert.kind == CertificateKind::mixed_21);
    if (!known) return false;

    // Every integer value of | |OP| - |TP| | in [0, |OT|] must be excluded once.
    const i64 max_gap = isqrt(static_cast<i64>(norm2(t.x, t.y)));
    std::vector<bool> seen(static_cast<std::size_t>(max_gap) + 1, false);
    for (const ExclusionCase& ec : cert.cases) {
        if (ec.length_gap < 0 || ec.length_gap > max_gap) return false;
        if (seen[static_cast<std::size_t>(ec.length_gap)]) return false;
        seen[static_cast<std::size_t>(ec.length_gap)] = true;
        if (!check_case(cert, ec)) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

BasisDecomposition basis_decomposition(LatticePoint t) {
    const i64 k = checked_add(checked_mul(3, t.x), checked_mul(4, t.y));
    return {k, checked_sub(0, k), checked_add(t.x, t.y)};
}

WalkPath three_step_construct(LatticePoint t) {
    const BasisDecomposition k = basis_decomposition(t);
    WalkPath p;
    const auto push = [&p](i64 coeff, i64 bx, i64 by) {
        if (coeff == 0) return;
        const StepResult s = step_from(checked_mul(coeff, bx), checked_mul(coeff, by));
        if (!s.ok()) throw std::logic_error("three_step_construct: degenerate step");
        p.steps.push_back(s.step);
    };
    push(k.k_a, 3, 4);
    push(k.k_b, 4, 3);
    push(k.k_c, 4, -3);
    return p;
}

namespace {

// Ordered relation probes for the family fast path; leg order matters, the
// relation treats a and b asymmetrically.
const std::vector<PythTriple>& gh_base_triples() {
    static const std::vector<PythTriple> k = {
        {4, 3, 5},  {3, 4, 5},  {12, 5, 13}, {5, 12, 13}, {15, 8, 17},
        {8, 15, 17}, {24, 7, 25}, {7, 24, 25}, {21, 20, 29}, {20, 21, 29},
    };
    return k;
}

std::optional<WalkPath> family_two_step(LatticePoint r) {
    // r is canonical: 0 <= g <= h.
    const i64 g = r.x, h = r.y;
    if (g == 0) {
        if (h < 3) return std::nullopt;
        WalkPath p = n0_witness(h).path; // lands on (h, 0)
        for (StepVector& s : p.steps) std::swap(s.dx, s.dy);
        return p;
    }
    if (h == 2 * g && g >= 2) return n2n_witness(g).path;
    static constexpr int kSignPairs[4][2] = {{-1, +1}, {-1, -1}, {+1, +1}, {+1, -1}};
    for (const PythTriple& base : gh_base_triples()) {
        for (const auto& sp : kSignPairs) {
            const i128 lhs = i128(sp[0]) * base.a * g + i128(sp[1]) * base.b * h;
            const i128 rhs = i128(base.c) * (i128(h) - g) - 1;
            if (lhs != rhs) continue;
            GhResult res = gh_witness(base, g, h, sp[0], sp[1]);
            if (res.solution) return std::move(res.solution->path);
        }
    }
    return std::nullopt;
}

DistanceVerdict classify_canonical(LatticePoint r, i64 leg_bound, FamilyUse family_use) {
    DistanceVerdict v;
    if (r == kOrigin) {
        v.cls = VerdictClass::d0;
        return v;
    }
    if (const StepResult s = step_from(r.x, r.y); s.ok()) {
        v.cls = VerdictClass::d1;
        WalkPath p;
        p.steps = {s.step};
        v.witness = std::move(p);
        return v;
    }
    if (family_use == FamilyUse::before_search) {
        if (auto fam = family_two_step(r)) {
            v.cls = VerdictClass::d2;
            v.witness = std::move(*fam);
            v.family_fast_path = true;
            return v;
        }
    }
    if (auto found = find_two_step(r, leg_bound)) {
        v.cls = VerdictClass::d2;
        v.witness = std::move(*found);
        v.bound_used = leg_bound;
        return v;
    }
    if (family_use == FamilyUse::after_search) {
        if (auto fam = family_two_step(r)) {
            v.cls = VerdictClass::d2;
            v.witness = std::move(*fam);
            v.family_fast_path = true;
            return v;
        }
    }
    if (auto cert = certify_three(r)) {
        v.cls = VerdictClass::d3_certified;
        v.certificate = std::move(*cert);
    } else {
        v.cls = VerdictClass::unresolved;
    }
    v.witness = three_step_construct(r);
    v.bound_used = leg_bound;
    return v;
}

} // namespace

DistanceVerdict classify(LatticePoint t, i64 leg_bound, FamilyUse family_use) {
    if (leg_bound < 1) throw std::domain_error("classify: leg bound must be positive");
    const LatticePoint r = canonical_rep(t);
    const auto sigma = orbit_transform(r, t);
    if (!sigma) throw std::logic_error("classify: canonical representative not in orbit");
    DistanceVerdict v = classify_canonical(r, leg_bound, family_use);
    if (v.witness && !(r == t))
        for (StepVector& s : v.witness->steps) s = sigma->apply(s);
    return v;
}

DistanceVerdict classify_escalating(LatticePoint t, std::span<const i64> schedule,
                                    FamilyUse family_use) {
    if (schedule.empty()) throw std::domain_error("classify_escalating: empty schedule");
    DistanceVerdict v;
    for (const i64 bound : schedule) {
        v = classify(t, bound, family_use);
        if (v.cls != VerdictClass::unresolved) return v;
    }
    return v;
}

} // namespace pythwalk
