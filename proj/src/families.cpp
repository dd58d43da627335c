#include "pythwalk/families.hpp"

#include <stdexcept>

namespace pythwalk {

namespace {

WalkPath two_step(const StepVector& s1, const StepVector& s2) {
    WalkPath p;
    p.steps = {s1, s2};
    return p;
}

void require_verified(const WalkPath& path, LatticePoint target, const char* what) {
    if (!verify_path(path, target).ok)
        throw std::logic_error(std::string(what) + ": constructed walk failed verification");
}

FamilySolution scaled_by_power_of_two(FamilySolution base, i64 factor) {
    if (factor == 1) return base;
    FamilySolution out = base;
    out.source.scale = checked_mul(base.source.scale, factor);
    out.target = {checked_mul(base.target.x, factor), checked_mul(base.target.y, factor)};
    for (StepVector& s : out.path.steps) {
        s.dx = checked_mul(s.dx, factor);
        s.dy = checked_mul(s.dy, factor);
        s.len = checked_mul(s.len, factor);
    }
    require_verified(out.path, out.target, "scaled family walk");
    return out;
}

// n = 2^k * m. The returned m is odd unless stripping twos bottoms out at 1,
// in which case m is the smallest even base the caller accepts (4 or 2).
std::pair<i64, i64> split_power_of_two(i64 n, i64 even_base) {
    i64 factor = 1;
    while (n % 2 == 0 && n > even_base) {
        n /= 2;
        factor *= 2;
    }
    if (n % 2 == 0 && n != even_base) throw std::logic_error("split_power_of_two: unreachable");
    return {n, factor};
}

} // namespace

GhResult gh_witness(const PythTriple& triple, i64 g, i64 h, int s_a, int s_b) {
    if (g == 0 || h == 0) throw std::domain_error("gh_witness: g and h must be nonzero");
    if ((s_a != 1 && s_a != -1) || (s_b != 1 && s_b != -1))
        throw std::domain_error("gh_witness: signs must be +-1");

    const i128 lhs = i128(s_a) * triple.a * g + i128(s_b) * triple.b * h;
    const i128 rhs = i128(triple.c) * (i128(h) - g) - 1;
    if (lhs != rhs) return {std::nullopt, GhFail::relation_not_satisfied};

    const i64 agh = checked_mul(triple.a, checked_mul(g, h));
    const i64 bgh = checked_mul(triple.b, checked_mul(g, h));
    const StepResult s1 = step_from(checked_add(agh, s_a * g), checked_add(bgh, s_b * h));
    const StepResult s2 = step_from(-agh, -bgh);
    if (!s1.ok() || !s2.ok()) return {std::nullopt, GhFail::zero_component_step};

    // The walk lands on (s_a*g, s_b*h); flip the negated axes to land on (g, h).
    WalkPath path = two_step(s1.step, s2.step);
    for (StepVector& s : path.steps) {
        if (s_a < 0) s.dx = -s.dx;
        if (s_b < 0) s.dy = -s.dy;
    }
    const LatticePoint target{g, h};
    if (!verify_path(path, target).ok) return {std::nullopt, GhFail::zero_component_step};

    FamilySolution sol;
    sol.source = {FamilyKind::gh, triple, s_a, s_b, 0, 1};
    sol.target = target;
    sol.path = std::move(path);
    return {std::move(sol), GhFail::none};
}

std::vector<FamilySolution> gh_enumerate(const PythTriple& triple, int count) {
    if (count < 1) throw std::domain_error("gh_enumerate: count must be >= 1");
    static constexpr int kSignPairs[4][2] = {{-1, +1}, {-1, -1}, {+1, +1}, {+1, -1}};

    std::vector<FamilySolution> out;
    for (const auto& sp : kSignPairs) {
        const int s_a = sp[0], s_b = sp[1];
        // g*(c + s_a*a) = h*(c - s_b*b) - 1; both coefficients are positive.
        const i64 ca = triple.c + s_a * triple.a;
        const i64 cb = triple.c - s_b * triple.b;
        const i64 gcd = std::gcd(ca, cb);
        if (gcd != 1) continue; // cb*h = 1 (mod ca) unsolvable

        // Smallest h >= 1 with cb*h = 1 (mod ca), then step by ca.
        i64 h = 1;
        if (ca > 1) {
            i64 r0 = ca, r1 = cb % ca, t0 = 0, t1 = 1;
            while (r1 != 0) {
                const i64 q = r0 / r1;
                const i64 r2 = r0 - q * r1;
                const i64 t2 = t0 - q * t1;
                r0 = r1; r1 = r2; t0 = t1; t1 = t2;
            }
            h = t0 % ca;
            if (h <= 0) h += ca;
        }
        for (; static_cast<int>(out.size()) < count; h += (ca > 1 ? ca : 1)) {
            const i64 g = (checked_mul(cb, h) - 1) / ca;
            if (g == 0) continue;
            GhResult r = gh_witness(triple, g, h, s_a, s_b);
            if (r.solution) out.push_back(std::move(*r.solution));
        }
        if (static_cast<int>(out.size()) >= count) break;
    }
    return out;
}

FamilySolution n0_witness(i64 n) {
    if (n < 3)
        throw std::domain_error("n0_witness: (1,0) and (2,0) are at graph distance 3; n must be >= 3");

    if (n % 2 == 0) {
        const auto [base, factor] = split_power_of_two(n, 4);
        if (base != n) return scaled_by_power_of_two(n0_witness(base), factor);
    }

    FamilySolution sol;
    sol.source = {FamilyKind::n0, {}, 0, 0, n, 1};
    sol.target = {n, 0};
    if (n == 4) {
        sol.path = two_step(step_from(9, 12).step, step_from(-5, -12).step);
    } else {
        // legs (n^2 + (n-1)/2, n^3 - n) and (n^2 - (n+1)/2, n^3 - n): the long
        // legs cancel and the short legs differ by exactly n.
        const i64 n2 = checked_mul(n, n);
        const i64 long_leg = checked_sub(checked_mul(n2, n), n);
        const StepResult s1 = step_from(checked_add(n2, (n - 1) / 2), long_leg);
        const StepResult s2 = step_from(-checked_sub(n2, (n + 1) / 2), -long_leg);
        if (!s1.ok() || !s2.ok()) throw std::logic_error("n0_witness: degenerate step");
        sol.path = two_step(s1.step, s2.step);
    }
    require_verified(sol.path, sol.target, "n0_witness");
    return sol;
}

FamilySolution n2n_witness(i64 n) {
    if (n < 2)
        throw std::domain_error("n2n_witness: (1,2) is at graph distance 3; n must be >= 2");

    if (n % 2 == 0) {
        const auto [base, factor] = split_power_of_two(n, 2);
        if (base != n) return scaled_by_power_of_two(n2n_witness(base), factor);
    }

    FamilySolution sol;
    sol.source = {FamilyKind::n2n, {}, 0, 0, n, 1};
    sol.target = {n, checked_mul(2, n)};
    if (n == 2) {
        sol.path = two_step(step_from(77, -36).step, step_from(-75, 40).step);
    } else {
        // legs (n^2 - n + 2 - q, n^2 - n) and (n^2 - 2n + 2 - q, n^2 + n) with
        // q = ((n-3)/2)^2; x-components differ by n, y-components sum to 2n
        // once the first pair is oriented downward.
        const i64 q = checked_mul((n - 3) / 2, (n - 3) / 2);
        const i64 n2 = checked_mul(n, n);
        const StepResult s1 = step_from(checked_sub(checked_add(n2, 2), checked_add(n, q)), -(n2 - n));
        const StepResult s2 = step_from(-checked_sub(checked_add(n2, 2), checked_add(2 * n, q)), n2 + n);
        if (!s1.ok() || !s2.ok()) throw std::logic_error("n2n_witness: degenerate step");
        sol.path = two_step(s1.step, s2.step);
    }
    require_verified(sol.path, sol.target, "n2n_witness");
    return sol;
}

} // namespace pythwalk
