#pragma once

#include <vector>

#include "pythwalk/int_arith.hpp"

namespace pythwalk {

// A Pythagorean triple a^2 + b^2 = c^2 with 1 <= a <= b < c.
// Triples generated from the two-parameter form
//   ( d(m^2 - n^2), 2dmn, d(m^2 + n^2) ),  gcd(m, n) = 1, m > n >= 1
// carry their parameters; d == 0 means no provenance recorded.
struct PythTriple {
    i64 a = 0, b = 0, c = 0;
    i64 m = 0, n = 0, d = 0;

    bool has_params() const noexcept { return d != 0; }
    friend bool operator==(const PythTriple& l, const PythTriple& r) noexcept {
        return l.a == r.a && l.b == r.b && l.c == r.c;
    }
};

inline PythTriple make_triple(i64 leg1, i64 leg2, i64 hyp, i64 m = 0, i64 n = 0, i64 d = 0) {
    if (leg1 > leg2) { const i64 t = leg1; leg1 = leg2; leg2 = t; }
    return PythTriple{leg1, leg2, hyp, m, n, d};
}

namespace detail {

// Coprime pairs m > n >= 1 of opposite parity generate every primitive triple
// exactly once; scaling by d then covers all triples exactly once. Pairs with
// m, n both odd reproduce 2x the primitive of ((m+n)/2, (m-n)/2), so the
// bound-driven enumerators skip them outright.
inline bool coprime_opposite_parity(i64 m, i64 n) {
    return ((m ^ n) & 1) != 0 && std::gcd(m, n) == 1;
}

// Visits n in [1, m-1] such that min(m^2 - n^2, 2mn) <= leg_max, i.e. the only
// n for which any d >= 1 can keep both legs within the bound.
template <typename F>
void for_each_candidate_n(i64 m, i64 leg_max, F&& f) {
    const i64 m2 = checked_mul(m, m);
    if (m2 - leg_max <= 1) {
        for (i64 n = 1; n < m; ++n) f(n);
        return;
    }
    const i64 hi1 = leg_max / (2 * m);              // 2mn <= leg_max
    i64 lo2 = isqrt(m2 - leg_max);                  // m^2 - n^2 <= leg_max
    while (lo2 * lo2 < m2 - leg_max) ++lo2;
    if (hi1 + 1 >= lo2) {
        for (i64 n = 1; n < m; ++n) f(n);
        return;
    }
    for (i64 n = 1; n <= hi1; ++n) f(n);
    for (i64 n = lo2; n < m; ++n) f(n);
}

} // namespace detail

/// Every triple with max(a, b) <= leg_max, each exactly once.
template <typename F>
void for_each_triple_up_to_leg(i64 leg_max, F&& f) {
    for (i64 m = 2; 2 * m - 1 <= leg_max; ++m) {
        detail::for_each_candidate_n(m, leg_max, [&](i64 n) {
            if (!detail::coprime_opposite_parity(m, n)) return;
            const i64 a0 = m * m - n * n;
            const i64 b0 = 2 * m * n;
            const i64 c0 = m * m + n * n;
            const i64 hi = a0 > b0 ? a0 : b0;
            for (i64 d = 1; d * hi <= leg_max; ++d)
                f(make_triple(d * a0, d * b0, d * c0, m, n, d));
        });
    }
}

/// Every triple with c <= hyp_max, each exactly once.
template <typename F>
void for_each_triple_up_to_hyp(i64 hyp_max, F&& f) {
    for (i64 m = 2; m * m + 1 <= hyp_max; ++m) {
        for (i64 n = 1; n < m && m * m + n * n <= hyp_max; ++n) {
            if (!detail::coprime_opposite_parity(m, n)) continue;
            const i64 a0 = m * m - n * n;
            const i64 b0 = 2 * m * n;
            const i64 c0 = m * m + n * n;
            for (i64 d = 1; d * c0 <= hyp_max; ++d)
                f(make_triple(d * a0, d * b0, d * c0, m, n, d));
        }
    }
}

/// The boxed parameter sweep: all (m, n, d) with 1 <= n < m < m_max, n < n_max,
/// d < d_max and gcd(m, n) = 1. Pairs with m, n both odd duplicate a triple of
/// an opposite-parity pair at doubled d; such a duplicate is emitted only when
/// its opposite-parity generator falls outside the box, keeping the stream
/// duplicate-free without materializing it.
template <typename F>
void for_each_triple_from_params(i64 m_max, i64 n_max, i64 d_max, F&& f) {
    for (i64 m = 2; m < m_max; ++m) {
        const i64 n_hi = (m - 1 < n_max - 1) ? m - 1 : n_max - 1;
        for (i64 n = 1; n <= n_hi; ++n) {
            if (std::gcd(m, n) != 1) continue;
            const bool both_odd = ((m & 1) != 0 && (n & 1) != 0);
            const i64 a0 = checked_sub(checked_mul(m, m), checked_mul(n, n));
            const i64 b0 = checked_mul(2, checked_mul(m, n));
            const i64 c0 = checked_add(checked_mul(m, m), checked_mul(n, n));
            for (i64 d = 1; d < d_max; ++d) {
                if (both_odd) {
                    const i64 mm = (m + n) / 2, nn = (m - n) / 2;
                    if (mm < m_max && nn < n_max && 2 * d < d_max) continue;
                }
                f(make_triple(checked_mul(d, a0), checked_mul(d, b0), checked_mul(d, c0), m, n, d));
            }
        }
    }
}

/// Materialized enumerations, sorted by (c, a, b). Preconditions per the
/// library contract: leg_max >= 5, parameter bounds >= 2.
std::vector<PythTriple> triples_up_to_leg(i64 leg_max);
std::vector<PythTriple> triples_up_to_hyp(i64 hyp_max);
std::vector<PythTriple> triples_from_params(i64 m_max, i64 n_max, i64 d_max);

} // namespace pythwalk
