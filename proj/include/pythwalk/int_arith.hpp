#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace pythwalk {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Range contract: coordinates and step lengths fit in signed 64 bits; every
// square and dot product is evaluated in 128-bit intermediates. Overflow is a
// reported error, never a silent wraparound.

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::range_error("integer overflow in addition");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("integer overflow in subtraction");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("integer overflow in multiplication");
    return r;
}

/// dx*dx + dy*dy, exact. Any two signed 64-bit values fit: 2*(2^63-1)^2 < 2^127.
inline i128 norm2(i64 dx, i64 dy) {
    return i128(dx) * dx + i128(dy) * dy;
}

/// Floor square root of an unsigned 128-bit value.
/// Seeded from long double, then corrected with exact integer comparisons, so
/// the result is exact over the whole range (float rounding near 2^64 is real).
inline u64 isqrt_u128(u128 v) noexcept {
    if (v == 0) return 0;
    u128 r = static_cast<u128>(sqrtl(static_cast<long double>(v)));
    if (r > ~u64{0}) r = ~u64{0};
    while (r > 0 && r * r > v) --r;
    while (r < ~u64{0} && (r + 1) * (r + 1) <= v) ++r;
    return static_cast<u64>(r);
}

/// Floor square root of a nonnegative signed value. r*r <= v < (r+1)*(r+1).
inline i64 isqrt(i64 v) {
    if (v < 0) throw std::range_error("isqrt: negative input");
    return static_cast<i64>(isqrt_u128(static_cast<u128>(v)));
}

inline bool is_perfect_square(i128 v) {
    if (v < 0) throw std::range_error("is_perfect_square: negative input");
    const u64 r = isqrt_u128(static_cast<u128>(v));
    return u128(r) * r == static_cast<u128>(v);
}

/// Exact length of (dx, dy) if it is integral, -1 otherwise.
/// Throws std::range_error when the exact root does not fit in signed 64 bits.
inline i64 integer_length(i64 dx, i64 dy) {
    const u128 n = static_cast<u128>(norm2(dx, dy));
    const u64 r = isqrt_u128(n);
    if (u128(r) * r != n) return -1;
    if (r > static_cast<u64>(INT64_MAX)) throw std::range_error("step length exceeds 64-bit range");
    return static_cast<i64>(r);
}

} // namespace pythwalk
