#pragma once

// Overflow-checked 64-bit integer arithmetic. Every exact computation in the
// library goes through these; a result that does not fit throws instead of
// wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace crosstile {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("crosstile: integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("crosstile: integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("crosstile: integer overflow in multiplication");
    return r;
}

inline std::int64_t checked_narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("crosstile: value does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

/// Least non-negative residue of `a` modulo `m` (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = std::gcd(a, b);
    return checked_mul(a / g, b < 0 ? -b : b);
}

}  // namespace crosstile
