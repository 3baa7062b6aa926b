#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "crosstile/zn.hpp"

namespace crosstile {

inline constexpr std::size_t kDefaultViolationCap = 32;

/// A place where the covering multiplicity differs from the requested level.
/// `Point` is a group element for Z_N and an interval for the continuous
/// verifiers.
template <class Point>
struct Violation {
    Point where;
    std::int64_t multiplicity;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of a level-l tiling check.
///
/// `is_tiling` holds exactly when `violations` is empty and `level` is set.
/// `violations` is truncated to the cap given to the verifier;
/// `violation_count` is the untruncated total.
template <class Point>
struct TilingReport {
    bool is_tiling = false;
    std::optional<std::int64_t> level;
    std::vector<Violation<Point>> violations;
    std::size_t violation_count = 0;

    explicit operator bool() const { return is_tiling; }
};

/// Compares every entry of `v` against `level`.
inline TilingReport<std::int64_t> check_constant(const WeightedCyclicVector& v, std::int64_t level,
                                                std::size_t cap = kDefaultViolationCap) {
    TilingReport<std::int64_t> r;
    for (std::size_t t = 0; t < v.modulus(); ++t) {
        if (v[t] == level) continue;
        ++r.violation_count;
        if (r.violations.size() < cap) r.violations.push_back({static_cast<std::int64_t>(t), v[t]});
    }
    r.is_tiling = r.violation_count == 0;
    if (r.is_tiling) r.level = level;
    return r;
}

}  // namespace crosstile
