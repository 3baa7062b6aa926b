#pragma once

// Translational tilings A + X = Z_N at level l: direct verification, the
// Fourier criterion, and complement enumeration.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosstile/dft.hpp"
#include "crosstile/report.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

/// Checks that every t in Z_N is covered exactly `level` times by A + X.
inline TilingReport<std::int64_t> verify_tiling(const CyclicSet& a, const CyclicSet& x, std::int64_t level = 1,
                                               std::size_t cap = kDefaultViolationCap) {
    require_same_modulus(a.modulus(), x.modulus(), "verify_tiling");
    if (level <= 0) throw std::invalid_argument("crosstile: tiling level must be positive");
    return check_constant(convolve(a, x), level, cap);
}

/// Level-1 tiling via the Fourier side: |A||X| = N, and every nonzero
/// frequency is a zero of A^ or of X^.
inline bool fourier_tiling_check(const CyclicSet& a, const CyclicSet& x) {
    require_same_modulus(a.modulus(), x.modulus(), "fourier_tiling_check");
    const std::size_t n = a.modulus();
    if (a.size() * x.size() != n) return false;
    const CyclicSet za = dft_zero_set(WeightedCyclicVector(a));
    const CyclicSet zx = dft_zero_set(WeightedCyclicVector(x));
    for (std::size_t k = 1; k < n; ++k) {
        const auto kk = static_cast<std::int64_t>(k);
        if (!za.contains(kk) && !zx.contains(kk)) return false;
    }
    return true;
}

struct ComplementSearch {
    std::vector<CyclicSet> complements;  // canonical order
    std::optional<std::string> note;     // set when no search was possible
};

/// All X with A + X = Z_N at level 1.
///
/// Backtracking always covers the smallest uncovered point; each tiling is
/// reached along exactly one branch.
inline ComplementSearch find_complements(const CyclicSet& a) {
    const std::size_t n = a.modulus();
    ComplementSearch result;
    if (a.empty()) {
        result.note = "empty tile has no complement";
        return result;
    }
    if (n % a.size() != 0) {
        result.note = "|A| = " + std::to_string(a.size()) + " does not divide N = " + std::to_string(n);
        return result;
    }
    const auto tile = a.members();
    const auto nn = static_cast<std::int64_t>(n);
    std::vector<char> covered(n, 0);
    CyclicSet chosen(n);

    auto fits = [&](std::int64_t t) {
        return std::all_of(tile.begin(), tile.end(),
                           [&](std::int64_t e) { return !covered[static_cast<std::size_t>(mod_floor(e + t, nn))]; });
    };
    auto mark = [&](std::int64_t t, char v) {
        for (auto e : tile) covered[static_cast<std::size_t>(mod_floor(e + t, nn))] = v;
    };

    auto recurse = [&](auto&& self, std::size_t from) -> void {
        std::size_t p = from;
        while (p < n && covered[p]) ++p;
        if (p == n) {
            result.complements.push_back(chosen);
            return;
        }
        for (auto e : tile) {
            const std::int64_t t = mod_floor(static_cast<std::int64_t>(p) - e, nn);
            if (chosen.contains(t) || !fits(t)) continue;
            mark(t, 1);
            chosen.insert(t);
            self(self, p + 1);
            chosen.erase(t);
            mark(t, 0);
        }
    };
    recurse(recurse, 0);
    std::sort(result.complements.begin(), result.complements.end());
    return result;
}

}  // namespace crosstile
