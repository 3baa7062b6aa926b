#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <vector>

#include "crosstile/cyclotomic.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

/// The set of k in Z_N with u^(k) = sum_t u[t] zeta_N^{tk} = 0, decided
/// exactly. zeta_N^k is a primitive (N / gcd(N, k))-th root of unity, so the
/// test runs once per divisor d of N: u^(k) = 0 iff Phi_d divides u(x).
inline CyclicSet dft_zero_set(const WeightedCyclicVector& u) {
    const std::size_t n = u.modulus();
    std::vector<bool> vanishes_for_order(n + 1, false);
    for (std::size_t d : divisors(n)) vanishes_for_order[d] = vanishes_at_primitive_root(u.weights(), d);
    CyclicSet zeros(n);
    for (std::size_t k = 0; k < n; ++k)
        if (vanishes_for_order[n / std::gcd(n, k)]) zeros.insert(static_cast<std::int64_t>(k));
    return zeros;
}

/// Floating-point u^(k), same sign convention as dft_zero_set. Diagnostic
/// only: nothing in the library makes a decision from these values.
inline std::vector<std::complex<double>> dft_numeric(const WeightedCyclicVector& u) {
    const std::size_t n = u.modulus();
    std::vector<std::complex<double>> out(n);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (u[t] == 0) continue;
            // reduce t*k first so the angle stays accurate
            const double angle = two_pi * static_cast<double>((t * k) % n) / static_cast<double>(n);
            acc += static_cast<double>(u[t]) * std::polar(1.0, angle);
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace crosstile
