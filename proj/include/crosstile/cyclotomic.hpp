#pragma once

// Integer polynomials, cyclotomic polynomials and exact arithmetic in
// Z[zeta_M]. A sum of M-th roots of unity with integer weights is zero
// exactly when Phi_M divides its generating polynomial, which is how every
// "is this character sum zero?" question is answered without floating point.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosstile/checked.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

inline std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> small, large;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::size_t euler_phi(std::size_t n) {
    std::size_t result = n;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Dense polynomial with integer coefficients, lowest degree first.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    /// x^n - 1
    static IntegerPolynomial x_pow_minus_one(std::size_t n) {
        std::vector<std::int64_t> c(n + 1, 0);
        c[0] = -1;
        c[n] = 1;
        return IntegerPolynomial(std::move(c));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const std::int64_t> coefficients() const { return coeffs_; }
    std::int64_t operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::int64_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

    /// Remainder and quotient of division by a monic divisor; exact over Z.
    struct DivMod;
    DivMod divmod_monic(const IntegerPolynomial& divisor) const;

    /// Remainder of division by a monic divisor, without forming the quotient.
    IntegerPolynomial remainder_monic(const IntegerPolynomial& divisor) const {
        if (divisor.is_zero() || divisor.leading() != 1)
            throw std::invalid_argument("crosstile: divisor must be monic");
        std::vector<std::int64_t> rem = coeffs_;
        const std::size_t dd = static_cast<std::size_t>(divisor.degree());
        for (std::size_t i = rem.size(); i-- > dd;) {
            std::int64_t c = rem[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dd; ++j)
                rem[i - dd + j] = checked_sub(rem[i - dd + j], checked_mul(c, divisor.coeffs_[j]));
        }
        if (rem.size() > dd) rem.resize(dd);
        return IntegerPolynomial(std::move(rem));
    }

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            std::int64_t c = coeffs_[i];
            if (c == 0) continue;
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            std::int64_t a = c < 0 ? -c : c;
            if (a != 1 || i == 0) s += std::to_string(a);
            if (i >= 1) s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    std::vector<std::int64_t> coeffs_;

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
};

struct IntegerPolynomial::DivMod {
    IntegerPolynomial quotient;
    IntegerPolynomial remainder;
};

inline IntegerPolynomial::DivMod IntegerPolynomial::divmod_monic(const IntegerPolynomial& divisor) const {
    if (divisor.is_zero() || divisor.leading() != 1) throw std::invalid_argument("crosstile: divisor must be monic");
    const long dd = divisor.degree();
    if (degree() < dd) return {IntegerPolynomial(), *this};
    std::vector<std::int64_t> rem = coeffs_;
    std::vector<std::int64_t> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
    for (long i = degree(); i >= dd; --i) {
        std::int64_t c = rem[static_cast<std::size_t>(i)];
        quot[static_cast<std::size_t>(i - dd)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= dd; ++j) {
            auto k = static_cast<std::size_t>(i - dd + j);
            rem[k] = checked_sub(rem[k], checked_mul(c, divisor.coeffs_[static_cast<std::size_t>(j)]));
        }
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {IntegerPolynomial(std::move(quot)), IntegerPolynomial(std::move(rem))};
}

namespace detail {

inline IntegerPolynomial compute_cyclotomic(std::size_t d, const auto& lookup) {
    IntegerPolynomial p = IntegerPolynomial::x_pow_minus_one(d);
    for (std::size_t e : divisors(d)) {
        if (e == d) continue;
        auto dm = p.divmod_monic(lookup(e));
        if (!dm.remainder.is_zero()) throw std::logic_error("crosstile: cyclotomic division left a remainder");
        p = std::move(dm.quotient);
    }
    return p;
}

}  // namespace detail

/// Phi_d, memoized for the lifetime of the process. Thread-safe; returned
/// references stay valid.
inline const IntegerPolynomial& cyclotomic(std::size_t d) {
    if (d == 0) throw std::invalid_argument("crosstile: cyclotomic index must be positive");
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<IntegerPolynomial>> cache;
    std::lock_guard lock(mutex);
    auto lookup = [&](std::size_t e) -> const IntegerPolynomial& { return *cache.at(e); };
    for (std::size_t e : divisors(d)) {
        if (cache.count(e) != 0) continue;
        cache.emplace(e, std::make_unique<IntegerPolynomial>(detail::compute_cyclotomic(e, lookup)));
    }
    return *cache.at(d);
}

/// Whether sum_e coeffs[e] * zeta^e == 0 for zeta a primitive `order`-th root
/// of unity. Coefficients beyond `order` wrap around.
inline bool vanishes_at_primitive_root(std::span<const std::int64_t> coeffs, std::size_t order) {
    if (order == 0) throw std::invalid_argument("crosstile: root order must be positive");
    std::vector<std::int64_t> folded(order, 0);
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        if (coeffs[e] != 0) folded[e % order] = checked_add(folded[e % order], coeffs[e]);
    return IntegerPolynomial(std::move(folded)).remainder_monic(cyclotomic(order)).is_zero();
}

/// An element of Z[zeta_M], stored as a weight vector on the exponents
/// 0..M-1 (i.e. modulo x^M - 1). Equality is decided modulo Phi_M, so two
/// different weight vectors may represent the same number.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(std::size_t order) : w_(order) {}
    explicit CyclotomicInteger(WeightedCyclicVector w) : w_(std::move(w)) {}

    static CyclotomicInteger integer(std::size_t order, std::int64_t value) {
        CyclotomicInteger c(order);
        c.w_[0] = value;
        return c;
    }

    /// zeta_M^k
    static CyclotomicInteger root(std::size_t order, std::int64_t k) {
        return CyclotomicInteger(WeightedCyclicVector::delta(order, k));
    }

    std::size_t order() const { return w_.modulus(); }
    const WeightedCyclicVector& weights() const { return w_; }

    bool is_zero() const { return vanishes_at_primitive_root(w_.weights(), order()); }

    /// Re-express in Z[zeta_{M'}] for a multiple M' of M.
    CyclotomicInteger lift(std::size_t new_order) const {
        if (new_order % order() != 0) throw std::invalid_argument("crosstile: lift target must be a multiple of the order");
        const std::size_t step = new_order / order();
        WeightedCyclicVector out(new_order);
        for (std::size_t e = 0; e < order(); ++e) out[e * step] = w_[e];
        return CyclotomicInteger(std::move(out));
    }

    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        const double two_pi = 2.0 * std::numbers::pi;
        for (std::size_t e = 0; e < order(); ++e)
            if (w_[e] != 0)
                z += static_cast<double>(w_[e]) * std::polar(1.0, two_pi * static_cast<double>(e) / static_cast<double>(order()));
        return z;
    }

    friend CyclotomicInteger operator+(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return CyclotomicInteger(a.w_ + b.w_);
    }
    friend CyclotomicInteger operator-(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return CyclotomicInteger(a.w_ - b.w_);
    }
    friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return CyclotomicInteger(convolve(a.w_, b.w_));
    }

    /// Value equality in the field, not representation equality.
    bool equals(const CyclotomicInteger& o) const { return (*this - o).is_zero(); }

private:
    WeightedCyclicVector w_;
};

}  // namespace crosstile
