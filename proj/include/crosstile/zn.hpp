#pragma once

// Exact arithmetic over the cyclic group Z_N: subsets as bit vectors,
// integer-weighted functions, and cyclic convolution.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosstile/checked.hpp"

namespace crosstile {

inline void require_same_modulus(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string("crosstile: modulus mismatch in ") + what + " (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
}

/// A subset of Z_N stored as a packed bit vector.
///
/// Ordering (`<=>`) is the canonical order used for every deterministic
/// listing in the library: S < T iff the smallest element of the symmetric
/// difference belongs to S. Equivalently, bit vectors compared from index 0
/// with a member ranking before a non-member. For N = 2 this gives
/// {0,1} < {0} < {1} < {}.
class CyclicSet {
public:
    CyclicSet() : CyclicSet(1) {}

    explicit CyclicSet(std::size_t modulus) : modulus_(modulus), words_((modulus + 63) / 64, 0) {
        if (modulus == 0) throw std::invalid_argument("crosstile: modulus must be at least 1");
    }

    /// Members must already lie in [0, N); use from_residues to reduce.
    CyclicSet(std::size_t modulus, std::initializer_list<std::int64_t> members) : CyclicSet(modulus) {
        for (auto m : members) insert(m);
    }

    CyclicSet(std::size_t modulus, std::span<const std::int64_t> members) : CyclicSet(modulus) {
        for (auto m : members) insert(m);
    }

    /// Builds the set of residues mod N of arbitrary integers.
    template <class Range>
    static CyclicSet from_residues(std::size_t modulus, const Range& values) {
        CyclicSet s(modulus);
        for (auto v : values) s.insert(mod_floor(static_cast<std::int64_t>(v), static_cast<std::int64_t>(modulus)));
        return s;
    }

    static CyclicSet full(std::size_t modulus) {
        CyclicSet s(modulus);
        for (std::size_t i = 0; i < modulus; ++i) s.insert(static_cast<std::int64_t>(i));
        return s;
    }

    /// Low N bits of `mask` (N <= 64).
    static CyclicSet from_mask(std::size_t modulus, std::uint64_t mask) {
        if (modulus > 64) throw std::invalid_argument("crosstile: from_mask needs N <= 64");
        CyclicSet s(modulus);
        if (modulus < 64) mask &= (std::uint64_t{1} << modulus) - 1;
        s.words_[0] = mask;
        return s;
    }

    std::uint64_t mask() const {
        if (modulus_ > 64) throw std::invalid_argument("crosstile: mask() needs N <= 64");
        return words_[0];
    }

    std::size_t modulus() const { return modulus_; }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    bool contains(std::int64_t x) const {
        if (x < 0 || static_cast<std::size_t>(x) >= modulus_) return false;
        return (words_[static_cast<std::size_t>(x) / 64] >> (static_cast<std::size_t>(x) % 64)) & 1U;
    }

    void insert(std::int64_t x) {
        check_index(x);
        words_[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(x) % 64);
    }

    void erase(std::int64_t x) {
        check_index(x);
        words_[static_cast<std::size_t>(x) / 64] &= ~(std::uint64_t{1} << (static_cast<std::size_t>(x) % 64));
    }

    /// Members in increasing order.
    std::vector<std::int64_t> members() const {
        std::vector<std::int64_t> out;
        out.reserve(size());
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                out.push_back(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// S + t.
    CyclicSet translate(std::int64_t t) const {
        CyclicSet out(modulus_);
        const auto n = static_cast<std::int64_t>(modulus_);
        for (auto m : members()) out.insert(mod_floor(m + t, n));
        return out;
    }

    /// u * S, the image under multiplication by u.
    CyclicSet scale(std::int64_t u) const {
        CyclicSet out(modulus_);
        const auto n = static_cast<std::int64_t>(modulus_);
        for (auto m : members()) out.insert(mod_floor(static_cast<std::int64_t>((static_cast<__int128>(m) * u) % n), n));
        return out;
    }

    CyclicSet complement() const {
        CyclicSet out = full(modulus_);
        for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~words_[w];
        return out;
    }

    friend CyclicSet operator|(const CyclicSet& a, const CyclicSet& b) {
        require_same_modulus(a.modulus_, b.modulus_, "set union");
        CyclicSet out = a;
        for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] |= b.words_[w];
        return out;
    }

    friend CyclicSet operator&(const CyclicSet& a, const CyclicSet& b) {
        require_same_modulus(a.modulus_, b.modulus_, "set intersection");
        CyclicSet out = a;
        for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= b.words_[w];
        return out;
    }

    friend bool operator==(const CyclicSet& a, const CyclicSet& b) {
        return a.modulus_ == b.modulus_ && a.words_ == b.words_;
    }

    friend std::strong_ordering operator<=>(const CyclicSet& a, const CyclicSet& b) {
        if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            std::uint64_t diff = a.words_[w] ^ b.words_[w];
            if (diff == 0) continue;
            std::uint64_t low = diff & (~diff + 1);
            return (a.words_[w] & low) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (auto m : members()) {
            if (!first) s += ",";
            s += std::to_string(m);
            first = false;
        }
        return s + "}";
    }

    friend std::ostream& operator<<(std::ostream& os, const CyclicSet& s) { return os << s.str(); }

private:
    std::size_t modulus_;
    std::vector<std::uint64_t> words_;

    void check_index(std::int64_t x) const {
        if (x < 0 || static_cast<std::size_t>(x) >= modulus_)
            throw std::out_of_range("crosstile: element " + std::to_string(x) + " outside Z_" + std::to_string(modulus_));
    }
};

/// An integer-valued function on Z_N.
class WeightedCyclicVector {
public:
    WeightedCyclicVector() : WeightedCyclicVector(1) {}

    explicit WeightedCyclicVector(std::size_t modulus) : weights_(modulus, 0) {
        if (modulus == 0) throw std::invalid_argument("crosstile: modulus must be at least 1");
    }

    explicit WeightedCyclicVector(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw std::invalid_argument("crosstile: modulus must be at least 1");
    }

    /// Indicator function of a set; weights in {0, 1}.
    explicit WeightedCyclicVector(const CyclicSet& s) : weights_(s.modulus(), 0) {
        for (auto m : s.members()) weights_[static_cast<std::size_t>(m)] = 1;
    }

    static WeightedCyclicVector delta(std::size_t modulus, std::int64_t at = 0) {
        WeightedCyclicVector v(modulus);
        v.weights_[static_cast<std::size_t>(mod_floor(at, static_cast<std::int64_t>(modulus)))] = 1;
        return v;
    }

    static WeightedCyclicVector constant(std::size_t modulus, std::int64_t value) {
        return WeightedCyclicVector(std::vector<std::int64_t>(modulus, value));
    }

    std::size_t modulus() const { return weights_.size(); }
    std::int64_t operator[](std::size_t i) const { return weights_[i]; }
    std::int64_t& operator[](std::size_t i) { return weights_[i]; }
    std::span<const std::int64_t> weights() const { return weights_; }

    std::int64_t sum() const {
        std::int64_t s = 0;
        for (auto w : weights_) s = checked_add(s, w);
        return s;
    }

    bool is_constant(std::int64_t value) const {
        return std::all_of(weights_.begin(), weights_.end(), [value](std::int64_t w) { return w == value; });
    }

    bool is_zero() const { return is_constant(0); }

    WeightedCyclicVector translate(std::int64_t t) const {
        const auto n = static_cast<std::int64_t>(modulus());
        WeightedCyclicVector out(modulus());
        for (std::size_t i = 0; i < weights_.size(); ++i)
            out.weights_[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) + t, n))] = weights_[i];
        return out;
    }

    WeightedCyclicVector operator-() const {
        WeightedCyclicVector out(modulus());
        for (std::size_t i = 0; i < weights_.size(); ++i) out.weights_[i] = checked_sub(0, weights_[i]);
        return out;
    }

    friend WeightedCyclicVector operator+(const WeightedCyclicVector& a, const WeightedCyclicVector& b) {
        require_same_modulus(a.modulus(), b.modulus(), "vector addition");
        WeightedCyclicVector out(a.modulus());
        for (std::size_t i = 0; i < a.weights_.size(); ++i) out.weights_[i] = checked_add(a.weights_[i], b.weights_[i]);
        return out;
    }

    friend WeightedCyclicVector operator-(const WeightedCyclicVector& a, const WeightedCyclicVector& b) {
        require_same_modulus(a.modulus(), b.modulus(), "vector subtraction");
        WeightedCyclicVector out(a.modulus());
        for (std::size_t i = 0; i < a.weights_.size(); ++i) out.weights_[i] = checked_sub(a.weights_[i], b.weights_[i]);
        return out;
    }

    friend bool operator==(const WeightedCyclicVector&, const WeightedCyclicVector&) = default;

private:
    std::vector<std::int64_t> weights_;
};

/// Cyclic convolution: result[t] = sum_s u[s] * v[t - s mod N].
inline WeightedCyclicVector convolve(const WeightedCyclicVector& u, const WeightedCyclicVector& v) {
    require_same_modulus(u.modulus(), v.modulus(), "convolve");
    const std::size_t n = u.modulus();
    WeightedCyclicVector out(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (u[s] == 0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            if (v[r] == 0) continue;
            std::size_t t = s + r;
            if (t >= n) t -= n;
            out[t] = checked_add(out[t], checked_mul(u[s], v[r]));
        }
    }
    return out;
}

/// Convolution of two indicator functions (the multiplicity of each t in A + X).
inline WeightedCyclicVector convolve(const CyclicSet& a, const CyclicSet& x) {
    require_same_modulus(a.modulus(), x.modulus(), "convolve");
    const std::size_t n = a.modulus();
    WeightedCyclicVector out(n);
    const auto xs = x.members();
    for (auto s : a.members()) {
        for (auto r : xs) {
            std::size_t t = static_cast<std::size_t>(s + r);
            if (t >= n) t -= n;
            out[t] += 1;
        }
    }
    return out;
}

}  // namespace crosstile
