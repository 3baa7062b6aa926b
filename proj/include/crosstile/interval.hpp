#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosstile/rational.hpp"

namespace crosstile {

/// Half-open interval [lo, hi) with exact endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x < hi; }
    std::string str() const { return "[" + lo.str() + ", " + hi.str() + ")"; }

    friend bool operator==(const Interval&, const Interval&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }
};

/// Finite union of half-open intervals inside a fixed window, kept sorted,
/// disjoint and with touching pieces merged.
class IntervalUnion {
public:
    IntervalUnion() = default;

    explicit IntervalUnion(std::vector<Interval> parts, Interval window = {0, 1}) : window_(window) {
        if (!(window_.lo < window_.hi)) throw std::invalid_argument("crosstile: empty interval window");
        for (const auto& p : parts) {
            if (p.hi < p.lo) throw std::invalid_argument("crosstile: reversed interval " + p.str());
            if (p.lo < window_.lo || window_.hi < p.hi)
                throw std::invalid_argument("crosstile: interval " + p.str() + " leaves the window " + window_.str());
        }
        std::erase_if(parts, [](const Interval& p) { return p.lo == p.hi; });
        std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (const auto& p : parts) {
            if (!parts_.empty() && p.lo <= parts_.back().hi) parts_.back().hi = std::max(parts_.back().hi, p.hi);
            else parts_.push_back(p);
        }
    }

    const std::vector<Interval>& intervals() const { return parts_; }
    const Interval& window() const { return window_; }
    bool empty() const { return parts_.empty(); }

    Rational measure() const {
        Rational m = 0;
        for (const auto& p : parts_) m += p.length();
        return m;
    }

    bool contains(const Rational& x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const Rational& v, const Interval& p) { return v < p.lo; });
        return it != parts_.begin() && std::prev(it)->contains(x);
    }

    /// lcm of all endpoint denominators (1 when empty).
    std::int64_t common_denominator() const {
        std::int64_t d = 1;
        for (const auto& p : parts_) d = lcm_of_denominators(lcm_of_denominators(d, p.lo), p.hi);
        return d;
    }

    std::string str() const {
        if (parts_.empty()) return "{}";
        std::string s;
        for (const auto& p : parts_) s += (s.empty() ? "" : " u ") + p.str();
        return s;
    }

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    Interval window_{0, 1};
    std::vector<Interval> parts_;
};

}  // namespace crosstile
