#pragma once

// Exhaustive enumeration of cross tilings of Z_N.
//
// A cross tiling is a tiling C + Z = Z_N x Z_2 with C = A x {0} u B x {1} and
// Z = X x {0} u Y x {1}. The search fixes one side (the pair with fewer
// candidates), normalizes it by translation, and enumerates every complement
// of the corresponding C in Z_N x Z_2 by covering-point backtracking on
// 64-bit masks. Results are quotiented by the symmetry
// (A, B, X, Y) -> (A+t, B+t, X+s, Y+s) and emitted in canonical order.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "crosstile/cross.hpp"
#include "crosstile/dft.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;
inline constexpr std::size_t kMaxSearchModulus = 64;

struct SearchConstraints {
    std::optional<std::array<std::size_t, 4>> cardinalities;  // |A|, |B|, |X|, |Y|
    std::optional<CyclicSet> fixed_a;  // pins A; only (X, Y) is quotiented by translation
    std::optional<CyclicSet> fixed_x;  // pins X; only (A, B) is quotiented by translation
    bool nontrivial_only = false;
    bool fourier_prune = false;
    std::size_t jobs = 1;
    std::size_t limit = 0;  // 0 = unlimited
    std::uint64_t budget = kDefaultSearchBudget;
};

class SearchBudgetExceeded : public std::runtime_error {
public:
    SearchBudgetExceeded(std::uint64_t estimate, std::uint64_t budget, const std::string& why)
        : std::runtime_error(why), estimate_(estimate), budget_(budget) {}
    std::uint64_t estimate() const { return estimate_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t estimate_, budget_;
};

namespace search_detail {

using Mask = std::uint64_t;

inline Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline Mask rotate(Mask m, std::size_t t, std::size_t n) {
    if (t == 0) return m;
    return ((m << t) | (m >> (n - t))) & full_mask(n);
}

/// Canonical set order on masks: the lowest differing bit belongs to the smaller set.
inline bool mask_less(Mask a, Mask b) {
    Mask d = a ^ b;
    return d != 0 && (a & (d & (~d + 1))) != 0;
}

inline Mask reverse_bits(Mask m) {
    m = ((m >> 1) & 0x5555555555555555ULL) | ((m & 0x5555555555555555ULL) << 1);
    m = ((m >> 2) & 0x3333333333333333ULL) | ((m & 0x3333333333333333ULL) << 2);
    m = ((m >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((m & 0x0F0F0F0F0F0F0F0FULL) << 4);
    return __builtin_bswap64(m);
}

/// Order-reversing involution: order_key(a) < order_key(b) iff mask_less(a, b).
inline Mask order_key(Mask m) { return ~reverse_bits(m); }

/// Least translate of the pair (s, t) under simultaneous rotation.
inline std::pair<Mask, Mask> canonical_pair(Mask s, Mask t, std::size_t n) {
    std::pair<Mask, Mask> best{s, t};
    for (std::size_t k = 1; k < n; ++k) {
        Mask rs = rotate(s, k, n), rt = rotate(t, k, n);
        if (mask_less(rs, best.first) || (rs == best.first && mask_less(rt, best.second))) best = {rs, rt};
    }
    return best;
}

inline std::uint64_t saturating_binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 4))
        return std::numeric_limits<std::uint64_t>::max() / 4;
    return static_cast<std::uint64_t>(r + 0.5L);
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max() / 4;
    return r;
}

/// All n-bit masks of popcount k; with `with_zero`, only those containing bit 0.
inline std::vector<Mask> masks_with_popcount(std::size_t n, std::size_t k, bool with_zero) {
    std::vector<Mask> out;
    if (with_zero) {
        if (k == 0) return out;
        for (Mask m : masks_with_popcount(n - 1, k - 1, false)) out.push_back((m << 1) | 1);
        return out;
    }
    if (k > n) return out;
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left, Mask cur) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = pos; i + left <= n; ++i) self(self, i + 1, left - 1, cur | (Mask{1} << i));
    };
    rec(rec, 0, k, 0);
    return out;
}

struct Profile {
    std::size_t a, b, x, y;
};

/// One side of the search: candidate pairs for the fixed side and the
/// layer counts required of the complement.
struct SidePlan {
    bool outer_is_ab;
    std::vector<Mask> first;   // A (or X) candidates
    std::vector<Mask> second;  // B (or Y) candidates
    std::size_t need0, need1;  // |X|, |Y| (or |A|, |B|) of the complement
    bool pinned;               // outer side fixed by the caller
    bool swap_symmetric;       // both outer sets have the same size
};

/// Complements Z = (z0, z1) of the tile (c0, c1) in Z_n x Z_2 with |z0| =
/// need0 and |z1| = need1.
class GammaComplements {
public:
    GammaComplements(std::size_t n, Mask c0, Mask c1, std::size_t need0, std::size_t need1)
        : n_(n), full_(full_mask(n)), c0_(c0), c1_(c1), need0_(need0), need1_(need1) {
        for (Mask m = c0; m != 0; m &= m - 1) elems_.push_back({static_cast<std::size_t>(std::countr_zero(m)), 0});
        for (Mask m = c1; m != 0; m &= m - 1) elems_.push_back({static_cast<std::size_t>(std::countr_zero(m)), 1});
    }

    template <class Sink>
    void run(Sink&& sink) {
        if (elems_.empty()) return;
        recurse(sink);
    }

private:
    struct Elem {
        std::size_t pos;
        unsigned layer;
    };
    std::size_t n_;
    Mask full_, c0_, c1_;
    std::size_t need0_, need1_;
    std::vector<Elem> elems_;
    Mask cov0_ = 0, cov1_ = 0, z0_ = 0, z1_ = 0;
    std::size_t cnt0_ = 0, cnt1_ = 0;

    template <class Sink>
    void recurse(Sink& sink) {
        std::size_t point;
        unsigned layer;
        if (cov0_ != full_) {
            point = static_cast<std::size_t>(std::countr_zero(~cov0_ & full_));
            layer = 0;
        } else if (cov1_ != full_) {
            point = static_cast<std::size_t>(std::countr_zero(~cov1_ & full_));
            layer = 1;
        } else {
            if (cnt0_ == need0_ && cnt1_ == need1_) sink(z0_, z1_);
            return;
        }
        for (const Elem& e : elems_) {
            const unsigned shift_layer = layer ^ e.layer;
            if (shift_layer == 0 ? cnt0_ == need0_ : cnt1_ == need1_) continue;
            const std::size_t t = (point + n_ - e.pos) % n_;
            const Mask r0 = rotate(c0_, t, n_), r1 = rotate(c1_, t, n_);
            const Mask t0 = shift_layer == 0 ? r0 : r1;
            const Mask t1 = shift_layer == 0 ? r1 : r0;
            if ((t0 & cov0_) != 0 || (t1 & cov1_) != 0) continue;
            cov0_ |= t0;
            cov1_ |= t1;
            if (shift_layer == 0) {
                z0_ |= Mask{1} << t;
                ++cnt0_;
            } else {
                z1_ |= Mask{1} << t;
                ++cnt1_;
            }
            recurse(sink);
            if (shift_layer == 0) {
                z0_ &= ~(Mask{1} << t);
                --cnt0_;
            } else {
                z1_ &= ~(Mask{1} << t);
                --cnt1_;
            }
            cov0_ &= ~t0;
            cov1_ &= ~t1;
        }
    }
};

inline std::vector<Profile> profiles(std::size_t n, const SearchConstraints& c) {
    std::vector<Profile> out;
    if (c.cardinalities) {
        const auto& k = *c.cardinalities;
        out.push_back({k[0], k[1], k[2], k[3]});
    } else {
        for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = 0; b <= n; ++b)
                for (std::size_t x = 0; x <= n; ++x)
                    for (std::size_t y = 0; y <= n; ++y) out.push_back({a, b, x, y});
    }
    std::erase_if(out, [&](const Profile& p) {
        if (p.a > n || p.b > n || p.x > n || p.y > n) return true;
        if (c.fixed_a && c.fixed_a->size() != p.a) return true;
        if (c.fixed_x && c.fixed_x->size() != p.x) return true;
        if ((p.a + p.b) * (p.x + p.y) != 2 * n) return true;
        return !(p.a == p.b || p.x == p.y);
    });
    return out;
}

/// Number of outer candidates without materializing them.
inline std::uint64_t side_cost(std::size_t n, std::size_t p, std::size_t q, const std::optional<CyclicSet>& pinned) {
    if (pinned) return saturating_binomial(n, q);
    if (p > 0) return saturating_mul(saturating_binomial(n - 1, p - 1), saturating_binomial(n, q));
    return q > 0 ? saturating_binomial(n - 1, q - 1) : 0;
}

inline bool choose_ab_side(std::size_t n, const Profile& p, const SearchConstraints& c) {
    if (c.fixed_a) return true;
    if (c.fixed_x) return false;
    return side_cost(n, p.a, p.b, std::nullopt) <= side_cost(n, p.x, p.y, std::nullopt);
}

inline SidePlan plan_side(std::size_t n, const Profile& p, const SearchConstraints& c) {
    SidePlan plan{};
    plan.outer_is_ab = choose_ab_side(n, p, c);
    const auto& pin = plan.outer_is_ab ? c.fixed_a : c.fixed_x;
    const std::size_t s = plan.outer_is_ab ? p.a : p.x;
    const std::size_t t = plan.outer_is_ab ? p.b : p.y;
    plan.need0 = plan.outer_is_ab ? p.x : p.a;
    plan.need1 = plan.outer_is_ab ? p.y : p.b;
    plan.pinned = pin.has_value();
    plan.swap_symmetric = s == t;
    if (pin) {
        plan.first = {pin->mask()};
        plan.second = masks_with_popcount(n, t, false);
    } else if (s > 0) {
        plan.first = masks_with_popcount(n, s, true);
        plan.second = masks_with_popcount(n, t, false);
    } else {
        plan.first = {0};
        plan.second = masks_with_popcount(n, t, t > 0);
    }
    return plan;
}

/// Cheap necessary conditions on the outer pair from the Fourier side.
/// The complement's sum vector must vanish wherever (S + T)^ does not, and
/// its difference vector wherever (S - T)^ does not.
inline bool fourier_admissible(std::size_t n, Mask s, Mask t, std::size_t need0, std::size_t need1) {
    const WeightedCyclicVector ws(CyclicSet::from_mask(n, s)), wt(CyclicSet::from_mask(n, t));
    const CyclicSet zero_sum = dft_zero_set(ws + wt);
    bool sum_has_nonzero_zero = false;
    for (std::size_t k = 1; k < n; ++k) sum_has_nonzero_zero |= zero_sum.contains(static_cast<std::int64_t>(k));
    // complement sum vector forced constant
    if (!sum_has_nonzero_zero && (need0 + need1) % n != 0) return false;
    // complement difference vector forced to vanish
    if (dft_zero_set(ws - wt).empty() && need0 != need1) return false;
    return true;
}

}  // namespace search_detail

/// Total outer candidates the search would visit; used for the budget check.
inline std::uint64_t estimate_search_cost(std::size_t n, const SearchConstraints& c) {
    using namespace search_detail;
    if (n > kMaxSearchModulus) return std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    for (const auto& p : profiles(n, c)) {
        const bool ab = choose_ab_side(n, p, c);
        const std::uint64_t cost = ab ? side_cost(n, p.a, p.b, c.fixed_a) : side_cost(n, p.x, p.y, c.fixed_x);
        total = std::min(total + cost, std::numeric_limits<std::uint64_t>::max() / 4);
    }
    return total;
}

/// Every cross tiling of Z_N meeting the constraints, one per orbit of the
/// translation symmetry, in canonical order. Refuses (never truncates) when
/// the estimated work exceeds the budget.
inline std::vector<CrossTilingInstance> search_cross(std::size_t n, const SearchConstraints& c = {}) {
    using namespace search_detail;
    if (n < 2) throw std::invalid_argument("crosstile: search needs N >= 2");
    if (n > kMaxSearchModulus)
        throw SearchBudgetExceeded(std::numeric_limits<std::uint64_t>::max(), c.budget,
                                   "N = " + std::to_string(n) + " exceeds the exhaustive search limit of " +
                                       std::to_string(kMaxSearchModulus));
    if (c.fixed_a) require_same_modulus(c.fixed_a->modulus(), n, "search fixed A");
    if (c.fixed_x) require_same_modulus(c.fixed_x->modulus(), n, "search fixed X");
    const std::uint64_t estimate = estimate_search_cost(n, c);
    if (estimate > c.budget)
        throw SearchBudgetExceeded(estimate, c.budget,
                                   "search over Z_" + std::to_string(n) + " needs about " + std::to_string(estimate) +
                                       " candidate pairs, budget is " + std::to_string(c.budget));

    using Quad = std::array<Mask, 4>;
    std::vector<Quad> found;
    for (const auto& p : profiles(n, c)) {
        const SidePlan plan = plan_side(n, p, c);
        const std::size_t total = plan.first.size() * plan.second.size();
        const std::size_t jobs = std::max<std::size_t>(1, std::min(c.jobs, total));
        std::vector<std::vector<Quad>> per_worker(jobs);
        const bool inner_pinned = plan.outer_is_ab ? c.fixed_x.has_value() : c.fixed_a.has_value();

        auto work = [&](std::size_t worker) {
            auto& out = per_worker[worker];
            for (std::size_t idx = worker; idx < total; idx += jobs) {
                const Mask s = plan.first[idx / plan.second.size()];
                const Mask t = plan.second[idx % plan.second.size()];
                if (s == 0 && t == 0) continue;
                // one outer pair per translation orbit; with equal sizes, (t, s) is the
                // tile shifted by (0, 1) in Z_n x Z_2 and has the same complements
                bool mirrored = false;
                if (!plan.pinned) {
                    if (canonical_pair(s, t, n) != std::pair{s, t}) continue;
                    if (plan.swap_symmetric) {
                        const auto m = canonical_pair(t, s, n);
                        if (m != std::pair{s, t}) {
                            if (mask_less(m.first, s) || (m.first == s && mask_less(m.second, t))) continue;
                            mirrored = true;
                        }
                    }
                }
                if (c.fourier_prune && !fourier_admissible(n, s, t, plan.need0, plan.need1)) continue;
                GammaComplements gc(n, s, t, plan.need0, plan.need1);
                gc.run([&](Mask z0, Mask z1) {
                    // the canonical complement has 0 in its first nonempty set
                    if (!inner_pinned && ((plan.need0 > 0 ? z0 : z1) & 1) == 0) return;
                    if (plan.outer_is_ab) out.push_back({s, t, z0, z1});
                    else out.push_back({z0, z1, s, t});
                    if (!mirrored) return;
                    if (plan.outer_is_ab) out.push_back({t, s, z0, z1});
                    else out.push_back({z0, z1, t, s});
                });
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(work, w);
            for (auto& th : threads) th.join();
        }
        for (auto& v : per_worker) found.insert(found.end(), v.begin(), v.end());
    }

    // order_key turns the canonical set order into plain unsigned order
    for (auto& q : found) {
        if (!c.fixed_a) std::tie(q[0], q[1]) = canonical_pair(q[0], q[1], n);
        if (!c.fixed_x) std::tie(q[2], q[3]) = canonical_pair(q[2], q[3], n);
        for (auto& m : q) m = order_key(m);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<CrossTilingInstance> unique;
    unique.reserve(found.size());
    for (auto q : found) {
        for (auto& m : q) m = order_key(m);
        if (c.fixed_x && CyclicSet::from_mask(n, q[2]) != *c.fixed_x) continue;
        if (c.fixed_a && CyclicSet::from_mask(n, q[0]) != *c.fixed_a) continue;
        unique.emplace_back(CyclicSet::from_mask(n, q[0]), CyclicSet::from_mask(n, q[1]), CyclicSet::from_mask(n, q[2]),
                            CyclicSet::from_mask(n, q[3]));
    }

    std::vector<CrossTilingInstance> out;
    for (const auto& inst : unique) {
        if (c.nontrivial_only && classify(inst).kind != Triviality::NonTrivial) continue;
        out.push_back(inst);
        if (c.limit != 0 && out.size() >= c.limit) break;
    }
    return out;
}

}  // namespace crosstile
