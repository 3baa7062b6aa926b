#pragma once

// Cross tilings of Z_N: the pair (A, B) cross tiles with complements (X, Y)
// when
//
//     Z_N = (A + X) u (B + Y)   and   Z_N = (A + Y) u (B + X)
//
// are both level-1 tilings. Four independent verifiers are provided (direct,
// sum/difference, Fourier, product-group embedding) and must always agree.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "crosstile/dft.hpp"
#include "crosstile/report.hpp"
#include "crosstile/tiling.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

class CrossTilingInstance {
public:
    CrossTilingInstance() = default;

    CrossTilingInstance(CyclicSet a, CyclicSet b, CyclicSet x, CyclicSet y)
        : a_(std::move(a)), b_(std::move(b)), x_(std::move(x)), y_(std::move(y)) {
        require_same_modulus(a_.modulus(), b_.modulus(), "cross instance (A, B)");
        require_same_modulus(a_.modulus(), x_.modulus(), "cross instance (A, X)");
        require_same_modulus(a_.modulus(), y_.modulus(), "cross instance (A, Y)");
    }

    std::size_t modulus() const { return a_.modulus(); }
    const CyclicSet& a() const { return a_; }
    const CyclicSet& b() const { return b_; }
    const CyclicSet& x() const { return x_; }
    const CyclicSet& y() const { return y_; }

    friend bool operator==(const CrossTilingInstance&, const CrossTilingInstance&) = default;
    friend std::strong_ordering operator<=>(const CrossTilingInstance& l, const CrossTilingInstance& r) {
        if (auto c = l.a_ <=> r.a_; c != 0) return c;
        if (auto c = l.b_ <=> r.b_; c != 0) return c;
        if (auto c = l.x_ <=> r.x_; c != 0) return c;
        return l.y_ <=> r.y_;
    }

private:
    CyclicSet a_, b_, x_, y_;
};

/// Two reports, one per defining identity; the instance verifies iff both pass.
template <class Point>
struct CrossReport {
    TilingReport<Point> first;
    TilingReport<Point> second;

    bool verified() const { return first.is_tiling && second.is_tiling; }
};

/// A*X + B*Y == 1 and A*Y + B*X == 1.
inline CrossReport<std::int64_t> verify_cross(const CrossTilingInstance& inst, std::size_t cap = kDefaultViolationCap) {
    const auto first = convolve(inst.a(), inst.x()) + convolve(inst.b(), inst.y());
    const auto second = convolve(inst.a(), inst.y()) + convolve(inst.b(), inst.x());
    return {check_constant(first, 1, cap), check_constant(second, 1, cap)};
}

/// (A+B)*(X+Y) == 2 and (A-B)*(X-Y) == 0.
inline CrossReport<std::int64_t> verify_cross_equiv(const CrossTilingInstance& inst,
                                                    std::size_t cap = kDefaultViolationCap) {
    const WeightedCyclicVector a(inst.a()), b(inst.b()), x(inst.x()), y(inst.y());
    return {check_constant(convolve(a + b, x + y), 2, cap), check_constant(convolve(a - b, x - y), 0, cap)};
}

/// |A| == |B| or |X| == |Y|; necessary for every cross tiling.
inline bool cardinality_condition(const CrossTilingInstance& inst) {
    return inst.a().size() == inst.b().size() || inst.x().size() == inst.y().size();
}

/// Fourier form of the cross-tiling conditions, with every equality of
/// character sums decided exactly:
///   (|A|+|B|)(|X|+|Y|) = 2N,
///   k != 0:  A^ + B^ != 0  =>  X^ + Y^ = 0,
///   all k:   A^ - B^ != 0  =>  X^ - Y^ = 0.
inline bool fourier_cross_check(const CrossTilingInstance& inst) {
    if (!cardinality_condition(inst)) return false;
    const std::size_t n = inst.modulus();
    if ((inst.a().size() + inst.b().size()) * (inst.x().size() + inst.y().size()) != 2 * n) return false;
    const WeightedCyclicVector a(inst.a()), b(inst.b()), x(inst.x()), y(inst.y());
    const CyclicSet zero_sum_ab = dft_zero_set(a + b);
    const CyclicSet zero_sum_xy = dft_zero_set(x + y);
    const CyclicSet zero_diff_ab = dft_zero_set(a - b);
    const CyclicSet zero_diff_xy = dft_zero_set(x - y);
    for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<std::int64_t>(k);
        if (k != 0 && !zero_sum_ab.contains(kk) && !zero_sum_xy.contains(kk)) return false;
        if (!zero_diff_ab.contains(kk) && !zero_diff_xy.contains(kk)) return false;
    }
    return true;
}

enum class Triviality { TrivialABOverX, TrivialXYOverA, NonTrivial, NotACrossTiling };

inline const char* to_string(Triviality t) {
    switch (t) {
        case Triviality::TrivialABOverX: return "TrivialABOverX";
        case Triviality::TrivialXYOverA: return "TrivialXYOverA";
        case Triviality::NonTrivial: return "NonTrivial";
        case Triviality::NotACrossTiling: return "NotACrossTiling";
    }
    return "?";
}

struct TrivialityVerdict {
    Triviality kind;
    std::string witness;
};

inline TrivialityVerdict classify(const CrossTilingInstance& inst) {
    if (!verify_cross(inst, 0).verified()) return {Triviality::NotACrossTiling, "a defining identity fails"};
    if (inst.x() == inst.y() && verify_tiling(inst.a() | inst.b(), inst.x(), 1, 0).is_tiling)
        return {Triviality::TrivialABOverX, "X == Y and (A u B) + X tiles Z_N"};
    if (inst.a() == inst.b() && verify_tiling(inst.x() | inst.y(), inst.a(), 1, 0).is_tiling)
        return {Triviality::TrivialXYOverA, "A == B and (X u Y) + A tiles Z_N"};
    return {Triviality::NonTrivial, "neither triviality clause holds"};
}

/// Least t with S + t == T.
inline std::optional<std::int64_t> translate_equivalent(const CyclicSet& s, const CyclicSet& t) {
    require_same_modulus(s.modulus(), t.modulus(), "translate_equivalent");
    if (s.size() != t.size()) return std::nullopt;
    for (std::size_t shift = 0; shift < s.modulus(); ++shift)
        if (s.translate(static_cast<std::int64_t>(shift)) == t) return static_cast<std::int64_t>(shift);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Product-group embedding: Gamma = Z_N x Z_2.

struct ProductPoint {
    std::int64_t element;
    int layer;

    friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// Subset of Z_N x Z_2 given by its two layers.
struct ProductSet {
    CyclicSet layer0;
    CyclicSet layer1;

    std::size_t size() const { return layer0.size() + layer1.size(); }

    std::vector<ProductPoint> points() const {
        std::vector<ProductPoint> out;
        for (auto m : layer0.members()) out.push_back({m, 0});
        for (auto m : layer1.members()) out.push_back({m, 1});
        return out;
    }
};

struct ProductEmbedding {
    ProductSet tile;        // C = A x {0} u B x {1}
    ProductSet complement;  // Z = X x {0} u Y x {1}
    TilingReport<ProductPoint> report;
};

/// Builds C and Z and checks C + Z = Gamma directly in the product group.
inline ProductEmbedding embed_product(const CrossTilingInstance& inst, std::size_t cap = kDefaultViolationCap) {
    const std::size_t n = inst.modulus();
    const auto nn = static_cast<std::int64_t>(n);
    ProductEmbedding e{{inst.a(), inst.b()}, {inst.x(), inst.y()}, {}};
    std::vector<std::int64_t> count(2 * n, 0);
    const auto zs = e.complement.points();
    for (const auto& c : e.tile.points())
        for (const auto& z : zs) ++count[static_cast<std::size_t>(mod_floor(c.element + z.element, nn)) * 2 + ((c.layer + z.layer) & 1)];
    for (std::size_t i = 0; i < 2 * n; ++i) {
        if (count[i] == 1) continue;
        ++e.report.violation_count;
        if (e.report.violations.size() < cap)
            e.report.violations.push_back({{static_cast<std::int64_t>(i / 2), static_cast<int>(i % 2)}, count[i]});
    }
    e.report.is_tiling = e.report.violation_count == 0;
    if (e.report.is_tiling) e.report.level = 1;
    return e;
}

// ---------------------------------------------------------------------------
// Explicit examples built in product coordinates Z_m x Z_n (gcd(m, n) = 1)
// and mapped to Z_{mn} by x -> (x mod m, x mod n).

/// The unique x in [0, mn) with x = u (mod m) and x = v (mod n).
inline std::int64_t crt_combine(std::int64_t m, std::int64_t n, std::int64_t u, std::int64_t v) {
    if (m <= 0 || n <= 0 || std::gcd(m, n) != 1) throw std::invalid_argument("crosstile: CRT needs coprime positive moduli");
    // m * inv(m mod n) == 1 (mod n)
    std::int64_t old_r = mod_floor(m, n), r = n, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    const std::int64_t inv = mod_floor(old_s, n);
    u = mod_floor(u, m);
    v = mod_floor(v, n);
    const std::int64_t k = mod_floor(static_cast<std::int64_t>((static_cast<__int128>(v - u) * inv) % n), n);
    return u + m * k;
}

struct CrossExample {
    CrossTilingInstance instance;
    std::array<std::size_t, 2> factorization;  // product coordinates used to build it
    bool degenerate = false;
    std::string note;
};

/// The family on Z_{2ab} = Z_{ab} x Z_2 (a, b odd):
///   A = {0..a-1} x {0},          B = ({0,1} u {a+2..2a-1}) x {0},
///   X = {0,a,..,(b-1)a} x {0},   Y = {0,a,..,(b-1)a} x {1}.
/// When the listed elements of B collide modulo ab, or B does not end up
/// with a elements (a = 1), the instance is returned flagged degenerate.
inline CrossExample gen_example_first(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1 || a % 2 == 0 || b % 2 == 0)
        throw std::invalid_argument("crosstile: example parameters a, b must be odd and positive");
    const std::int64_t m = a * b;
    const auto n = static_cast<std::size_t>(2 * m);
    auto at = [&](std::int64_t u, std::int64_t layer) { return crt_combine(m, 2, u, layer); };

    CyclicSet sa(n), sb(n), sx(n), sy(n);
    for (std::int64_t i = 0; i < a; ++i) sa.insert(at(i, 0));
    std::vector<std::int64_t> b_list = {0, 1};
    for (std::int64_t i = a + 2; i <= 2 * a - 1; ++i) b_list.push_back(i);
    for (auto v : b_list) sb.insert(at(v, 0));
    for (std::int64_t j = 0; j < b; ++j) {
        sx.insert(at(j * a, 0));
        sy.insert(at(j * a, 1));
    }
    CrossExample ex{{sa, sb, sx, sy}, {static_cast<std::size_t>(m), 2}, false, {}};
    if (static_cast<std::int64_t>(sb.size()) != a || static_cast<std::int64_t>(b_list.size()) != a) {
        ex.degenerate = true;
        ex.note = "ranges defining B collide or do not give |B| = a";
    }
    return ex;
}

/// The instance in Z_120 = Z_15 x Z_8 whose four sets are pairwise not
/// translates of each other. Built from F1 = {0,1,2}, F2 = {0,4,5} (both tile
/// Z_15 with {0,3,6,9,12}) inside H = Z_15 x {0,2,4,6}:
///   A = F1 x {0,2},  B = F2 x {0,2},  X = {0,3,6,9,12} x {0,4},
///   Y = ({0} x {2,6} u {3,6,9,12} x {0,4}) + (0,1).
inline CrossExample gen_example_second() {
    constexpr std::int64_t m = 15, k = 8;
    constexpr auto n = static_cast<std::size_t>(m * k);
    auto at = [](std::int64_t u, std::int64_t v) { return crt_combine(m, k, u, v); };
    const std::vector<std::int64_t> f1 = {0, 1, 2}, f2 = {0, 4, 5}, c = {0, 3, 6, 9, 12}, cc = {3, 6, 9, 12};

    CyclicSet sa(n), sb(n), sx(n), sy(n);
    for (auto u : f1)
        for (auto v : {0, 2}) sa.insert(at(u, v));
    for (auto u : f2)
        for (auto v : {0, 2}) sb.insert(at(u, v));
    for (auto u : c)
        for (auto v : {0, 4}) sx.insert(at(u, v));
    for (auto v : {2, 6}) sy.insert(at(0, v + 1));
    for (auto u : cc)
        for (auto v : {0, 4}) sy.insert(at(u, v + 1));
    return {{sa, sb, sx, sy}, {static_cast<std::size_t>(m), static_cast<std::size_t>(k)}, false, {}};
}

}  // namespace crosstile
