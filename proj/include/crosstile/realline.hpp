#pragma once

// Multiplicative tilings of R handled in log coordinates.
//
// Omega = exp(w+) u -exp(w-) and A = exp(a+) u -exp(a-) tile R
// multiplicatively exactly when, for almost every x,
//
//     1 = a+ * w+ (x) + a- * w- (x) = a- * w+ (x) + a+ * w- (x).
//
// After scaling, a+- = Z + (1/L) alpha+- with alpha+- subsets of Z_L and w+-
// live in [0, 1). All verification is exact on the grid (1/(L M)) Z, where M
// is the least refinement making every interval endpoint a grid point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosstile/cross.hpp"
#include "crosstile/interval.hpp"
#include "crosstile/rational.hpp"
#include "crosstile/report.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

/// period * Z + {offsets}, every offset of the form alpha / L (times the period).
class PeriodicTranslateSet {
public:
    PeriodicTranslateSet() = default;

    PeriodicTranslateSet(std::int64_t l, std::vector<Rational> offsets, Rational period = 1)
        : l_(l), period_(period), offsets_(std::move(offsets)) {
        if (l_ < 1) throw std::invalid_argument("crosstile: L must be positive");
        if (period_.sign() <= 0) throw std::invalid_argument("crosstile: period must be positive");
        std::sort(offsets_.begin(), offsets_.end());
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            const Rational& o = offsets_[i];
            if (o.sign() < 0 || !(o < period_))
                throw std::invalid_argument("crosstile: offset " + o.str() + " outside [0, period)");
            if (!(o / period_ * Rational(l_)).is_integer())
                throw std::invalid_argument("crosstile: offset " + o.str() + " is not a multiple of period/L");
            if (i > 0 && offsets_[i - 1] == o) throw std::invalid_argument("crosstile: repeated offset " + o.str());
        }
    }

    /// Z + (1/L) alpha.
    static PeriodicTranslateSet from_residues(const CyclicSet& alpha) {
        std::vector<Rational> offsets;
        const auto l = static_cast<std::int64_t>(alpha.modulus());
        for (auto a : alpha.members()) offsets.emplace_back(a, l);
        return {l, std::move(offsets)};
    }

    std::int64_t l() const { return l_; }
    const Rational& period() const { return period_; }
    const std::vector<Rational>& offsets() const { return offsets_; }
    std::size_t size() const { return offsets_.size(); }

    /// alpha as a subset of Z_L.
    CyclicSet residues() const {
        CyclicSet s(static_cast<std::size_t>(l_));
        for (const auto& o : offsets_) {
            const Rational k = o / period_ * Rational(l_);
            if (!k.is_integer()) throw std::invalid_argument("crosstile: offset not of the form alpha/L");
            s.insert(k.num());
        }
        return s;
    }

    friend bool operator==(const PeriodicTranslateSet&, const PeriodicTranslateSet&) = default;

private:
    std::int64_t l_ = 1;
    Rational period_ = 1;
    std::vector<Rational> offsets_;
};

class MultTilingInstance {
public:
    MultTilingInstance() = default;

    MultTilingInstance(std::int64_t l, IntervalUnion omega_plus, IntervalUnion omega_minus, PeriodicTranslateSet a_plus,
                       PeriodicTranslateSet a_minus)
        : l_(l),
          omega_plus_(std::move(omega_plus)),
          omega_minus_(std::move(omega_minus)),
          a_plus_(std::move(a_plus)),
          a_minus_(std::move(a_minus)) {
        if (l_ < 1) throw std::invalid_argument("crosstile: L must be positive");
        const Interval unit{0, 1};
        if (omega_plus_.window() != unit || omega_minus_.window() != unit)
            throw std::invalid_argument("crosstile: omega+- must live in the window [0, 1)");
        for (const auto* a : {&a_plus_, &a_minus_}) {
            if (a->period() != Rational(1)) throw std::invalid_argument("crosstile: a+- must have period 1");
            if (a->l() != l_ && !a->offsets().empty()) {
                // re-express over the instance's L; rejects offsets not of the form alpha/L
                PeriodicTranslateSet tmp(l_, a->offsets());
                (void)tmp;
            }
        }
        a_plus_ = PeriodicTranslateSet(l_, a_plus_.offsets());
        a_minus_ = PeriodicTranslateSet(l_, a_minus_.offsets());
        const std::int64_t d = checked_lcm(omega_plus_.common_denominator(), omega_minus_.common_denominator());
        refinement_ = checked_lcm(l_, d) / l_;
    }

    std::int64_t l() const { return l_; }
    /// M: endpoints lie in (1/(L M)) Z.
    std::int64_t refinement() const { return refinement_; }
    std::int64_t cell_count() const { return checked_mul(l_, refinement_); }
    const IntervalUnion& omega_plus() const { return omega_plus_; }
    const IntervalUnion& omega_minus() const { return omega_minus_; }
    const PeriodicTranslateSet& a_plus() const { return a_plus_; }
    const PeriodicTranslateSet& a_minus() const { return a_minus_; }

    Interval cell(std::int64_t k) const { return {Rational(k, cell_count()), Rational(k + 1, cell_count())}; }

    /// Indicator of a union on the cells of the grid.
    WeightedCyclicVector cell_indicator(const IntervalUnion& u) const {
        const auto c = cell_count();
        WeightedCyclicVector v(static_cast<std::size_t>(c));
        for (const auto& iv : u.intervals()) {
            const Rational lo = iv.lo * Rational(c), hi = iv.hi * Rational(c);
            for (std::int64_t k = lo.num(); k < hi.num(); ++k) v[static_cast<std::size_t>(k)] = 1;
        }
        return v;
    }

    /// Unit masses at the offsets, on the cells of the grid.
    WeightedCyclicVector cell_masses(const PeriodicTranslateSet& a) const {
        WeightedCyclicVector v(static_cast<std::size_t>(cell_count()));
        for (auto alpha : a.residues().members()) v[static_cast<std::size_t>(alpha * refinement_)] += 1;
        return v;
    }

    friend bool operator==(const MultTilingInstance&, const MultTilingInstance&) = default;

private:
    std::int64_t l_ = 1;
    std::int64_t refinement_ = 1;
    IntervalUnion omega_plus_, omega_minus_;
    PeriodicTranslateSet a_plus_, a_minus_;
};

namespace realline_detail {

/// Runs of grid cells where `values` differs from `level`, as intervals.
inline TilingReport<Interval> cells_report(const MultTilingInstance& inst, const WeightedCyclicVector& values,
                                           std::int64_t level, std::size_t cap) {
    std::vector<Violation<Interval>> runs;
    for (std::size_t k = 0; k < values.modulus(); ++k) {
        if (values[k] == level) continue;
        const Interval c = inst.cell(static_cast<std::int64_t>(k));
        if (!runs.empty() && runs.back().where.hi == c.lo && runs.back().multiplicity == values[k]) runs.back().where.hi = c.hi;
        else runs.push_back({c, values[k]});
    }
    TilingReport<Interval> r;
    r.violation_count = runs.size();
    if (runs.size() > cap) runs.resize(cap);
    r.violations = std::move(runs);
    r.is_tiling = r.violation_count == 0;
    if (r.is_tiling) r.level = level;
    return r;
}

}  // namespace realline_detail

/// Both defining identities, evaluated exactly over one period.
inline CrossReport<Interval> verify_mult_tiling(const MultTilingInstance& inst, std::size_t cap = kDefaultViolationCap) {
    const auto wp = inst.cell_indicator(inst.omega_plus());
    const auto wm = inst.cell_indicator(inst.omega_minus());
    const auto ap = inst.cell_masses(inst.a_plus());
    const auto am = inst.cell_masses(inst.a_minus());
    return {realline_detail::cells_report(inst, convolve(ap, wp) + convolve(am, wm), 1, cap),
            realline_detail::cells_report(inst, convolve(am, wp) + convolve(ap, wm), 1, cap)};
}

struct SumDiffResult {
    TilingReport<Interval> sum;   // (w+ + w-) * (a+ + a-) == 2
    TilingReport<Interval> diff;  // (w+ - w-) * (a+ - a-) == 0

    bool sum_ok() const { return sum.is_tiling; }
    bool diff_ok() const { return diff.is_tiling; }
};

inline SumDiffResult sum_diff_check(const MultTilingInstance& inst, std::size_t cap = kDefaultViolationCap) {
    const auto wp = inst.cell_indicator(inst.omega_plus());
    const auto wm = inst.cell_indicator(inst.omega_minus());
    const auto ap = inst.cell_masses(inst.a_plus());
    const auto am = inst.cell_masses(inst.a_minus());
    return {realline_detail::cells_report(inst, convolve(wp + wm, ap + am), 2, cap),
            realline_detail::cells_report(inst, convolve(wp - wm, ap - am), 0, cap)};
}

// ---------------------------------------------------------------------------
// Per-coset reduction: on each orbit C_x = x + (1/L) Z_L the two identities
// become the cross tiling (b+_x, b-_x; alpha+, alpha-) of Z_L.

struct CellData {
    Interval cell;  // sub-interval of [0, 1/L)
    CyclicSet b_plus;
    CyclicSet b_minus;

    friend bool operator==(const CellData&, const CellData&) = default;
};

/// A cell whose data fails the per-coset cross tiling.
class CellTilingError : public std::invalid_argument {
public:
    CellTilingError(std::size_t index, const std::string& what) : std::invalid_argument(what), index_(index) {}
    std::size_t cell_index() const { return index_; }

private:
    std::size_t index_;
};

struct CycleReduction {
    std::int64_t l = 1;
    CyclicSet alpha_plus;
    CyclicSet alpha_minus;
    std::vector<CellData> cells;

    friend bool operator==(const CycleReduction&, const CycleReduction&) = default;
};

/// Merges neighbouring cells that carry identical data.
inline std::vector<CellData> coarsen(const std::vector<CellData>& cells) {
    std::vector<CellData> out;
    for (const auto& c : cells) {
        if (!out.empty() && out.back().cell.hi == c.cell.lo && out.back().b_plus == c.b_plus && out.back().b_minus == c.b_minus)
            out.back().cell.hi = c.cell.hi;
        else out.push_back(c);
    }
    return out;
}

/// w+- = union over cells x of (x + (1/L) b+-_x), a+- = Z + (1/L) alpha+-.
/// Every cell must satisfy the cross tiling with (A, B, X, Y) =
/// (b+, b-, alpha+, alpha-); the first failing cell is named in the error.
inline MultTilingInstance construct_from_cross(std::int64_t l, const std::vector<CellData>& cells,
                                               const CyclicSet& alpha_plus, const CyclicSet& alpha_minus) {
    if (l < 1) throw std::invalid_argument("crosstile: L must be positive");
    const auto n = static_cast<std::size_t>(l);
    require_same_modulus(alpha_plus.modulus(), n, "construct_from_cross alpha+");
    require_same_modulus(alpha_minus.modulus(), n, "construct_from_cross alpha-");
    if (cells.empty()) throw std::invalid_argument("crosstile: no cells given");
    const Rational width(1, l);
    Rational at = 0;
    std::vector<Interval> plus, minus;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const std::string name = "cell " + std::to_string(i) + " " + c.cell.str();
        if (c.cell.lo != at || !(c.cell.lo < c.cell.hi))
            throw std::invalid_argument("crosstile: " + name + " does not continue a partition of [0, 1/L)");
        require_same_modulus(c.b_plus.modulus(), n, "construct_from_cross b+");
        require_same_modulus(c.b_minus.modulus(), n, "construct_from_cross b-");
        if (!verify_cross(CrossTilingInstance(c.b_plus, c.b_minus, alpha_plus, alpha_minus), 0).verified())
            throw CellTilingError(i, "crosstile: " + name + " fails the per-coset cross tiling");
        for (auto k : c.b_plus.members()) plus.push_back({c.cell.lo + Rational(k, l), c.cell.hi + Rational(k, l)});
        for (auto k : c.b_minus.members()) minus.push_back({c.cell.lo + Rational(k, l), c.cell.hi + Rational(k, l)});
        at = c.cell.hi;
    }
    if (at != width) throw std::invalid_argument("crosstile: cells do not cover [0, 1/L)");
    return {l, IntervalUnion(std::move(plus)), IntervalUnion(std::move(minus)), PeriodicTranslateSet::from_residues(alpha_plus),
            PeriodicTranslateSet::from_residues(alpha_minus)};
}

/// b+-_x = {k in Z_L : x + k/L in w+-} on each grid cell of [0, 1/L).
inline CycleReduction reduce_to_cycles(const MultTilingInstance& inst) {
    const std::int64_t l = inst.l(), m = inst.refinement();
    const auto n = static_cast<std::size_t>(l);
    CycleReduction out{l, inst.a_plus().residues(), inst.a_minus().residues(), {}};
    const auto wp = inst.cell_indicator(inst.omega_plus());
    const auto wm = inst.cell_indicator(inst.omega_minus());
    for (std::int64_t sub = 0; sub < m; ++sub) {
        CellData c{inst.cell(sub), CyclicSet(n), CyclicSet(n)};
        for (std::int64_t k = 0; k < l; ++k) {
            const auto idx = static_cast<std::size_t>(k * m + sub);
            if (wp[idx] != 0) c.b_plus.insert(k);
            if (wm[idx] != 0) c.b_minus.insert(k);
        }
        out.cells.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symmetric tiles: w+ = w- = w, and the union a = a+ u a- (a multiset of
// multiplicity at most 2) may be split arbitrarily into the two sets.

enum class Sign { Plus, Minus };

struct SymmetricSplitReport {
    TilingReport<Interval> union_sum;  // (w + w) * a == 2
    CrossReport<Interval> split;       // verify_mult_tiling of the split instance
    MultTilingInstance instance;
};

inline SymmetricSplitReport symmetric_split_check(const IntervalUnion& omega, const std::vector<Rational>& union_offsets,
                                                  const std::vector<Sign>& split, std::size_t cap = kDefaultViolationCap) {
    if (split.size() != union_offsets.size())
        throw std::invalid_argument("crosstile: split must assign every offset occurrence");
    std::map<Rational, int> multiplicity;
    std::int64_t l = 1;
    std::vector<Rational> plus, minus;
    for (std::size_t i = 0; i < union_offsets.size(); ++i) {
        const Rational o = mod_period(union_offsets[i], 1);
        if (++multiplicity[o] > 2) throw std::invalid_argument("crosstile: offset " + o.str() + " has multiplicity above 2");
        auto& side = split[i] == Sign::Plus ? plus : minus;
        if (std::find(side.begin(), side.end(), o) != side.end())
            throw std::invalid_argument("crosstile: offset " + o.str() + " assigned twice to the same sign; a+- must be sets");
        side.push_back(o);
        l = lcm_of_denominators(l, o);
    }
    MultTilingInstance inst(l, omega, omega, PeriodicTranslateSet(l, plus), PeriodicTranslateSet(l, minus));

    const auto w = inst.cell_indicator(omega);
    WeightedCyclicVector a(static_cast<std::size_t>(inst.cell_count()));
    for (const auto& [o, mult] : multiplicity)
        a[static_cast<std::size_t>((o * Rational(inst.cell_count())).num())] += mult;
    SymmetricSplitReport r{realline_detail::cells_report(inst, convolve(w + w, a), 2, cap), verify_mult_tiling(inst, cap), inst};
    return r;
}

/// Every split respecting the set constraint: offsets of multiplicity 2 get
/// one + and one -, the others are free.
inline std::vector<std::vector<Sign>> admissible_splits(const std::vector<Rational>& union_offsets) {
    const std::size_t m = union_offsets.size();
    if (m > 20) throw std::invalid_argument("crosstile: too many offsets to enumerate splits");
    std::vector<std::vector<Sign>> out;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
        std::vector<Sign> s(m);
        std::map<Rational, int> plus_count, minus_count;
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            s[i] = ((bits >> i) & 1U) != 0 ? Sign::Minus : Sign::Plus;
            const Rational o = mod_period(union_offsets[i], 1);
            ok = ok && ++(s[i] == Sign::Plus ? plus_count : minus_count)[o] <= 1;
        }
        if (ok) out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------

/// An instance before normalization: arbitrary positive period, offsets
/// anywhere, w+- anywhere on R.
struct RawMultTiling {
    Rational period = 1;
    std::vector<Rational> a_plus, a_minus;
    std::vector<Interval> omega_plus, omega_minus;
};

/// Divides by the period, translates a so that its least positive-part
/// offset is 0, and folds w+- into [0, 1).
inline MultTilingInstance normalize_mult_instance(const RawMultTiling& raw) {
    if (raw.period.sign() <= 0) throw std::invalid_argument("crosstile: period must be positive");
    auto scale = [&](const Rational& x) { return x / raw.period; };
    std::vector<Rational> ap, am;
    for (const auto& o : raw.a_plus) ap.push_back(mod_period(scale(o), 1));
    for (const auto& o : raw.a_minus) am.push_back(mod_period(scale(o), 1));
    Rational shift = 0;
    if (!ap.empty()) shift = *std::min_element(ap.begin(), ap.end());
    else if (!am.empty()) shift = *std::min_element(am.begin(), am.end());
    std::int64_t l = 1;
    for (auto* v : {&ap, &am})
        for (auto& o : *v) {
            o = mod_period(o - shift, 1);
            l = lcm_of_denominators(l, o);
        }

    auto fold = [&](const std::vector<Interval>& parts) {
        std::vector<Interval> out;
        for (const auto& iv : parts) {
            Rational lo = scale(iv.lo), hi = scale(iv.hi);
            if (hi < lo) throw std::invalid_argument("crosstile: reversed interval " + iv.str());
            if (Rational(1) < hi - lo) throw std::invalid_argument("crosstile: interval longer than a period");
            while (lo < hi) {
                const Rational base(lo.floor());
                const Rational cut = std::min(hi, base + Rational(1));
                out.push_back({lo - base, cut - base});
                lo = cut;
            }
        }
        std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i].lo < out[i - 1].hi) throw std::invalid_argument("crosstile: omega overlaps itself modulo the period");
        return IntervalUnion(std::move(out));
    };
    return {l, fold(raw.omega_plus), fold(raw.omega_minus), PeriodicTranslateSet(l, ap), PeriodicTranslateSet(l, am)};
}

/// Rendering in multiplicative coordinates; exact exponents plus decimals.
inline std::string to_multiplicative(const MultTilingInstance& inst, int precision = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    auto e = [](const Rational& q) { return "e^" + q.str(); };
    os << "Omega+ = exp(omega+):\n";
    if (inst.omega_plus().empty()) os << "  (empty)\n";
    for (const auto& iv : inst.omega_plus().intervals())
        os << "  [" << e(iv.lo) << ", " << e(iv.hi) << ")  ~ [" << std::exp(iv.lo.to_double()) << ", "
           << std::exp(iv.hi.to_double()) << ")\n";
    os << "Omega- = -exp(omega-):\n";
    if (inst.omega_minus().empty()) os << "  (empty)\n";
    for (const auto& iv : inst.omega_minus().intervals())
        os << "  (-" << e(iv.hi) << ", -" << e(iv.lo) << "]  ~ (" << -std::exp(iv.hi.to_double()) << ", "
           << -std::exp(iv.lo.to_double()) << "]\n";
    auto family = [&](const char* name, const char* sign, const PeriodicTranslateSet& a) {
        os << name << " = {" << sign << "e^(n + r) : n in Z, r in {";
        for (std::size_t i = 0; i < a.offsets().size(); ++i) os << (i ? ", " : "") << a.offsets()[i].str();
        os << "}}  (multiplicative period e^1)\n";
        os << "  e^r ~";
        if (a.offsets().empty()) os << " (none)";
        for (const auto& o : a.offsets()) os << " " << std::exp(o.to_double());
        os << "\n";
    };
    family("A+", "", inst.a_plus());
    family("A-", "-", inst.a_minus());
    os << "structure: L = " << inst.l() << ", refinement M = " << inst.refinement() << ", " << inst.cell_count()
       << " cells of width 1/" << inst.cell_count() << "\n";
    return os.str();
}

}  // namespace crosstile
