#pragma once

// Exact points on the circle R / zeta Z with formal irrational parts,
// rational equivalence classes, rational-frequency exponential polynomials,
// and class-by-class verification of periodic weighted tilings.
//
// An irrational number is never approximated: a point is q + sum c_k th_k
// with q and c_k rational and th_k formal symbols assumed linearly
// independent over Q together with 1. Two points differ by a rational
// multiple of the period exactly when their symbol parts coincide.

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crosstile/cyclotomic.hpp"
#include "crosstile/interval.hpp"
#include "crosstile/rational.hpp"
#include "crosstile/report.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

using SymbolPart = std::map<int, Rational>;  // symbol index -> nonzero coefficient

class TorusPoint {
public:
    TorusPoint() = default;

    TorusPoint(Rational q, SymbolPart symbols = {}, Rational period = 1) : period_(period), symbols_(std::move(symbols)) {
        if (period_.sign() <= 0) throw std::invalid_argument("crosstile: torus period must be positive");
        rational_ = mod_period(q, period_);
        std::erase_if(symbols_, [](const auto& kv) { return kv.second.is_zero(); });
    }

    const Rational& rational_part() const { return rational_; }
    const SymbolPart& symbols() const { return symbols_; }
    const Rational& period() const { return period_; }
    bool is_rational() const { return symbols_.empty(); }

    /// Whether the difference lies in zeta * Q.
    bool rationally_equivalent(const TorusPoint& o) const {
        require_period(o);
        return symbols_ == o.symbols_;
    }

    friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
        a.require_period(b);
        SymbolPart s = a.symbols_;
        for (const auto& [k, c] : b.symbols_) s[k] += c;
        return {a.rational_ + b.rational_, std::move(s), a.period_};
    }

    TorusPoint operator-() const {
        SymbolPart s;
        for (const auto& [k, c] : symbols_) s[k] = -c;
        return {-rational_, std::move(s), period_};
    }

    friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) { return a + (-b); }

    /// The same point expressed on R / (zeta / factor) Z after dividing coordinates by `factor`.
    TorusPoint scaled_down(const Rational& factor) const {
        SymbolPart s;
        for (const auto& [k, c] : symbols_) s[k] = c / factor;
        return {rational_ / factor, std::move(s), period_ / factor};
    }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

    /// Symbol part first (rational points come first), then rational part.
    friend bool operator<(const TorusPoint& a, const TorusPoint& b) {
        if (a.symbols_ != b.symbols_) return a.symbols_ < b.symbols_;
        return a.rational_ < b.rational_;
    }

    /// "q" or "q + c*th<k>" with terms in increasing symbol index.
    std::string str() const {
        std::string s = rational_.str();
        for (const auto& [k, c] : symbols_) {
            s += c.sign() < 0 ? " - " : " + ";
            s += (c.sign() < 0 ? -c : c).str() + "*th" + std::to_string(k);
        }
        return s;
    }

    /// Grammar:  point := term (('+' | '-') term)*
    ///           term  := rational | rational '*' 'th' index | 'th' index
    /// Whitespace is ignored; rationals are "p" or "p/q".
    static TorusPoint parse(std::string_view text, Rational period = 1) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) throw std::invalid_argument("crosstile: empty torus point");
        Rational q = 0;
        SymbolPart sym;
        std::size_t pos = 0;
        while (pos < s.size()) {
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (pos != 0) {
                throw std::invalid_argument("crosstile: malformed torus point '" + std::string(text) + "'");
            }
            std::size_t end = s.find_first_of("+-", pos);
            if (end == std::string::npos) end = s.size();
            std::string_view term(s.data() + pos, end - pos);
            if (term.empty()) throw std::invalid_argument("crosstile: malformed torus point '" + std::string(text) + "'");
            auto th = term.find("th");
            if (th == std::string_view::npos) {
                q += Rational::parse(term) * Rational(sign);
            } else {
                Rational coeff = 1;
                if (th != 0) {
                    if (term[th - 1] != '*') throw std::invalid_argument("crosstile: expected '*' before symbol in '" + std::string(text) + "'");
                    coeff = Rational::parse(term.substr(0, th - 1));
                }
                std::string_view idx = term.substr(th + 2);
                if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                    throw std::invalid_argument("crosstile: bad symbol index in '" + std::string(text) + "'");
                sym[std::stoi(std::string(idx))] += coeff * Rational(sign);
            }
            pos = end;
        }
        return {q, std::move(sym), period};
    }

private:
    Rational period_ = 1;
    Rational rational_ = 0;
    SymbolPart symbols_;

    void require_period(const TorusPoint& o) const {
        if (period_ != o.period_) throw std::invalid_argument("crosstile: torus points with different periods");
    }
};

/// Partition into rational equivalence classes. Members of each class are
/// sorted; classes are ordered by their least member.
inline std::vector<std::vector<TorusPoint>> rational_classes(std::span<const TorusPoint> points) {
    if (!points.empty())
        for (const auto& p : points)
            if (p.period() != points.front().period())
                throw std::invalid_argument("crosstile: rational_classes needs a common period");
    std::map<SymbolPart, std::vector<TorusPoint>> by_symbols;
    for (const auto& p : points) by_symbols[p.symbols()].push_back(p);
    std::vector<std::vector<TorusPoint>> out;
    for (auto& [key, members] : by_symbols) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

// ---------------------------------------------------------------------------

struct WeightedAtom {
    TorusPoint at;
    std::int64_t weight;

    friend bool operator==(const WeightedAtom&, const WeightedAtom&) = default;
};

/// tau = sum_s c_s delta_{x_s} on R / zeta Z, standing for the periodic
/// measure delta_{zeta Z} * tau.
class WeightedPeriodicPointSet {
public:
    WeightedPeriodicPointSet() = default;

    WeightedPeriodicPointSet(Rational period, std::vector<WeightedAtom> atoms) : period_(period), atoms_(std::move(atoms)) {
        if (period_.sign() <= 0) throw std::invalid_argument("crosstile: period must be positive");
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].at.period() != period_) throw std::invalid_argument("crosstile: atom period differs from set period");
            if (atoms_[i].weight == 0) throw std::invalid_argument("crosstile: atom weights must be nonzero");
            for (std::size_t j = 0; j < i; ++j)
                if (atoms_[j].at == atoms_[i].at)
                    throw std::invalid_argument("crosstile: repeated atom position " + atoms_[i].at.str());
        }
    }

    const Rational& period() const { return period_; }
    const std::vector<WeightedAtom>& atoms() const { return atoms_; }

    std::int64_t total_weight() const {
        std::int64_t s = 0;
        for (const auto& a : atoms_) s = checked_add(s, a.weight);
        return s;
    }

    bool all_rational() const {
        return std::all_of(atoms_.begin(), atoms_.end(), [](const WeightedAtom& a) { return a.at.is_rational(); });
    }

    friend bool operator==(const WeightedPeriodicPointSet&, const WeightedPeriodicPointSet&) = default;

private:
    Rational period_ = 1;
    std::vector<WeightedAtom> atoms_;
};

/// Splits tau into its rational equivalence classes; atoms keep their weights.
inline std::vector<WeightedPeriodicPointSet> split_by_classes(const WeightedPeriodicPointSet& tau) {
    std::vector<TorusPoint> positions;
    for (const auto& a : tau.atoms()) positions.push_back(a.at);
    std::vector<WeightedPeriodicPointSet> out;
    for (const auto& cls : rational_classes(positions)) {
        std::vector<WeightedAtom> atoms;
        for (const auto& p : cls)
            for (const auto& a : tau.atoms())
                if (a.at == p) atoms.push_back(a);
        out.emplace_back(tau.period(), std::move(atoms));
    }
    return out;
}

/// Rotates a single rational class by minus its common symbol part, leaving
/// only rational atoms. Tiling verdicts are unchanged because rotating tau
/// rotates F * tau.
inline WeightedPeriodicPointSet eliminate_symbols(const WeightedPeriodicPointSet& cls) {
    if (cls.atoms().empty()) return cls;
    const SymbolPart& common = cls.atoms().front().at.symbols();
    std::vector<WeightedAtom> atoms;
    for (const auto& a : cls.atoms()) {
        if (a.at.symbols() != common) throw std::invalid_argument("crosstile: atoms are not in one rational class");
        atoms.push_back({TorusPoint(a.at.rational_part(), {}, cls.period()), a.weight});
    }
    return {cls.period(), std::move(atoms)};
}

// ---------------------------------------------------------------------------
// Exponential polynomials f(n) = sum c_l e^{2 pi i l n}

struct GaussianRational {
    Rational re;
    Rational im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

class ExponentialPolynomial {
public:
    struct Term {
        TorusPoint frequency;  // on R / Z
        GaussianRational coefficient;
    };

    ExponentialPolynomial() = default;
    explicit ExponentialPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].frequency.period() != Rational(1))
                throw std::invalid_argument("crosstile: frequencies live on R / Z");
            for (std::size_t j = 0; j < i; ++j)
                if (terms_[j].frequency == terms_[i].frequency)
                    throw std::invalid_argument("crosstile: repeated frequency " + terms_[i].frequency.str());
        }
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool all_rational() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.frequency.is_rational(); });
    }

    /// Common period on Z of a rational-frequency polynomial.
    std::int64_t period() const {
        std::int64_t p = 1;
        for (const auto& t : terms_) p = lcm_of_denominators(p, t.frequency.rational_part());
        return p;
    }

    /// Floating-point f(n) for rational frequencies (diagnostic).
    std::complex<double> evaluate(std::int64_t n) const {
        std::complex<double> acc = 0;
        for (const auto& t : terms_) {
            if (!t.frequency.is_rational()) throw std::domain_error("crosstile: cannot evaluate a symbolic frequency");
            const Rational phase = mod_period(t.frequency.rational_part() * Rational(n), 1);
            acc += std::complex<double>(t.coefficient.re.to_double(), t.coefficient.im.to_double()) *
                   std::polar(1.0, 2.0 * std::numbers::pi * phase.to_double());
        }
        return acc;
    }

private:
    std::vector<Term> terms_;
};

struct PeriodicZeroSet {
    std::int64_t period;  // P
    CyclicSet zeros;      // subset of Z_P
};

/// Exact integer zero set of a rational-frequency exponential polynomial.
///
/// f is P-periodic on Z, so the zero set is a subset of Z_P. After clearing
/// denominators each f(n) is an integer combination of M-th roots of unity
/// (M = P, or lcm(P, 4) when an imaginary coefficient brings in i = zeta_4),
/// and vanishes iff Phi_M divides its generating polynomial.
inline PeriodicZeroSet zero_set_rational(const ExponentialPolynomial& f) {
    if (!f.all_rational())
        throw std::domain_error("crosstile: zero sets are only computed for rational frequencies");
    const std::int64_t p = f.period();
    std::int64_t den = 1;
    bool complex_coeffs = false;
    for (const auto& t : f.terms()) {
        den = lcm_of_denominators(lcm_of_denominators(den, t.coefficient.re), t.coefficient.im);
        complex_coeffs |= !t.coefficient.im.is_zero();
    }
    const std::int64_t m = complex_coeffs ? checked_lcm(p, 4) : p;
    PeriodicZeroSet out{p, CyclicSet(static_cast<std::size_t>(p))};
    for (std::int64_t n = 0; n < p; ++n) {
        std::vector<std::int64_t> w(static_cast<std::size_t>(m), 0);
        for (const auto& t : f.terms()) {
            const Rational& freq = t.frequency.rational_part();
            // freq = num/den_f, exponent of zeta_M is num * (M / den_f) * n
            const std::int64_t e = mod_floor(
                static_cast<std::int64_t>((static_cast<__int128>(freq.num()) * (m / freq.den()) % m * n) % m), m);
            const auto re = checked_narrow(static_cast<__int128>(t.coefficient.re.num()) * (den / t.coefficient.re.den()));
            const auto im = checked_narrow(static_cast<__int128>(t.coefficient.im.num()) * (den / t.coefficient.im.den()));
            w[static_cast<std::size_t>(e)] = checked_add(w[static_cast<std::size_t>(e)], re);
            if (im != 0) {
                const auto ei = static_cast<std::size_t>((e + m / 4) % m);
                w[ei] = checked_add(w[ei], im);
            }
        }
        if (vanishes_at_primitive_root(w, static_cast<std::size_t>(m))) out.zeros.insert(n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vandermonde witness: sum_j z_j^k x_j = 0 for k = 1..r forces x = 0 when the
// z_j are distinct.

/// e^{2 pi i k / order}
struct RootOfUnity {
    std::int64_t k;
    std::size_t order;
};

struct VandermondeWitness {
    std::size_t field_order;                 // all quantities live in Z[zeta_M]
    CyclotomicInteger determinant;           // det [z_j^k], permutation expansion (r <= 8)
    CyclotomicInteger determinant_product;   // prod z_j * prod_{i<j} (z_j - z_i)
    bool forced_zero;                        // determinant != 0
    std::vector<CyclotomicInteger> residuals;  // sum_j z_j^k x_j, k = 1..r
    bool residuals_vanish;
    bool values_vanish;
};

inline VandermondeWitness vandermonde_criterion(std::span<const RootOfUnity> z, std::span<const CyclotomicInteger> x) {
    const std::size_t r = z.size();
    if (x.size() != r) throw std::invalid_argument("crosstile: need one value per base point");
    std::size_t m = 1;
    for (const auto& zj : z) {
        if (zj.order == 0) throw std::invalid_argument("crosstile: root order must be positive");
        m = static_cast<std::size_t>(checked_lcm(static_cast<std::int64_t>(m), static_cast<std::int64_t>(zj.order)));
    }
    for (const auto& xj : x)
        m = static_cast<std::size_t>(checked_lcm(static_cast<std::int64_t>(m), static_cast<std::int64_t>(xj.order())));
    const auto mm = static_cast<std::int64_t>(m);

    std::vector<std::int64_t> exps;  // z_j = zeta_M^{exps[j]}
    for (const auto& zj : z) exps.push_back(mod_floor(zj.k * (mm / static_cast<std::int64_t>(zj.order)), mm));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (exps[i] == exps[j]) throw std::invalid_argument("crosstile: base points must be pairwise distinct");

    std::vector<CyclotomicInteger> xs;
    for (const auto& xj : x) xs.push_back(xj.lift(m));

    VandermondeWitness w{m, CyclotomicInteger(m), CyclotomicInteger::integer(m, 1), false, {}, true, true};

    for (std::size_t j = 0; j < r; ++j) {
        w.determinant_product = w.determinant_product * CyclotomicInteger::root(m, exps[j]);
        for (std::size_t i = 0; i < j; ++i)
            w.determinant_product =
                w.determinant_product * (CyclotomicInteger::root(m, exps[j]) - CyclotomicInteger::root(m, exps[i]));
    }
    if (r <= 8) {
        // Each permutation term is +-zeta^(sum of exponents), so the expansion
        // accumulates directly into exponent weights.
        WeightedCyclicVector det(m);
        std::vector<std::size_t> perm(r);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int sign = 1;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j)
                    if (perm[i] > perm[j]) sign = -sign;
            std::int64_t e = 0;
            for (std::size_t row = 0; row < r; ++row)
                e = mod_floor(e + static_cast<std::int64_t>(row + 1) * exps[perm[row]], mm);
            det[static_cast<std::size_t>(e)] += sign;
        } while (std::next_permutation(perm.begin(), perm.end()));
        w.determinant = CyclotomicInteger(std::move(det));
    } else {
        w.determinant = w.determinant_product;
    }
    w.forced_zero = !w.determinant.is_zero();

    for (std::size_t k = 1; k <= r; ++k) {
        CyclotomicInteger s(m);
        for (std::size_t j = 0; j < r; ++j)
            s = s + CyclotomicInteger::root(m, mod_floor(static_cast<std::int64_t>(k) * exps[j], mm)) * xs[j];
        w.residuals_vanish = w.residuals_vanish && s.is_zero();
        w.residuals.push_back(std::move(s));
    }
    w.values_vanish = std::all_of(xs.begin(), xs.end(), [](const CyclotomicInteger& v) { return v.is_zero(); });
    return w;
}

struct NumericVandermonde {
    std::complex<double> determinant;
    std::vector<std::complex<double>> residuals;  // sum_j z_j^k x_j, k = 1..r
    std::vector<std::complex<double>> recovered;  // x solved back from the residuals
    bool forced_zero;
};

/// Floating-point counterpart for base points that are not roots of unity.
/// Diagnostic only.
inline NumericVandermonde vandermonde_numeric(std::span<const std::complex<double>> z,
                                              std::span<const std::complex<double>> x) {
    const std::size_t r = z.size();
    if (x.size() != r) throw std::invalid_argument("crosstile: need one value per base point");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(z[i] - z[j]) < 1e-12) throw std::invalid_argument("crosstile: base points must be pairwise distinct");
    std::vector<std::vector<std::complex<double>>> a(r, std::vector<std::complex<double>>(r + 1));
    NumericVandermonde out{1.0, {}, {}, false};
    for (std::size_t k = 0; k < r; ++k) {
        std::complex<double> s = 0;
        for (std::size_t j = 0; j < r; ++j) {
            a[k][j] = std::pow(z[j], static_cast<double>(k + 1));
            s += a[k][j] * x[j];
        }
        a[k][r] = s;
        out.residuals.push_back(s);
    }
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < r; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            out.determinant = -out.determinant;
        }
        out.determinant *= a[col][col];
        if (std::abs(a[col][col]) < 1e-300) break;
        for (std::size_t row = col + 1; row < r; ++row) {
            auto f = a[row][col] / a[col][col];
            for (std::size_t c = col; c <= r; ++c) a[row][c] -= f * a[col][c];
        }
    }
    out.forced_zero = std::abs(out.determinant) > 1e-12;
    if (out.forced_zero) {
        out.recovered.assign(r, 0);
        for (std::size_t i = r; i-- > 0;) {
            std::complex<double> s = a[i][r];
            for (std::size_t c = i + 1; c < r; ++c) s -= a[i][c] * out.recovered[c];
            out.recovered[i] = s / a[i][i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Piecewise-constant functions on R / Z and torus tilings.

/// Integer-valued step function on [0, 1), extended periodically.
class StepFunction {
public:
    struct Piece {
        Rational start;
        std::int64_t value;
        friend bool operator==(const Piece&, const Piece&) = default;
    };

    StepFunction() : pieces_{{0, 0}} {}

    /// Starts must be strictly increasing in [0, 1) and begin at 0.
    explicit StepFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty() || pieces_.front().start != Rational(0))
            throw std::invalid_argument("crosstile: step function must start at 0");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].start < Rational(0) || !(pieces_[i].start < Rational(1)))
                throw std::invalid_argument("crosstile: step function breakpoints must lie in [0, 1)");
            if (i > 0 && !(pieces_[i - 1].start < pieces_[i].start))
                throw std::invalid_argument("crosstile: step function breakpoints must increase");
        }
        merge();
    }

    /// sum of value * indicator(interval); intervals inside [0, 1).
    static StepFunction from_intervals(const std::vector<std::pair<Interval, std::int64_t>>& parts) {
        std::vector<Rational> cuts = {0};
        for (const auto& [iv, v] : parts) {
            if (iv.lo < Rational(0) || Rational(1) < iv.hi || iv.hi < iv.lo)
                throw std::invalid_argument("crosstile: tile interval " + iv.str() + " not inside [0, 1)");
            cuts.push_back(iv.lo);
            if (iv.hi < Rational(1)) cuts.push_back(iv.hi);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Piece> pieces;
        for (const auto& c : cuts) {
            std::int64_t v = 0;
            for (const auto& [iv, w] : parts)
                if (iv.contains(c)) v = checked_add(v, w);
            pieces.push_back({c, v});
        }
        return StepFunction(std::move(pieces));
    }

    static StepFunction indicator(const IntervalUnion& u) {
        std::vector<std::pair<Interval, std::int64_t>> parts;
        for (const auto& iv : u.intervals()) parts.push_back({iv, 1});
        return from_intervals(parts);
    }

    const std::vector<Piece>& pieces() const { return pieces_; }

    std::int64_t operator()(const Rational& x) const {
        const Rational t = mod_period(x, 1);
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Rational& v, const Piece& p) { return v < p.start; });
        return std::prev(it)->value;
    }

    Rational integral() const {
        Rational s = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Rational end = i + 1 < pieces_.size() ? pieces_[i + 1].start : Rational(1);
            s += (end - pieces_[i].start) * Rational(pieces_[i].value);
        }
        return s;
    }

    /// x -> F(x - r)
    StepFunction rotated(const Rational& r) const {
        std::vector<Rational> cuts = {0};
        for (const auto& p : pieces_) cuts.push_back(mod_period(p.start + r, 1));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Piece> out;
        for (const auto& c : cuts) out.push_back({c, (*this)(c - r)});
        return StepFunction(std::move(out));
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    std::vector<Piece> pieces_;

    void merge() {
        std::vector<Piece> out;
        for (const auto& p : pieces_)
            if (out.empty() || out.back().value != p.value) out.push_back(p);
        pieces_ = std::move(out);
    }
};

/// Checks sum_l c_l F(x - l) == const for almost every x on R / Z.
///
/// The sum is piecewise constant on the common refinement of the translated
/// breakpoints and is evaluated exactly on every cell. A constant sum must
/// equal (sum of weights) * integral(F); cells with any other value are
/// reported, adjacent ones merged.
inline TilingReport<Interval> verify_torus_tiling(const StepFunction& f, const WeightedPeriodicPointSet& tau,
                                                  std::size_t cap = kDefaultViolationCap) {
    if (tau.period() != Rational(1)) throw std::invalid_argument("crosstile: torus tiling needs period 1");
    if (!tau.all_rational())
        throw std::domain_error("crosstile: verify_torus_tiling needs rational atoms (eliminate symbols per class first)");
    std::vector<Rational> cuts = {0};
    for (const auto& a : tau.atoms())
        for (const auto& p : f.pieces()) cuts.push_back(mod_period(p.start + a.at.rational_part(), 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const Rational expected = Rational(tau.total_weight()) * f.integral();
    std::vector<Violation<Interval>> runs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Rational end = i + 1 < cuts.size() ? cuts[i + 1] : Rational(1);
        std::int64_t v = 0;
        for (const auto& a : tau.atoms()) v = checked_add(v, checked_mul(a.weight, f(cuts[i] - a.at.rational_part())));
        if (Rational(v) == expected) continue;
        if (!runs.empty() && runs.back().where.hi == cuts[i] && runs.back().multiplicity == v) runs.back().where.hi = end;
        else runs.push_back({{cuts[i], end}, v});
    }
    TilingReport<Interval> report;
    report.violation_count = runs.size();
    if (runs.size() > cap) runs.resize(cap);
    report.violations = std::move(runs);
    report.is_tiling = report.violation_count == 0;
    if (report.is_tiling) report.level = expected.num();
    return report;
}

struct ClassLevel {
    WeightedPeriodicPointSet members;   // as given
    WeightedPeriodicPointSet reduced;   // symbols eliminated, rescaled to period 1
    TilingReport<Interval> report;
};

struct TorusDecomposition {
    std::vector<ClassLevel> classes;
    std::optional<std::int64_t> total_level;  // sum of class levels when every class tiles
};

/// Class-by-class verification of F * tau for a tile on R / zeta Z.
///
/// Breakpoints of different classes sit at rationally independent offsets,
/// so their jumps cannot cancel: the full sum is a.e. constant exactly when
/// each class sum is, and the constant is the sum of the class levels.
inline TorusDecomposition decompose_torus_tiling(const StepFunction& tile_on_unit, const WeightedPeriodicPointSet& tau,
                                                 std::size_t cap = kDefaultViolationCap) {
    TorusDecomposition out;
    bool all_tile = true;
    std::int64_t total = 0;
    for (auto& cls : split_by_classes(tau)) {
        WeightedPeriodicPointSet reduced = eliminate_symbols(cls);
        if (reduced.period() != Rational(1)) {
            std::vector<WeightedAtom> atoms;
            for (const auto& a : reduced.atoms()) atoms.push_back({a.at.scaled_down(reduced.period()), a.weight});
            reduced = WeightedPeriodicPointSet(1, std::move(atoms));
        }
        auto report = verify_torus_tiling(tile_on_unit, reduced, cap);
        if (report.is_tiling) total = checked_add(total, *report.level);
        else all_tile = false;
        out.classes.push_back({std::move(cls), std::move(reduced), std::move(report)});
    }
    if (all_tile) out.total_level = total;
    return out;
}

}  // namespace crosstile
