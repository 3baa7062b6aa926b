#include <gtest/gtest.h>

#include <random>

#include "crosstile/torus.hpp"
#include "oracles.hpp"

using namespace crosstile;

namespace {

TorusPoint pt(const char* s) { return TorusPoint::parse(s); }

/// sum_l w_l F(x - l) at x, with F given as weighted intervals in [0, 1).
std::int64_t direct_sum(const std::vector<std::pair<Interval, std::int64_t>>& f,
                        const std::vector<std::pair<Rational, std::int64_t>>& atoms, const Rational& x) {
    std::int64_t s = 0;
    for (const auto& [at, w] : atoms) {
        const Rational y = mod_period(x - at, 1);
        for (const auto& [iv, v] : f)
            if (iv.lo <= y && y < iv.hi) s += w * v;
    }
    return s;
}

WeightedPeriodicPointSet rational_tau(const std::vector<std::pair<Rational, std::int64_t>>& atoms) {
    std::vector<WeightedAtom> out;
    for (const auto& [at, w] : atoms) out.push_back({TorusPoint(at), w});
    return {1, out};
}

}  // namespace

TEST(TorusPoint, ParseAndPrint) {
    const auto p = pt("1/3 + 1*th1");
    EXPECT_EQ(p.rational_part(), Rational(1, 3));
    EXPECT_EQ(p.symbols().at(1), Rational(1));
    EXPECT_EQ(p.str(), "1/3 + 1*th1");
    EXPECT_EQ(pt("th2 - 1/2*th1 + 5/4").str(), "1/4 - 1/2*th1 + 1*th2");
    EXPECT_EQ(pt(pt("3/7 - 2*th3").str().c_str()), pt("3/7 - 2*th3"));
    EXPECT_TRUE(pt("1/2 + th1 - th1").is_rational());
    EXPECT_THROW(pt("1/2 +"), std::invalid_argument);
    EXPECT_THROW(pt("2th1"), std::invalid_argument);
    EXPECT_THROW(pt(""), std::invalid_argument);
    EXPECT_THROW(TorusPoint(0, {}, 0), std::invalid_argument);
}

TEST(TorusPoint, Arithmetic) {
    const auto a = pt("1/3 + th1"), b = pt("3/4 + th1");
    EXPECT_TRUE(a.rationally_equivalent(b));
    EXPECT_TRUE((b - a).is_rational());
    EXPECT_EQ((b - a).rational_part(), Rational(5, 12));
    EXPECT_FALSE(a.rationally_equivalent(pt("th2")));
    EXPECT_THROW(a + TorusPoint(0, {}, 2), std::invalid_argument);
    EXPECT_EQ(TorusPoint(Rational(3, 2), {}, 2).scaled_down(2), TorusPoint(Rational(3, 4)));
}

TEST(RationalClasses, Examples) {
    const std::vector<TorusPoint> pts = {pt("0"), pt("1/3"), pt("1/2"), pt("th1"), pt("th1 + 1/4")};
    const auto cls = rational_classes(pts);
    ASSERT_EQ(cls.size(), 2U);
    EXPECT_EQ(cls[0], (std::vector<TorusPoint>{pt("0"), pt("1/3"), pt("1/2")}));
    EXPECT_EQ(cls[1], (std::vector<TorusPoint>{pt("th1"), pt("th1 + 1/4")}));

    const std::vector<TorusPoint> rat = {pt("1/5"), pt("0"), pt("4/5")};
    EXPECT_EQ(rational_classes(rat).size(), 1U);
    const std::vector<TorusPoint> three = {pt("th1"), pt("th2"), pt("th1 + th2")};
    EXPECT_EQ(rational_classes(three).size(), 3U);
    const std::vector<TorusPoint> mixed = {TorusPoint(0), TorusPoint(0, {}, 2)};
    EXPECT_THROW(rational_classes(mixed), std::invalid_argument);
}

TEST(RationalClasses, PartitionProperty) {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<TorusPoint> pts;
        for (int i = 0; i < 12; ++i) {
            SymbolPart s;
            if (rng() % 3) s[static_cast<int>(rng() % 2) + 1] = Rational(static_cast<std::int64_t>(rng() % 3) + 1);
            pts.emplace_back(Rational(static_cast<std::int64_t>(rng() % 12), 12), s);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto cls = rational_classes(pts);
        std::size_t total = 0;
        for (const auto& c : cls) {
            total += c.size();
            for (const auto& p : c)
                for (const auto& q : c) EXPECT_TRUE((p - q).is_rational());
        }
        EXPECT_EQ(total, pts.size());
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j) EXPECT_FALSE((cls[i][0] - cls[j][0]).is_rational());
    }
}

TEST(ZeroSetRational, Examples) {
    using T = ExponentialPolynomial::Term;
    const ExponentialPolynomial alt({T{pt("0"), {1, 0}}, T{pt("1/2"), {1, 0}}});
    const auto z = zero_set_rational(alt);
    EXPECT_EQ(z.period, 2);
    EXPECT_EQ(z.zeros, CyclicSet(2, {1}));

    std::vector<T> geo;
    for (int j = 0; j < 5; ++j) geo.push_back({TorusPoint(Rational(3 * j, 15)), {1, 0}});
    const auto zg = zero_set_rational(ExponentialPolynomial(geo));
    EXPECT_EQ(zg.period, 5);  // frequencies reduce to j/5
    CyclicSet want(5, {1, 2, 3, 4});
    EXPECT_EQ(zg.zeros, want);

    EXPECT_TRUE(zero_set_rational(ExponentialPolynomial({T{pt("2/7"), {3, 0}}})).zeros.empty());
    EXPECT_THROW(zero_set_rational(ExponentialPolynomial({T{pt("th1"), {1, 0}}})), std::domain_error);
    EXPECT_THROW(ExponentialPolynomial({T{pt("1/3"), {1, 0}}, T{pt("1/3"), {2, 0}}}), std::invalid_argument);

    // 1 + i * e^{2 pi i n / 4}: zero when i^{n+1} = -1, that is n = 1 (mod 4)
    const auto zi = zero_set_rational(ExponentialPolynomial({T{pt("0"), {1, 0}}, T{pt("1/4"), {0, 1}}}));
    EXPECT_EQ(zi.zeros, CyclicSet(4, {1}));
}

TEST(ZeroSetRational, AgreesWithFloatingPoint) {
    using T = ExponentialPolynomial::Term;
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> coeff(-3, 3);
    int zeros_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 24);
        std::vector<T> terms;
        std::set<std::int64_t> used;
        const int count = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < count; ++i) {
            const auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
            if (!used.insert(k).second) continue;
            std::int64_t c = coeff(rng);
            if (c == 0) c = 1;
            terms.push_back({TorusPoint(Rational(k, p)), {c, 0}});
        }
        const ExponentialPolynomial f(terms);
        const auto z = zero_set_rational(f);
        for (std::int64_t n = 0; n < z.period; ++n) {
            const double mag = std::abs(f.evaluate(n));
            if (z.zeros.contains(n)) {
                ++zeros_seen;
                EXPECT_LT(mag, 1e-6);
            } else {
                EXPECT_GT(mag, 1e-3);
            }
        }
    }
    EXPECT_GT(zeros_seen, 0);
}

TEST(Vandermonde, Examples) {
    const std::vector<RootOfUnity> one = {{0, 1}};
    const std::vector<CyclotomicInteger> zero1 = {CyclotomicInteger::integer(1, 0)};
    const auto w1 = vandermonde_criterion(one, zero1);
    EXPECT_TRUE(w1.forced_zero);
    EXPECT_TRUE(w1.residuals_vanish);
    EXPECT_TRUE(w1.values_vanish);

    const std::vector<RootOfUnity> two = {{1, 3}, {1, 4}};
    const std::vector<CyclotomicInteger> zero2 = {CyclotomicInteger::integer(1, 0), CyclotomicInteger::integer(1, 0)};
    const auto w2 = vandermonde_criterion(two, zero2);
    EXPECT_EQ(w2.field_order, 12U);
    EXPECT_TRUE(w2.forced_zero);
    EXPECT_TRUE(w2.residuals_vanish);

    const std::vector<RootOfUnity> repeated = {{1, 4}, {2, 8}};
    EXPECT_THROW(vandermonde_criterion(repeated, zero2), std::invalid_argument);
}

TEST(Vandermonde, RandomNonzeroValuesLeaveResidual) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<std::int64_t> w(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t order = 2 + rng() % 10;
        std::set<std::int64_t> ks;
        while (ks.size() < 3 && ks.size() < order) ks.insert(static_cast<std::int64_t>(rng() % order));
        if (ks.size() < 3) continue;
        std::vector<RootOfUnity> z;
        for (auto k : ks) z.push_back({k, order});
        std::vector<CyclotomicInteger> x;
        for (int j = 0; j < 3; ++j) {
            std::int64_t v = w(rng);
            if (v == 0) v = 1;
            x.push_back(CyclotomicInteger::integer(1, v));
        }
        const auto wit = vandermonde_criterion(z, x);
        EXPECT_TRUE(wit.forced_zero);
        EXPECT_TRUE(wit.determinant.equals(wit.determinant_product));
        EXPECT_FALSE(wit.residuals_vanish);
        // residuals against complex evaluation
        for (std::size_t k = 1; k <= 3; ++k) {
            std::complex<double> s = 0;
            std::size_t j = 0;
            for (auto kk : ks) {
                s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((kk * static_cast<std::int64_t>(k)) % static_cast<std::int64_t>(order)) / static_cast<double>(order)) *
                     x[j++].to_complex();
            }
            EXPECT_NEAR(std::abs(s - wit.residuals[k - 1].to_complex()), 0, 1e-9);
        }
        std::vector<std::complex<double>> zc, xc;
        for (auto k : ks) zc.push_back(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order)));
        for (const auto& v : x) xc.push_back(v.to_complex());
        const auto num = vandermonde_numeric(zc, xc);
        EXPECT_TRUE(num.forced_zero);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(num.recovered[j] - xc[j]), 0, 1e-8);
    }
}

TEST(SplitByClasses, Examples) {
    const WeightedPeriodicPointSet single(1, {{pt("0"), 1}, {pt("1/2"), 2}});
    const auto s = split_by_classes(single);
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s[0], single);
    const WeightedPeriodicPointSet two(1, {{pt("0"), 1}, {pt("th1"), 1}});
    const auto t = split_by_classes(two);
    ASSERT_EQ(t.size(), 2U);
    EXPECT_EQ(t[0].atoms().size(), 1U);
    EXPECT_EQ(t[1].atoms().size(), 1U);
    EXPECT_THROW(WeightedPeriodicPointSet(1, {{pt("0"), 1}, {pt("0"), 2}}), std::invalid_argument);
    EXPECT_THROW(WeightedPeriodicPointSet(1, {{pt("0"), 0}}), std::invalid_argument);
}

TEST(SplitByClasses, UnionReproducesInput) {
    const WeightedPeriodicPointSet tau(1, {{pt("0"), 1}, {pt("th1 + 1/3"), -2}, {pt("1/2"), 3}, {pt("th1"), 4}, {pt("th2"), 1}});
    std::multiset<std::string> in, out;
    for (const auto& a : tau.atoms()) in.insert(a.at.str() + "#" + std::to_string(a.weight));
    for (const auto& c : split_by_classes(tau))
        for (const auto& a : c.atoms()) out.insert(a.at.str() + "#" + std::to_string(a.weight));
    EXPECT_EQ(in, out);
}

TEST(StepFunction, Basics) {
    const auto f = StepFunction::from_intervals({{{0, Rational(1, 2)}, 1}, {{Rational(1, 4), 1}, 2}});
    EXPECT_EQ(f(Rational(1, 8)), 1);
    EXPECT_EQ(f(Rational(3, 8)), 3);
    EXPECT_EQ(f(Rational(3, 4)), 2);
    EXPECT_EQ(f(Rational(-1, 8)), 2);
    EXPECT_EQ(f.integral(), Rational(1, 2) + Rational(3, 2));
    EXPECT_EQ(f.rotated(Rational(1, 2))(Rational(5, 8)), 1);
    EXPECT_THROW(StepFunction({{Rational(1, 2), 1}}), std::invalid_argument);
}

TEST(VerifyTorusTiling, Examples) {
    const auto third = StepFunction::indicator(IntervalUnion({{0, Rational(1, 3)}}));
    const auto r = verify_torus_tiling(third, rational_tau({{0, 1}, {Rational(1, 3), 1}, {Rational(2, 3), 1}}));
    EXPECT_TRUE(r.is_tiling);
    EXPECT_EQ(r.level, 1);

    const auto half = StepFunction::indicator(IntervalUnion({{0, Rational(1, 2)}}));
    const auto bad = verify_torus_tiling(half, rational_tau({{0, 1}, {Rational(1, 4), 1}}));
    EXPECT_FALSE(bad.is_tiling);
    bool saw = false;
    for (const auto& v : bad.violations)
        if (v.where == Interval{Rational(1, 4), Rational(1, 2)}) {
            EXPECT_EQ(v.multiplicity, 2);
            saw = true;
        }
    EXPECT_TRUE(saw);

    const auto step = StepFunction::from_intervals({{{0, Rational(1, 3)}, 2}});
    EXPECT_FALSE(verify_torus_tiling(step, rational_tau({{0, 2}})).is_tiling);
    const auto flat = StepFunction::from_intervals({{{0, 1}, 3}});
    const auto fr = verify_torus_tiling(flat, rational_tau({{0, 2}}));
    EXPECT_TRUE(fr.is_tiling);
    EXPECT_EQ(fr.level, 6);

    EXPECT_THROW(verify_torus_tiling(flat, WeightedPeriodicPointSet(1, {{pt("th1"), 1}})), std::domain_error);
}

TEST(VerifyTorusTiling, MatchesMidpointOracleAndRotationInvariance) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 10);
        std::vector<std::pair<Interval, std::int64_t>> f;
        const int pieces = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < pieces; ++i) {
            std::int64_t lo = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d));
            std::int64_t hi = lo + 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d - lo));
            f.push_back({{Rational(lo, d), Rational(hi, d)}, 1 + static_cast<std::int64_t>(rng() % 2)});
        }
        std::vector<std::pair<Rational, std::int64_t>> atoms;
        std::set<std::int64_t> used;
        for (int i = 0; i < 4; ++i) {
            const auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d));
            if (used.insert(k).second) atoms.push_back({Rational(k, d), 1 + static_cast<std::int64_t>(rng() % 2)});
        }
        if (trial % 3 == 0) {
            // a guaranteed tiling: indicator [0, 1/d) against all of (1/d) Z_d
            f = {{{0, Rational(1, d)}, 1}};
            atoms.clear();
            for (std::int64_t k = 0; k < d; ++k) atoms.push_back({Rational(k, d), 1});
        }
        const auto sf = StepFunction::from_intervals(f);
        const auto tau = rational_tau(atoms);
        const auto r = verify_torus_tiling(sf, tau);

        std::set<std::int64_t> values;
        const std::int64_t grid = 2 * d;
        for (std::int64_t j = 0; j < grid; ++j) values.insert(direct_sum(f, atoms, Rational(2 * j + 1, 2 * grid)));
        EXPECT_EQ(r.is_tiling, values.size() == 1);
        if (r.is_tiling) EXPECT_EQ(*r.level, *values.begin());

        const Rational rot(static_cast<std::int64_t>(rng() % 7), 7);
        std::vector<std::pair<Rational, std::int64_t>> shifted;
        for (const auto& [at, w] : atoms) shifted.push_back({mod_period(at + rot, 1), w});
        const auto rr = verify_torus_tiling(sf.rotated(rot), rational_tau(shifted));
        EXPECT_EQ(rr.is_tiling, r.is_tiling);
        EXPECT_EQ(rr.level, r.level);
    }
}

TEST(Decompose, TwoClassInstance) {
    // F = 1 on [0, 1/6) u [2/3, 1); each class {c, c + 1/2} tiles at level 1
    const auto f = StepFunction::indicator(IntervalUnion({{0, Rational(1, 6)}, {Rational(2, 3), 1}}));
    const WeightedPeriodicPointSet tau(1, {{pt("0"), 1}, {pt("1/2"), 1}, {pt("th1"), 1}, {pt("th1 + 1/2"), 1}});
    const auto d = decompose_torus_tiling(f, tau);
    ASSERT_EQ(d.classes.size(), 2U);
    EXPECT_EQ(d.classes[0].report.level, 1);
    EXPECT_EQ(d.classes[1].report.level, 1);
    EXPECT_EQ(d.total_level, 2);

    // midpoint oracle on the rational class
    for (std::int64_t j = 0; j < 12; ++j)
        EXPECT_EQ(direct_sum({{{0, Rational(1, 6)}, 1}, {{Rational(2, 3), 1}, 1}}, {{0, 1}, {Rational(1, 2), 1}}, Rational(2 * j + 1, 24)), 1);

    const WeightedPeriodicPointSet broken(1, {{pt("0"), 1}, {pt("1/2"), 1}, {pt("th1"), 1}, {pt("th1 + 1/3"), 1}});
    const auto db = decompose_torus_tiling(f, broken);
    EXPECT_FALSE(db.total_level.has_value());
    EXPECT_TRUE(db.classes[0].report.is_tiling);
    EXPECT_FALSE(db.classes[1].report.is_tiling);
}

TEST(Decompose, NonUnitPeriod) {
    // period 2, atoms 0 and 1, tile on unit [0, 1/2): level 1
    const WeightedPeriodicPointSet tau(2, {{TorusPoint(0, {}, 2), 1}, {TorusPoint(1, {}, 2), 1}});
    const auto d = decompose_torus_tiling(StepFunction::indicator(IntervalUnion({{0, Rational(1, 2)}})), tau);
    EXPECT_EQ(d.total_level, 1);
}
