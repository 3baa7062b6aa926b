#include <gtest/gtest.h>

#include <random>

#include "crosstile/cyclotomic.hpp"
#include "crosstile/dft.hpp"
#include "crosstile/rational.hpp"
#include "crosstile/zn.hpp"
#include "oracles.hpp"

using namespace crosstile;

TEST(Checked, OverflowThrows) {
    EXPECT_THROW(checked_add(INT64_MAX, 1), std::overflow_error);
    EXPECT_THROW(checked_mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
    EXPECT_EQ(mod_floor(-1, 5), 4);
    EXPECT_EQ(checked_lcm(4, 6), 12);
}

TEST(Rational, LowestTermsAndParse) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational::parse(" 10/4 "), Rational(5, 2));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
    EXPECT_EQ(Rational(-7, 2).floor(), -4);
    EXPECT_EQ(mod_period(Rational(-1, 3), 1), Rational(2, 3));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(Rational, WideIntermediates) {
    const Rational big(INT64_MAX / 3, 7);
    EXPECT_EQ(big * Rational(7, INT64_MAX / 3), Rational(1));
    EXPECT_THROW(Rational(INT64_MAX) + Rational(1), std::overflow_error);
}

TEST(CyclicSet, BasicsAndBounds) {
    CyclicSet s(70, {0, 65, 3});
    EXPECT_EQ(s.size(), 3U);
    EXPECT_TRUE(s.contains(65));
    EXPECT_THROW(s.insert(70), std::out_of_range);
    EXPECT_THROW(CyclicSet(5, {-1}), std::out_of_range);
    EXPECT_EQ(s.translate(10).members(), (std::vector<std::int64_t>{5, 10, 13}));
    EXPECT_EQ(CyclicSet(6, {1, 2}).scale(5), CyclicSet(6, {5, 4}));
    EXPECT_EQ(CyclicSet(4, {0, 1}).complement(), CyclicSet(4, {2, 3}));
    EXPECT_EQ(CyclicSet(4, {0, 1}).str(), "{0,1}");
    EXPECT_THROW(CyclicSet(4) | CyclicSet(5), std::invalid_argument);
}

TEST(CyclicSet, CanonicalOrderOnZ2) {
    const CyclicSet both(2, {0, 1}), zero(2, {0}), one(2, {1}), none(2);
    EXPECT_LT(both, zero);
    EXPECT_LT(zero, one);
    EXPECT_LT(one, none);
}

TEST(CyclicSet, MaskRoundTrip) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto s = oracle::random_set(64, rng);
        EXPECT_EQ(CyclicSet::from_mask(64, s.mask()), s);
    }
}

TEST(WeightedCyclicVector, IndicatorAndArithmetic) {
    const WeightedCyclicVector v(CyclicSet(5, {1, 3}));
    EXPECT_EQ(v.sum(), 2);
    EXPECT_EQ((v - v).is_zero(), true);
    EXPECT_EQ((-v)[1], -1);
    EXPECT_EQ(v.translate(2)[0], 1);
    EXPECT_TRUE(WeightedCyclicVector::constant(3, 7).is_constant(7));
    EXPECT_THROW(WeightedCyclicVector(0), std::invalid_argument);
    const WeightedCyclicVector huge(std::vector<std::int64_t>{INT64_MAX, 0});
    EXPECT_THROW(huge + huge, std::overflow_error);
}

TEST(Convolve, DeltaIsIdentity) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::int64_t> w(-9, 9);
    for (std::size_t n = 1; n <= 12; ++n) {
        WeightedCyclicVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = w(rng);
        EXPECT_EQ(convolve(WeightedCyclicVector::delta(n), v), v);
    }
}

TEST(Convolve, ThreeTilesFifteen) {
    const auto c = convolve(CyclicSet(15, {0, 1, 2}), CyclicSet(15, {0, 3, 6, 9, 12}));
    EXPECT_TRUE(c.is_constant(1));
}

TEST(Convolve, MatchesDoubleLoopOracle) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> w(-50, 50);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 12;
        oracle::Vec a(n), b(n);
        for (auto& x : a) x = w(rng);
        for (auto& x : b) x = w(rng);
        const auto got = convolve(WeightedCyclicVector(a), WeightedCyclicVector(b));
        const auto want = oracle::convolve(a, b);
        for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(got[i], want[i]);
        EXPECT_EQ(got, convolve(WeightedCyclicVector(b), WeightedCyclicVector(a)));
        EXPECT_EQ(got.sum(), WeightedCyclicVector(a).sum() * WeightedCyclicVector(b).sum());
    }
}

TEST(Convolve, SetsBoundedByMinSize) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 30;
        const auto a = oracle::random_set(n, rng), x = oracle::random_set(n, rng);
        const auto c = convolve(a, x);
        EXPECT_EQ(c, convolve(WeightedCyclicVector(a), WeightedCyclicVector(x)));
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_GE(c[i], 0);
            EXPECT_LE(c[i], static_cast<std::int64_t>(std::min(a.size(), x.size())));
        }
    }
    EXPECT_THROW(convolve(CyclicSet(3), CyclicSet(4)), std::invalid_argument);
}

TEST(Cyclotomic, KnownSmallPolynomials) {
    EXPECT_EQ(cyclotomic(1).str(), IntegerPolynomial({-1, 1}).str());
    EXPECT_EQ(cyclotomic(6), IntegerPolynomial({1, -1, 1}));
    EXPECT_EQ(cyclotomic(12), IntegerPolynomial({1, 0, -1, 0, 1}));
    EXPECT_EQ(cyclotomic(15), IntegerPolynomial({1, -1, 0, 1, -1, 1, 0, -1, 1}));
    // first cyclotomic polynomial with a coefficient of absolute value 2
    const auto& p105 = cyclotomic(105);
    std::int64_t most = 0;
    for (auto c : p105.coefficients()) most = std::max(most, std::abs(c));
    EXPECT_EQ(most, 2);
}

TEST(Cyclotomic, DegreeAndProductOverDivisors) {
    for (std::size_t n = 1; n <= 60; ++n) {
        EXPECT_EQ(cyclotomic(n).degree(), static_cast<long>(euler_phi(n)));
        // prod_{d | n} Phi_d = x^n - 1, multiplied by a plain double loop
        std::vector<std::int64_t> prod = {1};
        for (auto d : divisors(n)) {
            const auto c = cyclotomic(d).coefficients();
            std::vector<std::int64_t> next(prod.size() + c.size() - 1, 0);
            for (std::size_t i = 0; i < prod.size(); ++i)
                for (std::size_t j = 0; j < c.size(); ++j) next[i + j] += prod[i] * c[j];
            prod = next;
        }
        EXPECT_EQ(IntegerPolynomial(prod), IntegerPolynomial::x_pow_minus_one(n)) << "n=" << n;
    }
}

TEST(Dft, SpecExamples) {
    for (std::size_t n = 1; n <= 20; ++n) {
        const auto z = dft_zero_set(WeightedCyclicVector::constant(n, 1));
        EXPECT_EQ(z, CyclicSet(n, {0}).complement());
        EXPECT_TRUE(dft_zero_set(WeightedCyclicVector::delta(n)).empty());
    }
    // geometric sum: sum_{j<5} zeta^{3jk} is 5 for k in {0,5,10}, else 0
    CyclicSet geometric(15);
    for (std::int64_t k = 0; k < 15; ++k)
        if (k % 5 != 0) geometric.insert(k);
    EXPECT_EQ(dft_zero_set(WeightedCyclicVector(CyclicSet(15, {0, 3, 6, 9, 12}))), geometric);

    const auto d0 = dft_numeric(WeightedCyclicVector::delta(7));
    for (auto z : d0) EXPECT_NEAR(std::abs(z - std::complex<double>(1, 0)), 0, 1e-12);
    const auto ones = dft_numeric(WeightedCyclicVector::constant(4, 1));
    EXPECT_NEAR(std::abs(ones[0] - std::complex<double>(4, 0)), 0, 1e-9);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(ones[k]), 0, 1e-9);
}

TEST(Dft, MatchesModularOracleOnRandomAndStructuredInputs) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> w(-3, 3);
    for (std::size_t n = 1; n <= 40; ++n) {
        const auto roots = oracle::prime_roots(n);
        for (int trial = 0; trial < 25; ++trial) {
            oracle::Vec u(n, 0);
            if (trial % 2 == 0) {
                for (auto& x : u) x = w(rng);
            } else {
                // a multiple of some Phi_d with d | n, so zeros occur
                const auto ds = divisors(n);
                const auto& phi = cyclotomic(ds[rng() % ds.size()]).coefficients();
                oracle::Vec g(n, 0);
                for (std::size_t i = 0; i < n; ++i) g[i] = w(rng);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < phi.size(); ++j) u[(i + j) % n] += g[i] * phi[j];
            }
            const auto zeros = dft_zero_set(WeightedCyclicVector(u));
            for (std::size_t k = 0; k < n; ++k)
                ASSERT_EQ(zeros.contains(static_cast<std::int64_t>(k)), oracle::dft_is_zero_mod_primes(u, k, roots))
                    << "n=" << n << " k=" << k;
            EXPECT_EQ(dft_zero_set(WeightedCyclicVector(u).translate(3)), zeros);
        }
    }
}

TEST(CyclotomicInteger, ArithmeticMatchesComplexValues) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::int64_t> w(-4, 4);
    for (std::size_t m : {3U, 4U, 8U, 12U, 30U}) {
        WeightedCyclicVector a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = w(rng);
            b[i] = w(rng);
        }
        const CyclotomicInteger x(a), y(b);
        EXPECT_NEAR(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()), 0, 1e-8);
        EXPECT_NEAR(std::abs(x.lift(2 * m).to_complex() - x.to_complex()), 0, 1e-9);
        EXPECT_TRUE((x - x).is_zero());
    }
    // 1 + zeta_3 + zeta_3^2 = 0
    const auto s = CyclotomicInteger::integer(3, 1) + CyclotomicInteger::root(3, 1) + CyclotomicInteger::root(3, 2);
    EXPECT_TRUE(s.is_zero());
    EXPECT_TRUE(CyclotomicInteger::root(4, 2).equals(CyclotomicInteger::integer(4, -1)));
}
