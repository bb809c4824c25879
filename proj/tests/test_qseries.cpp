#include <gtest/gtest.h>

#include <qtheta/errors.hpp>
#include <qtheta/qseries.hpp>
#include <qtheta/theta_series.hpp>

#include "oracles.hpp"

using namespace qtheta;

namespace {

QSeries poly(std::vector<Rational> c, std::int64_t valid_to = QSeries::exact)
{
    return QSeries(1, 0, std::move(c), valid_to);
}

} // namespace

TEST(QSeries, ConstructionNormalizes)
{
    QSeries s(1, -2, {0, 0, 3, 0, 1}, 10);
    EXPECT_EQ(s.min_exp(), 0);
    EXPECT_EQ(s.coeffs().size(), 3u);
    EXPECT_EQ(s.leading(), 3);
    EXPECT_EQ(s.valuation(), 0);

    QSeries trimmed(1, 0, {1, 2, 3, 4}, 2);
    EXPECT_EQ(trimmed.coeffs().size(), 2u);
    EXPECT_EQ(trimmed.valid_to(), 2);

    EXPECT_TRUE(QSeries(1, 5, {0, 0}, 9).is_zero());
    EXPECT_EQ(QSeries(1, 5, {0, 0}, 9).min_exp(), 0);
}

TEST(QSeries, RescaledGridComparesEqual)
{
    QSeries a(1, 0, {1, 2, 3}, 5);
    QSeries b(3, 0, {1, 0, 0, 2, 0, 0, 3}, 15);
    EXPECT_EQ(a, b);
    EXPECT_EQ(b.denom(), 1);
}

TEST(QSeries, AddCancels)
{
    EXPECT_EQ(poly({1, 1}) + poly({1, -1}), QSeries::constant(2));
    QSeries f = fneg_series(1, 20);
    EXPECT_EQ(f + QSeries(), f);
}

TEST(QSeries, AddPhiPlusPhiNegated)
{
    QSeries s = phi_series(1, 1, 10) + phi_series(-1, 1, 10);
    // 2 phi(q^4)
    EXPECT_EQ(s, poly({2, 0, 0, 0, 4}, 10));
    EXPECT_EQ(s.valid_to(), 10);
}

TEST(QSeries, AddValidityIsMinimum)
{
    QSeries s = poly({1, 1, 1}, 3) + poly({1, 1, 1, 1, 1}, 7);
    EXPECT_EQ(s.valid_to(), 3);
}

TEST(QSeries, MulBasics)
{
    EXPECT_EQ(poly({1, 1}) * poly({1, -1}), poly({1, 0, -1}));
    QSeries half = QSeries::monomial(1, Rational(1, 2));
    QSeries mhalf = QSeries::monomial(1, Rational(-1, 2));
    EXPECT_EQ(half * mhalf, QSeries::constant(1));
}

TEST(QSeries, MulPhiSquaredAgainstRepresentationCount)
{
    const int N = 30;
    QSeries p = phi_series(-1, 1, N);
    QSeries sq = p * p;
    // Number of signed representations n^2 + m^2 = k.
    oracle::Poly ref(N, 0);
    for (int n = -6; n <= 6; ++n) {
        for (int m = -6; m <= 6; ++m) {
            int k = n * n + m * m;
            if (k < N) ref[k] += ((n + m) % 2) ? -1 : 1;
        }
    }
    EXPECT_EQ(oracle::coeffs(sq, N), oracle::rationals(ref));
    EXPECT_EQ(sq.coefficient(0), 1);
    EXPECT_EQ(sq.coefficient(1), -4);
    EXPECT_EQ(sq.coefficient(2), 4);
    EXPECT_EQ(sq.coefficient(3), 0);
    EXPECT_EQ(sq.coefficient(4), 4);
}

TEST(QSeries, MulValidityUsesValuations)
{
    // (q^2 + O(q^5)) * (q^3 + O(q^6)): known through q^7.
    QSeries a(1, 2, {1}, 5), b(1, 3, {1}, 6);
    QSeries c = a * b;
    EXPECT_EQ(c.valid_to(), 8);
    EXPECT_EQ(c.coefficient(5), 1);
}

TEST(QSeries, InvertGeometric)
{
    QSeries inv = invert(poly({1, -1}, 12));
    EXPECT_EQ(inv, poly(std::vector<Rational>(12, 1), 12));
}

TEST(QSeries, InvertMonomial)
{
    QSeries inv = invert(QSeries::monomial(1, Rational(1, 6)));
    EXPECT_EQ(inv, QSeries::monomial(1, Rational(-1, 6)));
    EXPECT_TRUE(inv.is_exact());
}

TEST(QSeries, InvertPhiFifthAgainstLongDivision)
{
    const int N = 40;
    QSeries inv = invert(phi_series(-1, 5, N));
    oracle::Poly ref = oracle::invert(oracle::phi(-1, 5, N));
    EXPECT_EQ(oracle::coeffs(inv, N), oracle::rationals(ref));
    EXPECT_EQ(inv.coefficient(5), 2);
    EXPECT_EQ(inv.coefficient(10), 4);
}

TEST(QSeries, InvertErrors)
{
    EXPECT_THROW(invert(QSeries()), zero_series_error);
    EXPECT_THROW(invert(QSeries::zero_to(5)), zero_series_error);
    EXPECT_THROW(invert(poly({1, 1})), unbounded_result_error);
}

TEST(QSeries, InvertNegativeValuation)
{
    QSeries a(2, -1, {2, 0, 1}, 7); // 2q^(-1/2) + q^(1/2) + O(q^(7/2))
    QSeries b = invert(a);
    EXPECT_EQ(b.valuation(), Rational(1, 2));
    QSeries one = a * b;
    for (Rational e = 0; e < one.validity(); e += Rational(1, 2)) {
        EXPECT_EQ(one.coefficient(e), e == 0 ? 1 : 0) << e.get_str();
    }
}

TEST(QSeries, IntPow)
{
    EXPECT_EQ(int_pow(poly({1, 1}), 2), poly({1, 2, 1}));
    EXPECT_EQ(int_pow(fneg_series(1, 20), 0), QSeries::constant(1));
    EXPECT_EQ(int_pow(poly({1, -1}, 10), -2), invert(poly({1, -2, 1}, 10)));
    EXPECT_THROW(int_pow(QSeries(), -1), zero_series_error);
}

TEST(QSeries, IntPowCubeOfPentagonal)
{
    const int N = 40;
    QSeries lhs = int_pow(fneg_series(1, N), 3);
    QSeries rhs = int_pow(phi_series(-1, 1, N), 2) * psi_series(1, 1, N);
    EXPECT_TRUE(lhs.agrees_with(rhs));
    EXPECT_EQ(lhs.coefficient(0), 1);
    EXPECT_EQ(lhs.coefficient(1), -3);
    oracle::Poly ref = oracle::pow(oracle::euler_product(1, N), 3);
    EXPECT_EQ(oracle::coeffs(lhs, N), oracle::rationals(ref));
}

TEST(QSeries, Sqrt)
{
    EXPECT_EQ(sqrt(poly({1, 2, 1})), poly({1, 1}));
    EXPECT_EQ(sqrt(QSeries::monomial(1, 2)), QSeries::monomial(1, 1));
    QSeries p = phi_series(-1, 1, 30);
    EXPECT_TRUE(sqrt(p * p).agrees_with(p));
    EXPECT_EQ(sqrt(p * p).valid_to(), 30);
}

TEST(QSeries, SqrtErrors)
{
    EXPECT_THROW(sqrt(QSeries(1, 1, {1, 1}, 10)), odd_valuation_error);
    EXPECT_THROW(sqrt(QSeries(1, 0, {2, 1}, 10)), non_square_leading_error);
    EXPECT_THROW(sqrt(QSeries(1, 0, {-1, 1}, 10)), non_square_leading_error);
    EXPECT_THROW(sqrt(poly({1, 1})), unbounded_result_error);
}

TEST(QSeries, SqrtRationalLeading)
{
    QSeries s = sqrt(QSeries(1, 0, {Rational(4, 9), 1}, 10));
    EXPECT_EQ(s.leading(), Rational(2, 3));
    EXPECT_EQ(s.coefficient(1), Rational(3, 4));
}

TEST(QSeries, SubstitutePower)
{
    EXPECT_EQ(substitute_power(poly({1, 1}), 2), poly({1, 0, 1}));
    QSeries f5 = substitute_power(fneg_series(1, 20), 5);
    EXPECT_EQ(f5.valid_to(), 100);
    oracle::Poly ref(100, 0);
    for (int n = -10; n <= 10; ++n) {
        int e = 5 * n * (3 * n - 1) / 2;
        if (e >= 0 && e < 100) ref[e] += (n % 2) ? -1 : 1;
    }
    EXPECT_EQ(oracle::coeffs(f5, 100), oracle::rationals(ref));
}

TEST(QSeries, SubstitutePowerSixthGrading)
{
    QSeries x = QSeries::monomial(1, Rational(1, 6));
    QSeries y = substitute_power(x, 2);
    EXPECT_EQ(y, QSeries::monomial(1, Rational(1, 3)));
    EXPECT_EQ(y.denom(), 3);
}

TEST(QSeries, SubstituteNegate)
{
    EXPECT_EQ(substitute_negate(poly({1, 1, 1})), poly({1, -1, 1}));
    QSeries s = substitute_negate(psi_series(1, 1, 30));
    EXPECT_EQ(s, psi_series(-1, 1, 30));
    EXPECT_EQ(s.coefficient(1), -1);
    EXPECT_EQ(s.coefficient(3), -1);
    EXPECT_EQ(s.coefficient(6), 1);
    EXPECT_THROW(substitute_negate(QSeries::monomial(1, Rational(1, 2))), fractional_grid_error);
}

TEST(QSeries, Coefficient)
{
    EXPECT_EQ(coefficient(phi_series(1, 1, 10), 4), 2);
    EXPECT_EQ(coefficient(fneg_series(1, 10), 3), 0);
    EXPECT_EQ(coefficient(fneg_series(1, 10), Rational(1, 2)), 0);
    EXPECT_THROW(coefficient(poly({1, 1}, 2), 2), beyond_validity_error);
    EXPECT_THROW(coefficient(poly({1, 1}, 2), Rational(5, 2)), beyond_validity_error);
}

TEST(QSeries, TruncateAndPrint)
{
    QSeries p = phi_series(-1, 1, 10);
    EXPECT_EQ((p * p).truncate(5).to_string(), "1 - 4q + 4q^2 + 4q^4 + O(q^5)");
    EXPECT_EQ(QSeries::monomial(-3, Rational(-1, 2)).to_string(), "-3q^(-1/2)");
    EXPECT_EQ(QSeries().to_string(), "0");
}
