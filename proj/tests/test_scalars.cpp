#include <truncbell/exactnum.hpp>
#include <truncbell/poly.hpp>
#include <truncbell/rational.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace truncbell;

TEST(Rational, ParsesCanonicalForm) {
    EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-3/6").to_string(), "-1/2");
    EXPECT_EQ(Rational::parse("+7").to_string(), "7");
    EXPECT_EQ(Rational::parse("0/5").to_string(), "0");
    EXPECT_EQ(Rational::parse("123456789012345678901234567890/1").to_string(), "123456789012345678901234567890");
}

TEST(Rational, ParseErrorsCarryPosition) {
    auto position_of = [](const char* text) -> std::size_t {
        try {
            Rational::parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return 999;
    };
    EXPECT_EQ(position_of(""), 0U);
    EXPECT_EQ(position_of("1/0"), 2U);
    EXPECT_EQ(position_of("1/x"), 2U);
    EXPECT_EQ(position_of("12a"), 2U);
    EXPECT_EQ(position_of("0.5"), 1U);
    EXPECT_EQ(position_of("1/2/3"), 3U);
    EXPECT_EQ(position_of(" 1"), 0U);
    EXPECT_EQ(position_of("-"), 1U);
}

TEST(Rational, Arithmetic) {
    const Rational a(1, 3), b(-1, 6);
    EXPECT_EQ(a + b, Rational(1, 6));
    EXPECT_EQ(a - b, Rational(1, 2));
    EXPECT_EQ(a * b, Rational(-1, 18));
    EXPECT_EQ(a / b, Rational(-2));
    EXPECT_EQ(b.abs(), Rational(1, 6));
    EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
    EXPECT_EQ(Rational(-2, 5).inverse(), Rational(-5, 2));
    EXPECT_THROW(Rational(0).inverse(), std::domain_error);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_LT(Rational(-1, 3), Rational(-1, 4));
}

TEST(Rational, ToDoubleIsCorrectlyRounded) {
    EXPECT_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
    EXPECT_EQ(Rational(-2, 7).to_double(), -2.0 / 7.0);
    // 2^53 + 1 lies exactly between two doubles; ties go to even.
    const Rational tie(mpz_class("9007199254740993"), mpz_class(1));
    EXPECT_EQ(tie.to_double(), 9007199254740992.0);
}

TEST(Rational, FieldLawsOnRandomValues) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 300; ++trial) {
        const Rational a = oracle::random_rational(gen, 50), b = oracle::random_rational(gen, 50),
                       c = oracle::random_rational(gen, 50);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!b.is_zero()) {
            EXPECT_EQ(a / b * b, a);
        }
        EXPECT_EQ(Rational::parse(a.to_string()), a);
    }
}

TEST(Lambda, ParseAndCompare) {
    EXPECT_TRUE(Lambda::parse("0/3").is_zero());
    EXPECT_EQ(Lambda::parse("-2/6"), Lambda(-1, 3));
    EXPECT_EQ(Lambda(1, 2).to_string(), "1/2");
    EXPECT_THROW(Lambda::parse("1/2x"), ParseError);
}

TEST(ExactNum, FactorialAndBinomial) {
    EXPECT_EQ(factorial(0), Rational(1));
    EXPECT_EQ(factorial(10), Rational(3628800));
    EXPECT_EQ(binomial(10, 3), Rational(120));
    EXPECT_EQ(binomial(3, 5), Rational(0));
    EXPECT_THROW(binomial(-1, 0), std::invalid_argument);
    EXPECT_THROW(factorial(-2), std::invalid_argument);
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), oracle::choose(n, k));
}

TEST(ExactNum, DegenerateFallingFactorial) {
    const Lambda half(1, 2);
    EXPECT_EQ(deg_falling_factorial(Rational(3), 0, half), Rational(1));
    // 1 * (1/2) * 0
    EXPECT_EQ(deg_falling_factorial(Rational(1), 3, half), Rational(0));
    EXPECT_EQ(deg_falling_factorial(Rational(2), 3, Lambda(0, 1)), Rational(8));
    EXPECT_EQ(deg_falling_factorial(Rational(5), 3, Lambda(1, 1)), Rational(60));
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Rational x = oracle::random_rational(gen, 9), l = oracle::random_rational(gen, 9);
        const int n = static_cast<int>(gen() % 8);
        EXPECT_EQ(deg_falling_factorial(x, n, Lambda(l)), oracle::gen_falling(x, n, l));
    }
}

TEST(ExactNum, BetaFunctionAndMoments) {
    EXPECT_EQ(beta_exact(1, 1), Rational(1));
    EXPECT_EQ(beta_exact(3, 3), Rational(1, 30));
    EXPECT_THROW(beta_exact(0, 2), std::domain_error);
    // E[X^2] for X ~ Beta(1,3) is B(3,3)/B(1,3) = 1/C(5,2).
    EXPECT_EQ(beta_moment(2, 1, 3), Rational(1, 10));
    for (int p = 1; p <= 5; ++p)
        for (int k = 0; k <= 10; ++k) {
            EXPECT_EQ(beta_moment(k, 1, p), binomial(k + p, k).inverse());
            EXPECT_EQ(beta_moment(k, 1, p), beta_exact(k + 1, p) / beta_exact(1, p));
        }
}

TEST(Poly, ArithmeticAndRendering) {
    const Poly x = Poly::x();
    const Poly p = x * x * Rational(1, 3) + x * Rational(1, 4);
    EXPECT_EQ(p.to_string(), "1/4*x + 1/3*x^2");
    EXPECT_EQ(Poly().to_string(), "0");
    EXPECT_EQ(Poly(Rational(-2)).to_string(), "-2");
    EXPECT_EQ((x - Poly(1)).to_string(), "-1 + 1*x");
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(Poly().degree(), -1);
    EXPECT_EQ(p.evaluate(Rational(2)), Rational(11, 6));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(((x + Poly(1)) * (x - Poly(1))), x * x - Poly(1));
}

TEST(Poly, RingLawsOnRandomPolynomials) {
    std::mt19937_64 gen(3);
    auto random_poly = [&] {
        std::vector<Rational> cs;
        const int deg = static_cast<int>(gen() % 5);
        for (int i = 0; i <= deg; ++i) cs.push_back(oracle::random_rational(gen, 9));
        return Poly(cs);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Poly a = random_poly(), b = random_poly(), c = random_poly();
        const Rational at = oracle::random_rational(gen, 7);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ((a * b).evaluate(at), a.evaluate(at) * b.evaluate(at));
        EXPECT_EQ((a + b).evaluate(at), a.evaluate(at) + b.evaluate(at));
    }
}

TEST(Poly, ExpandInFallingBasis) {
    std::vector<Poly> basis{Poly(1)};
    for (int k = 1; k <= 6; ++k) basis.push_back(basis.back() * (Poly::x() - Poly(k - 1)));
    // x^3 = (x)_3 + 3 (x)_2 + (x)_1
    const auto cs = expand_in_basis(Poly::monomial(3, Rational(1)), basis);
    ASSERT_GE(cs.size(), 4U);
    EXPECT_EQ(cs[0], Rational(0));
    EXPECT_EQ(cs[1], Rational(1));
    EXPECT_EQ(cs[2], Rational(3));
    EXPECT_EQ(cs[3], Rational(1));
}
