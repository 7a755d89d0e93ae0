#include <truncbell/sequences.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace truncbell;

namespace {

const Lambda kGrid[] = {Lambda(0, 1), Lambda(1, 1), Lambda(1, 2), Lambda(-1, 3), Lambda(2, 1)};

}  // namespace

TEST(Oracle, PartitionEnumerationCountsKnownValues) {
    const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
    for (int n = 0; n < 8; ++n) EXPECT_EQ(oracle::partitions(n), bell[n]);
    EXPECT_EQ(oracle::partitions_into_blocks(5, 2), 15);
    EXPECT_EQ(oracle::partitions_into_blocks(4, 0), 0);
}

TEST(Stirling, ClassicalSecondKindMatchesPartitionCounts) {
    for (int n = 0; n <= 9; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(stirling2(n, k), Rational(oracle::partitions_into_blocks(n, k)));
    EXPECT_EQ(stirling2(3, 5), Rational(0));
}

TEST(Stirling, ClassicalFirstKindMatchesExpandedProduct) {
    for (int n = 0; n <= 12; ++n) {
        const auto cs = oracle::falling_coeffs(n);
        for (int k = 0; k <= n; ++k) EXPECT_EQ(stirling1(n, k), cs[k]);
    }
    EXPECT_EQ(stirling1(4, 2), Rational(11));
    EXPECT_EQ(stirling1(4, 1), Rational(-6));
}

TEST(Stirling, DegenerateSecondKindMatchesAlternatingSum) {
    for (const Lambda& l : kGrid)
        for (int n = 0; n <= 10; ++n)
            for (int k = 0; k <= n; ++k) EXPECT_EQ(stirling2_deg(n, k, l), oracle::s2_deg(n, k, l.value()));
    // S_{2,l}(2,1) = 1 - l
    EXPECT_EQ(stirling2_deg(2, 1, Lambda(1, 2)), Rational(1, 2));
}

TEST(Stirling, DegenerateTablesAreInverse) {
    const int n_max = 16;
    for (const Lambda& l : kGrid) {
        const auto s1 = cached_table(Family::S1deg, {l}, n_max);
        const auto s2 = cached_table(Family::S2deg, {l}, n_max);
        for (int n = 0; n <= n_max; ++n)
            for (int m = 0; m <= n; ++m) {
                Rational acc(0);
                for (int k = m; k <= n; ++k) acc += s1->value(n, k) * s2->value(k, m);
                EXPECT_EQ(acc, Rational(n == m ? 1 : 0)) << l.to_string() << " " << n << "," << m;
            }
    }
}

TEST(Stirling, LambdaZeroGivesClassicalTables) {
    const Lambda zero(0, 1);
    for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(stirling2_deg(n, k, zero), stirling2(n, k));
            EXPECT_EQ(stirling1_deg(n, k, zero), stirling1(n, k));
        }
}

TEST(Sequences, AlternativeConstructionsAgree) {
    for (const Lambda& l : kGrid) {
        for (Family f : kAllFamilies) {
            const auto cs = available_constructions(f);
            if (cs.size() < 2) continue;
            const int pmax = uses_p(f) ? 4 : 0;
            for (int p = 0; p <= pmax; ++p) {
                const TableParams params{l, p, 0};
                const auto a = build_table(f, params, 16, cs[0]);
                const auto b = build_table(f, params, 16, cs[1]);
                EXPECT_EQ(a.rows, b.rows) << to_string(f) << " lambda=" << l.to_string() << " p=" << p;
                EXPECT_NE(a.construction, b.construction);
            }
        }
    }
}

TEST(Sequences, BellValues) {
    const long bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(bell_classical(n), Rational(oracle::partitions(n)));
        EXPECT_EQ(bell_deg(n, Lambda(0, 1)).evaluate(Rational(1)), Rational(bell[n]));
        EXPECT_EQ(trunc_bell_deg(n, 0, Lambda(0, 1)).evaluate(Rational(1)), Rational(bell[n]));
    }
    EXPECT_EQ(bell_deg(1, Lambda(1, 3)), Poly::x());
}

TEST(Sequences, TruncatedBellMatchesOracle) {
    for (const Lambda& l : kGrid)
        for (int p = 0; p <= 4; ++p)
            for (int n = 0; n <= 8; ++n)
                for (const Rational& x : {Rational(1), Rational(-1, 2), Rational(3)})
                    EXPECT_EQ(trunc_bell_deg(n, p, l).evaluate(x), oracle::trunc_bell(n, p, l.value(), x));
    EXPECT_EQ(trunc_bell_deg(2, 1, Lambda(1, 2)).to_string(), "1/4*x + 1/3*x^2");
}

TEST(Sequences, ModifiedFamilyAtZeroCollapses) {
    // S_{2,l}(n,k|0) = S_{2,l}(n,k), hence B^{(p)}_n(0) = Bel^{(p)}_n(1).
    for (const Lambda& l : kGrid)
        for (int n = 0; n <= 8; ++n) {
            for (int k = 0; k <= n; ++k) EXPECT_EQ(stirling2_deg_poly(n, k, l).evaluate(Rational(0)), stirling2_deg(n, k, l));
            for (int p = 0; p <= 3; ++p)
                EXPECT_EQ(trunc_mod_bell_deg(n, p, l).evaluate(Rational(0)), trunc_bell_deg(n, p, l).evaluate(Rational(1)));
        }
    EXPECT_EQ(stirling2_deg_poly(4, 4, Lambda(1, 3)), Poly(1));
}

TEST(Sequences, DegenerateBernoulli) {
    // beta_{1,l} = (l - 1)/2
    EXPECT_EQ(deg_bernoulli(1, 1, Lambda(1, 3)).evaluate(Rational(0)), Rational(-1, 3));
    EXPECT_EQ(deg_bernoulli_num(0, Lambda(1, 2)), Rational(1));
    // l = 0: classical Bernoulli numbers 1, -1/2, 1/6, 0, -1/30
    const Rational classical[] = {Rational(1), Rational(-1, 2), Rational(1, 6), Rational(0), Rational(-1, 30)};
    for (int n = 0; n < 5; ++n) EXPECT_EQ(deg_bernoulli_num(n, Lambda(0, 1)), classical[n]);
    // order 0 leaves e_l^x(t): beta^{(0)}_n(x) = (x)_{n,l}
    for (int n = 0; n <= 6; ++n)
        EXPECT_EQ(deg_bernoulli(n, 0, Lambda(1, 2)).evaluate(Rational(7, 3)),
                  oracle::gen_falling(Rational(7, 3), n, Rational(1, 2)));
}

TEST(Sequences, NegativeIndicesAreRejected) {
    EXPECT_THROW(stirling2(-1, 0), std::invalid_argument);
    EXPECT_THROW(trunc_bell_deg(3, -1, Lambda(0, 1)), std::invalid_argument);
    EXPECT_THROW(build_table(Family::S2deg, {}, -1, Construction::basis_solve), std::invalid_argument);
    EXPECT_THROW(build_table(Family::BernoulliDeg, {}, 3, Construction::finite_sum), std::invalid_argument);
}

TEST(Sequences, ParseNames) {
    for (Family f : kAllFamilies) EXPECT_EQ(parse_family(to_string(f)), f);
    EXPECT_FALSE(parse_family("Bell").has_value());
    EXPECT_EQ(parse_construction("egf_extraction"), Construction::egf_extraction);
}

TEST(TableCache, GrowsAndServesPrefixes) {
    const auto small = cached_table(Family::S2deg, {Lambda(5, 7)}, 3);
    EXPECT_GE(small->n_max, 3);
    const auto big = cached_table(Family::S2deg, {Lambda(5, 7)}, 40);
    EXPECT_GE(big->n_max, 40);
    EXPECT_EQ(truncated_table(*big, small->n_max).rows, small->rows);
    // Irrelevant parameters share one entry.
    EXPECT_EQ(cached_table(Family::S2, {Lambda(1, 2), 3, 1}, 5), cached_table(Family::S2, {}, 5));
}

TEST(TableCache, ConcurrentLookupsAgree) {
    const Lambda l(3, 11);
    std::vector<std::shared_ptr<const SequenceTable>> seen(8);
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i)
        threads.emplace_back([&, i] { seen[i] = cached_table(Family::TruncBellDeg, {l, 2}, 10 + 3 * i); });
    for (auto& t : threads) t.join();
    const auto reference = build_table(Family::TruncBellDeg, {l, 2}, 10, Construction::finite_sum);
    for (const auto& t : seen) EXPECT_EQ(truncated_table(*t, 10).rows, reference.rows);
}
