#include <gtest/gtest.h>

#include "oracles.hpp"
#include "siclab/quadfield.hpp"

using namespace siclab;

TEST(Integers, Factorize) {
    using F = std::vector<std::pair<std::int64_t, int>>;
    EXPECT_EQ(factorize(360), (F{{2, 3}, {3, 2}, {5, 1}}));
    EXPECT_EQ(factorize(97), (F{{97, 1}}));
    EXPECT_TRUE(factorize(1).empty());
    EXPECT_EQ(squarefree_part(320), 5);
    EXPECT_EQ(squarefree_part(12), 3);
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(91));
}

TEST(FieldData, DiscriminantRoot) {
    EXPECT_EQ(field_data(4).D, 5);
    EXPECT_EQ(field_data(5).D, 3);
    EXPECT_EQ(field_data(19).D, 5);
    EXPECT_EQ(field_data(7).D, 2);
    EXPECT_EQ(field_data(4).kind, OmegaKind::Half);
    EXPECT_EQ(field_data(5).kind, OmegaKind::SqrtD);
    EXPECT_THROW(field_data(3), std::invalid_argument);
    EXPECT_THROW(field_for_discriminant_root(4), std::invalid_argument);
}

TEST(FieldData, Tower) {
    for (int d : {4, 5, 7, 10, 16}) EXPECT_TRUE(dimension_tower_check(d)) << d;
}

TEST(QuadInt, Arithmetic) {
    const auto fd = field_for_discriminant_root(5);
    const QuadInt phi{0, 1};
    EXPECT_EQ(mul(fd, phi, phi), (QuadInt{1, 1}));
    EXPECT_EQ(norm(fd, phi), -1);
    EXPECT_EQ(trace(fd, phi), 1);
    EXPECT_EQ(pow(fd, phi, 2), (QuadInt{1, 1}));
    EXPECT_EQ(half_integer_form(fd, QuadInt{1, 1}), (std::pair<BigInt, BigInt>{3, 1}));
    EXPECT_NEAR(to_double(fd, phi), 1.6180339887498949, 1e-15);
}

TEST(FundamentalUnit, KnownValues) {
    EXPECT_EQ(fundamental_unit(field_for_discriminant_root(5)), (QuadInt{0, 1}));
    EXPECT_EQ(fundamental_unit(field_for_discriminant_root(2)), (QuadInt{1, 1}));
    EXPECT_EQ(fundamental_unit(field_for_discriminant_root(3)), (QuadInt{2, 1}));
    EXPECT_EQ(norm(field_for_discriminant_root(3), QuadInt{2, 1}), 1);
    EXPECT_EQ(fundamental_unit(field_for_discriminant_root(94)), (QuadInt{2143295, 221064}));
}

TEST(FundamentalUnit, MatchesPellScan) {
    for (std::int64_t D = 2; D <= 100; ++D) {
        if (squarefree_part(D) != D) continue;
        const auto fd = field_for_discriminant_root(D);
        const auto [t, u] = oracle::minimal_unit_scan(D);
        const auto [T, U] = half_integer_form(fd, fundamental_unit(fd));
        EXPECT_EQ(T, t) << D;
        EXPECT_EQ(U, u) << D;
    }
}

TEST(NormOneUnit, SmallDimensions) {
    const auto n4 = norm_one_unit_and_r(field_data(4));
    EXPECT_EQ(n4.u_D, (QuadInt{1, 1}));
    EXPECT_EQ(n4.r, std::optional<int>(1));
    EXPECT_EQ(n4.order_mod_dbar, 6);
    EXPECT_EQ(n4.iota, 2);
    EXPECT_TRUE(n4.order_matches);
    const auto n5 = norm_one_unit_and_r(field_data(5));
    EXPECT_EQ(n5.u_D, (QuadInt{2, 1}));
    EXPECT_EQ(n5.r, std::optional<int>(1));
    EXPECT_EQ(norm_one_unit_and_r(field_data(8)).r, std::optional<int>(2));
    EXPECT_EQ(norm_one_unit_and_r(field_data(19)).r, std::optional<int>(3));
}

TEST(NormOneUnit, OrderFormula) {
    for (int d = 4; d <= 30; ++d) {
        const auto fd = field_data(d);
        const auto nu = norm_one_unit_and_r(fd);
        ASSERT_TRUE(nu.r.has_value()) << d;
        const auto [T, U] = half_integer_form(fd, pow(fd, nu.u_D, *nu.r));
        EXPECT_EQ(T, d - 1) << d;
        EXPECT_TRUE(nu.order_matches) << d;
    }
}

TEST(Splitting, ModThreeRule) {
    EXPECT_EQ(prime_splitting(field_data(7), 7), Splitting::Split);
    EXPECT_EQ(prime_splitting(field_data(4), 2), Splitting::Inert);
    EXPECT_EQ(prime_splitting(field_data(12), 3), Splitting::Split);
    EXPECT_EQ(prime_splitting(field_data(9), 3), Splitting::Ramified);
    EXPECT_THROW(prime_splitting(field_data(7), 5), std::invalid_argument);
}

TEST(Splitting, AgreesWithMinimalPolynomial) {
    for (int d = 4; d <= 60; ++d) {
        const auto fd = field_data(d);
        for (const auto& [p, k] : factorize(d % 2 == 0 ? 2 * d : d))
            EXPECT_EQ(prime_splitting(fd, p), splitting_by_minimal_polynomial(fd, p)) << d << ' ' << p;
    }
}

TEST(Divisors, Counts) {
    EXPECT_EQ(ideal_divisors(field_data(5), false).count, 2);
    EXPECT_EQ(ideal_divisors(field_data(4), false).count, 4);
    EXPECT_EQ(ideal_divisors(field_data(7), false).count, 4);
    const auto d12 = ideal_divisors(field_data(12), false);
    EXPECT_EQ(d12.count, 4 * 4);
    EXPECT_EQ(ideal_divisors(field_data(12), true).count, 4 * 3);
    EXPECT_EQ(static_cast<std::int64_t>(d12.divisors.size()), d12.count);
}

TEST(UnitGroups, KnownStructures) {
    using V = std::vector<std::int64_t>;
    EXPECT_EQ(canonical_invariant_factors(unit_group_structure(field_data(4), 2, 3)), (V{2, 2, 12}));
    EXPECT_EQ(canonical_invariant_factors(unit_group_structure(field_data(5), 5, 1)), (V{24}));
    EXPECT_EQ(canonical_invariant_factors(unit_group_structure(field_data(7), 7, 1)), (V{6, 6}));
    EXPECT_EQ(canonical_invariant_factors({6, 4, 2}), (V{2, 2, 12}));
    EXPECT_EQ(unit_group_order(field_data(4), 8), 48);
}

TEST(UnitGroups, MatchBruteForce) {
    const std::vector<std::pair<std::int64_t, int>> powers{{3, 1}, {5, 1}, {7, 1}, {3, 2},
                                                           {2, 3}, {2, 2}, {5, 2}, {3, 3}};
    for (const auto& [p, k] : powers) {
        std::int64_t n = 1;
        for (int i = 0; i < k; ++i) n *= p;
        int tested = 0;
        for (std::int64_t D = 2; D <= 60; ++D) {
            if (squarefree_part(D) != D) continue;
            const auto fd = field_for_discriminant_root(D);
            std::vector<std::int64_t> cyclic;
            try {
                cyclic = unit_group_structure(fd, p, k);
            } catch (const std::invalid_argument&) {
                continue;
            }
            ++tested;
            EXPECT_EQ(canonical_invariant_factors(cyclic), oracle::unit_invariant_factors(fd, n))
                << "D=" << D << " n=" << n;
            EXPECT_EQ(unit_group_order(fd, n), static_cast<std::int64_t>(oracle::unit_orders(fd, n).size()));
        }
        EXPECT_GT(tested, 0) << n;
    }
}

TEST(UnitGroups, RejectsUnsupportedCases) {
    EXPECT_THROW(unit_group_structure(field_data(4), 2, 1), std::invalid_argument);
    EXPECT_THROW(unit_group_structure(field_for_discriminant_root(3), 2, 3), std::invalid_argument);
    EXPECT_THROW(unit_group_structure(field_for_discriminant_root(5), 5, 1), std::invalid_argument);
    EXPECT_THROW(unit_group_structure(field_for_discriminant_root(3), 3, 2), std::invalid_argument);
}

TEST(Residues, OrderByPowering) {
    const auto fd = field_data(4);
    const QuadIntResidue phi = reduce(QuadInt{0, 1}, 8);
    EXPECT_TRUE(is_unit(fd, phi));
    QuadIntResidue x = phi;
    std::int64_t k = 1;
    while (!(x.a == 1 && x.b == 0)) {
        x = mul(fd, x, phi);
        ++k;
    }
    EXPECT_EQ(residue_order(fd, phi), k);
    EXPECT_THROW(residue_order(fd, reduce(QuadInt{2, 0}, 8)), std::invalid_argument);
    EXPECT_EQ(norm_mod(fd, phi), 7);
}

TEST(NineDivides, ConstraintHolds) {
    EXPECT_EQ(field_data(9).D, 15);
    EXPECT_EQ(field_data(18).D, 285);
    EXPECT_EQ(field_data(36).D, 1221);
    for (int d = 9; d <= 252; d += 9) EXPECT_TRUE(nine_d_constraint_check(d)) << d;
    EXPECT_THROW(nine_d_constraint_check(10), std::invalid_argument);
}
