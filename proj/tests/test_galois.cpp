#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "siclab/fiducials.hpp"
#include "siclab/galois.hpp"

using namespace siclab;

TEST(Mat2Residue, Arithmetic) {
    const auto f = Mat2Residue::from(0, -1, 1, -1, 7);
    EXPECT_EQ(f.m, (std::array<std::int64_t, 4>{0, 6, 1, 6}));
    EXPECT_EQ(f.det(), 1);
    EXPECT_EQ(f.trace(), 6);
    EXPECT_EQ(f.pow(3), Mat2Residue::identity(7));
    EXPECT_EQ(f.order(), 3);
    EXPECT_EQ(f * f * f, Mat2Residue::identity(7));
    EXPECT_EQ(f + Mat2Residue::identity(7), Mat2Residue::from(1, 6, 1, 0, 7));
    EXPECT_EQ(f.apply(1, 0), (std::pair<std::int64_t, std::int64_t>{0, 1}));
    EXPECT_FALSE(Mat2Residue::scalar(7, 7).invertible());
}

TEST(Zauner, Matrices) {
    const auto z4 = zauner_matrix(Dimension(4));
    EXPECT_EQ(z4.f_hat_z, Mat2Residue::from(0, 3, 5, 3, 8));
    EXPECT_EQ(z4.f_hat_z.pow(3), Mat2Residue::scalar(5, 8));
    EXPECT_EQ(z4.f_hat_z.order(), 6);
    EXPECT_EQ(z4.f_z.order(), 3);
    for (int d : {3, 5, 7, 9}) {
        const auto z = zauner_matrix(Dimension(d));
        EXPECT_EQ(z.f_z, z.f_hat_z);
    }
}

TEST(Symmetry, FourDimensionalGroupContainsZauner) {
    const Dimension dim(4);
    const auto s = overlap_symmetry_group(overlap_map(dim, exact_fiducial_d4().vector));
    EXPECT_TRUE(s.closed);
    const auto has = [&](const Mat2Residue& g) {
        return std::binary_search(s.elements.begin(), s.elements.end(), g);
    };
    EXPECT_TRUE(has(zauner_matrix(dim).f_hat_z));
    EXPECT_TRUE(has(Mat2Residue::scalar(5, 8)));
    EXPECT_TRUE(has(Mat2Residue::identity(8)));
}

TEST(Symmetry, FamilyInteriorIsProperSubgroup) {
    const Dimension dim(3);
    const auto s = overlap_symmetry_group(overlap_map(dim, exact_fiducial_d3(0.2).vector));
    EXPECT_TRUE(s.closed);
    EXPECT_LT(s.elements.size(), 48u);
    EXPECT_GT(s.elements.size(), 1u);
}

TEST(Symmetry, RejectsLargeModulus) {
    const Dimension dim(22);
    CVector z = CVector::Zero(22);
    z(0) = 1.0;
    EXPECT_THROW(overlap_symmetry_group(overlap_map(dim, z)), std::length_error);
}

TEST(BuildM, OrdersMatchBruteForce) {
    for (const auto& [d, expect] : std::vector<std::pair<int, std::int64_t>>{{5, 24}, {7, 36}, {4, 48}}) {
        const auto f = zauner_matrix(Dimension(d)).f_z;
        EXPECT_EQ(static_cast<std::int64_t>(build_M(f).size()), expect) << d;
        EXPECT_EQ(oracle::algebra_unit_count(f.m[0], f.m[1], f.m[2], f.m[3], f.n), expect) << d;
    }
    EXPECT_THROW(build_M(Mat2Residue::identity(5)), std::invalid_argument);
}

TEST(BuildM, TypeZOrdersEqualUnitGroupProduct) {
    for (int d = 4; d <= 20; ++d) {
        if (classify_type(d) != FiducialType::Z) continue;
        const Dimension dim(d);
        const auto fd = field_data(d);
        std::int64_t product = 1;
        for (const auto& [p, k] : factorize(dim.dbar())) {
            std::int64_t order = 1;
            for (auto c : unit_group_structure(fd, p, k)) order *= c;
            product *= order;
        }
        EXPECT_EQ(static_cast<std::int64_t>(build_M(zauner_matrix(dim).f_z).size()), product) << d;
    }
}

TEST(Types, Classification) {
    EXPECT_EQ(classify_type(4), FiducialType::Z);
    EXPECT_EQ(classify_type(12), FiducialType::A4);
    EXPECT_EQ(classify_type(30), FiducialType::A6);
    EXPECT_EQ(to_string(FiducialType::A6), "a6");
    EXPECT_TRUE(j_isomorphism_criteria(5));
    EXPECT_FALSE(j_isomorphism_criteria(30));
    EXPECT_TRUE(j_isomorphism_criteria(9));
}

TEST(Orbits, SmallDimensions) {
    const auto r5 = m_orbits(5, build_M(zauner_matrix(Dimension(5)).f_z));
    ASSERT_EQ(r5.orbits.size(), 2u);
    EXPECT_EQ(r5.orbits[0].size, 1);
    EXPECT_EQ(r5.orbits[1].size, 24);

    const auto r7 = m_orbits(7, build_M(zauner_matrix(Dimension(7)).f_z), true);
    std::vector<std::int64_t> sizes;
    for (const auto& o : r7.orbits) sizes.push_back(o.size);
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::int64_t>{1, 6, 6, 36}));

    const auto r4 = m_orbits(8, build_M(zauner_matrix(Dimension(4)).f_z));
    std::vector<std::int64_t> levels;
    for (const auto& o : r4.orbits) levels.push_back(o.gcd_level);
    std::sort(levels.begin(), levels.end());
    EXPECT_EQ(levels, (std::vector<std::int64_t>{1, 2, 4, 8}));
}

TEST(Orbits, PartitionCoversPlane) {
    for (int d : {4, 6, 9, 10}) {
        const Dimension dim(d);
        const auto rep = m_orbits(dim.dbar(), build_M(zauner_matrix(dim).f_z));
        std::int64_t total = 0;
        for (const auto& o : rep.orbits) total += o.size;
        EXPECT_EQ(total, static_cast<std::int64_t>(dim.dbar()) * dim.dbar());
    }
}

TEST(Correspondence, SmallDimensions) {
    for (const auto& [d, count] : std::vector<std::pair<int, std::int64_t>>{{5, 2}, {7, 4}, {4, 4}, {11, 2}}) {
        const auto rep = orbit_divisor_correspondence(d);
        EXPECT_EQ(rep.orbit_count, count) << d;
        EXPECT_EQ(rep.divisor_count, count) << d;
        EXPECT_TRUE(rep.match) << d;
    }
}

TEST(Correspondence, AllDimensionsUpToTwenty) {
    for (int d = 4; d <= 20; ++d) {
        const auto rep = orbit_divisor_correspondence(d);
        EXPECT_TRUE(rep.match) << d;
        EXPECT_EQ(rep.treat3_as_ramified, !j_isomorphism_criteria(d));
        if (rep.algebraic) EXPECT_TRUE(rep.algebraic->match) << d;
        EXPECT_EQ(one_orbit_predicate(d), rep.divisor_count == 2) << d;
    }
    EXPECT_THROW(orbit_divisor_correspondence(22), std::length_error);
}

TEST(Correspondence, TypeAWitness) {
    const Dimension dim(12);
    const auto f = type_a_witness(dim);
    EXPECT_EQ(f.pow(3), Mat2Residue::identity(24));
    EXPECT_EQ(f.trace(), 23);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(f.m[i] % 3, i == 0 || i == 3 ? 1 : 0);
    const auto rep = orbit_divisor_correspondence(12);
    EXPECT_EQ(rep.type, FiducialType::A4);
    EXPECT_FALSE(rep.j_criteria);
    ASSERT_TRUE(rep.algebraic.has_value());
    EXPECT_EQ(rep.algebraic->divisor_count, 16);
}

TEST(OneOrbit, Predicate) {
    EXPECT_TRUE(one_orbit_predicate(5));
    EXPECT_FALSE(one_orbit_predicate(7));
    EXPECT_TRUE(one_orbit_predicate(11));
    EXPECT_THROW(one_orbit_predicate(3), std::invalid_argument);
}

TEST(ProjectiveOrbits, InertPrimeIsTransitive) {
    const auto f = zauner_matrix(Dimension(5)).f_z;
    EXPECT_EQ(projective_orbit_sizes(5, f), (std::vector<std::int64_t>{6}));
    EXPECT_EQ(projective_orbit_sizes(7, zauner_matrix(Dimension(7)).f_z),
              (std::vector<std::int64_t>{6, 1, 1}));
}

TEST(RayClass, GroupOrders) {
    const auto r4 = ray_class_group_orders(4);
    EXPECT_EQ(r4.order_OK_units, 48);
    const auto fd = field_data(4);
    EXPECT_EQ(r4.order_uf_subgroup, sign_unit_subgroup_order(fd, QuadInt{0, 1}, 8));
    EXPECT_EQ(r4.quotient_order, r4.order_OK_units / r4.order_uf_subgroup);
    EXPECT_EQ(r4.per_divisor.size(), 3u);
    const auto r5 = ray_class_group_orders(5);
    EXPECT_EQ(r5.order_OK_units, 24);
}
