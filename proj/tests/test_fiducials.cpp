#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "siclab/fiducials.hpp"
#include "siclab/galois.hpp"

using namespace siclab;

TEST(ExactFiducials, FamilyEndpoints) {
    const auto a = exact_fiducial_d3(0.0);
    EXPECT_EQ(a.source, "exact-family");
    ASSERT_TRUE(a.t.has_value());
    EXPECT_NEAR(std::abs(a.vector(1) - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.vector(2) + 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
    EXPECT_LT(exact_fiducial_d3(std::numbers::pi / 9).residual, 1e-12);
}

TEST(ExactFiducials, TwoDimensional) {
    const auto rec = exact_fiducial_d2();
    EXPECT_LT(rec.residual, 1e-12);
    EXPECT_TRUE(orbit_points_distinct(Dimension(2), rec.vector));
}

TEST(ExactFiducials, FourDimensionalMatchesClosedForm) {
    const Dimension dim(4);
    const auto rec = exact_fiducial_d4();
    EXPECT_NEAR(rec.vector.norm(), 1.0, 1e-15);
    const auto t = overlap_map(dim, rec.vector);
    const CMatrix m = d4_closed_form_overlaps();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(t.at(a, b) - m(a, b)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(t.at(0, 1)), 1.0 / std::sqrt(5.0), 1e-12);
}

TEST(ExactFiducials, FourDimensionalZaunerInvariance) {
    const Dimension dim(4);
    const auto t = overlap_map(dim, exact_fiducial_d4().vector);
    const auto f = zauner_matrix(dim).f_hat_z;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const DisplacementIndex p(dim, a, b);
            EXPECT_NEAR(std::abs(t(f.apply(dim, p)) - t(p)), 0.0, 1e-10);
        }
    }
}

TEST(ExactFiducials, Catalog) {
    EXPECT_TRUE(catalog_fiducial("d2").has_value());
    EXPECT_EQ(catalog_fiducial("d3")->d, 3);
    EXPECT_EQ(catalog_fiducial("bengtsson")->d, 4);
    EXPECT_FALSE(catalog_fiducial("d99").has_value());
}

TEST(Loss, BasisVector) {
    const Dimension dim(3);
    CVector e0 = CVector::Zero(3);
    e0(0) = 1.0;
    EXPECT_NEAR(sic_loss(dim, e0), 1.5, 1e-15);
    EXPECT_NEAR(sic_loss(dim, exact_fiducial_d3(0.1).vector), 0.0, 1e-24);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int d : {2, 3, 4}) {
        const Dimension dim(d);
        CVector z(d);
        for (int i = 0; i < d; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i) = Complex(re, im) / std::sqrt(2.0 * d);
        }
        const CVector g = sic_loss_gradient(dim, z);
        const double h = 1e-6;
        for (int i = 0; i < d; ++i) {
            for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
                CVector zp = z, zm = z;
                zp(i) += h * dir;
                zm(i) -= h * dir;
                const double fd = (sic_loss(dim, zp) - sic_loss(dim, zm)) / (2 * h);
                const double an = dir.real() != 0.0 ? g(i).real() : g(i).imag();
                EXPECT_NEAR(an, fd, 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(Search, StartIsDeterministic) {
    EXPECT_EQ(random_start(5, 42, 3), random_start(5, 42, 3));
    EXPECT_NE(random_start(5, 42, 3), random_start(5, 42, 4));
    EXPECT_NE(random_start(5, 42, 3), random_start(5, 43, 3));
    EXPECT_NEAR(random_start(5, 42, 3).norm(), 1.0, 1e-15);
}

TEST(Search, FindsThreeDimensionalFiducial) {
    SearchConfig cfg;
    cfg.d = 3;
    cfg.restarts = 8;
    cfg.workers = 1;
    const auto res = search_fiducial(cfg);
    ASSERT_TRUE(res.success);
    EXPECT_TRUE(is_sic_fiducial(Dimension(3), res.best.vector).pass);
    EXPECT_EQ(res.best.source, "numerical");
    EXPECT_EQ(res.best.seed, std::optional<std::uint64_t>(1));
}

TEST(Search, FiveDimensionalSeedOne) {
    SearchConfig cfg;
    cfg.d = 5;
    cfg.restarts = 64;
    cfg.seed = 1;
    const auto res = search_fiducial(cfg);
    ASSERT_TRUE(res.success);
    EXPECT_LT(res.best.residual, 1e-9);
    EXPECT_TRUE(orbit_points_distinct(Dimension(5), res.best.vector));
}

TEST(Search, IndependentOfWorkerCount) {
    SearchConfig cfg;
    cfg.d = 4;
    cfg.restarts = 16;
    cfg.seed = 3;
    cfg.workers = 1;
    const auto one = search_fiducial(cfg);
    cfg.workers = 4;
    const auto four = search_fiducial(cfg);
    EXPECT_EQ(one.best_restart, four.best_restart);
    EXPECT_EQ(one.best.vector, four.best.vector);
    cfg.stop_on_success = false;
    cfg.restarts = 6;
    const auto all4 = search_fiducial(cfg);
    cfg.workers = 1;
    const auto all1 = search_fiducial(cfg);
    EXPECT_EQ(all4.restarts_run, 6);
    EXPECT_EQ(all1.best_restart, all4.best_restart);
    EXPECT_EQ(all1.successes, all4.successes);
}

TEST(Search, NonConvergenceReportsFailure) {
    SearchConfig cfg;
    cfg.d = 6;
    cfg.restarts = 1;
    cfg.max_iters = 1;
    const auto res = search_fiducial(cfg);
    EXPECT_FALSE(res.success);
    EXPECT_EQ(res.restarts_run, 1);
    EXPECT_GT(res.best.residual, cfg.tol);
}

TEST(Search, RejectsBadConfig) {
    SearchConfig cfg;
    cfg.restarts = 0;
    EXPECT_THROW(search_fiducial(cfg), std::invalid_argument);
    cfg.restarts = 1;
    cfg.tol = 0.0;
    EXPECT_THROW(search_fiducial(cfg), std::invalid_argument);
    cfg.tol = 1e-9;
    cfg.d = 1;
    EXPECT_THROW(search_fiducial(cfg), std::invalid_argument);
}

TEST(Orbit, DistinctnessDetectsEigenvector) {
    const Dimension dim(3);
    CVector e0 = CVector::Zero(3);
    e0(0) = 1.0;
    EXPECT_FALSE(orbit_points_distinct(dim, e0));
    EXPECT_TRUE(orbit_points_distinct(dim, exact_fiducial_d3(0.2).vector));
}
