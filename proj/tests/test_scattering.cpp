#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "squeeze/scattering.hpp"

using namespace squeeze;

namespace {

// Random real matrix with det = 1: [[a, b], [c, (1 + b c) / a]].
transfer_matrix random_unimodular(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    double a = u(rng);
    if (std::abs(a) < 0.1) a = 0.1;
    const double b = u(rng), c = u(rng);
    return {a, b, c, (1 + b * c) / a};
}

double rectangular_barrier_transmission(double v, double width, double e) {
    const double k2 = e, kap2 = v - e;
    const double s = std::sinh(std::sqrt(kap2) * width);
    return 1 / (1 + (k2 + kap2) * (k2 + kap2) / (4 * k2 * kap2) * s * s);
}

} // namespace

TEST(Scatter, Identity) {
    const auto r = scatter(transfer_matrix::identity(), 0, 0, 1);
    EXPECT_DOUBLE_EQ(r.trans_prob, 1);
    EXPECT_DOUBLE_EQ(r.refl_prob, 0);
    EXPECT_EQ(std::abs(r.r_left), 0);
}

TEST(Scatter, DeltaMatrix) {
    const auto r = scatter({1, 0, 2, 1}, 0, 0, 1);
    EXPECT_NEAR(r.trans_prob, 0.5, 1e-15);
    const auto s = s_matrix(r);
    EXPECT_NEAR(std::norm(s[0][1]), 0.5, 1e-15);
}

TEST(Scatter, RectangularBarrier) {
    const auto r = scatter(layer_matrix_constant(1, 1, 0.5), 0, 0, 0.5);
    EXPECT_NEAR(r.trans_prob, rectangular_barrier_transmission(1, 1, 0.5), 1e-14);
    EXPECT_NEAR(r.trans_prob, 0.6292903, 1e-7);
}

TEST(Scatter, EvanescentLeadsRejected) {
    EXPECT_THROW(scatter(transfer_matrix::identity(), 1, 0, 1), evanescent_lead_error);
    EXPECT_THROW(scatter(transfer_matrix::identity(), 0, 2, 1), evanescent_lead_error);
}

TEST(Scatter, RandomInvariants) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> lead(-1, 1), above(0.01, 2);
    for (int t = 0; t < 1000; ++t) {
        const auto m = random_unimodular(rng);
        const double vl = lead(rng), vr = lead(rng);
        const double e = std::max(vl, vr) + above(rng);
        const auto r = scatter(m, vl, vr, e);

        EXPECT_NEAR(r.refl_prob + r.trans_prob, 1, 1e-9);
        EXPECT_GE(r.trans_prob, 0);
        EXPECT_LE(r.trans_prob, 1);

        const double d2 = std::norm(r.d_denom);
        const double want = 4 * r.k_left / r.k_right + r.p * r.p + r.q * r.q;
        EXPECT_NEAR(d2 / want, 1, 1e-9);

        const double t_left = r.k_right / r.k_left * std::norm(r.t_left);
        const double t_right = r.k_left / r.k_right * std::norm(r.t_right);
        EXPECT_NEAR(t_left, t_right, 1e-10);
        EXPECT_NEAR(t_left, r.trans_prob, 1e-10);
        EXPECT_NEAR(std::norm(r.r_left), r.refl_prob, 1e-10);
        EXPECT_NEAR(std::norm(r.r_right), r.refl_prob, 1e-10);

        EXPECT_LT(unitarity_defect(s_matrix(r)), 1e-9);
    }
}

TEST(Scatter, TimeReversalWithEqualLeads) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 200; ++t) {
        const auto r = scatter(random_unimodular(rng), 0.2, 0.2, 0.9);
        EXPECT_NEAR(std::abs(r.t_left), std::abs(r.t_right), 1e-12);
    }
}

TEST(SMatrix, IdentityIsFullTransmission) {
    const auto s = s_matrix(scatter(transfer_matrix::identity(), 0, 0, 2));
    EXPECT_LT(std::abs(s[0][0]), 1e-15);
    EXPECT_LT(std::abs(s[1][1]), 1e-15);
    EXPECT_LT(std::abs(s[0][1] - 1.0), 1e-15);
    EXPECT_LT(std::abs(s[1][0] - 1.0), 1e-15);
}
