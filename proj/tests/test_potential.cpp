#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "squeeze/potential.hpp"

using namespace squeeze;

TEST(Realize, IdentityAtEpsilonOne) {
    structure_spec s{{{1.31232, 0, 2, 1, 1}}, 0, {}};
    const auto c = realize(s, 1.0);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_DOUBLE_EQ(c[0].v_left_edge, 1.31232);
    EXPECT_DOUBLE_EQ(c[0].v_right_edge, 1.31232);
    EXPECT_DOUBLE_EQ(c[0].width, 2);
    EXPECT_EQ(c[0].slope, 0);
}

TEST(Realize, HalfEpsilon) {
    structure_spec s{{{1.31232, 0, 2, 1, 1}}, 0, {}};
    const auto c = realize(s, 0.5);
    EXPECT_DOUBLE_EQ(c[0].v_left_edge, 2.62464);
    EXPECT_DOUBLE_EQ(c[0].width, 1);
}

TEST(Realize, SecondLayerSeesFirstBias) {
    structure_spec s{{{0.7, -0.3, 1, 1, 1}, {-0.2, 0.1, 2, 2, 1}}, 0, {}};
    const auto c = realize(s, 1.0);
    EXPECT_DOUBLE_EQ(c[1].v_left_edge, -0.2 + -0.3);
    EXPECT_DOUBLE_EQ(c[1].v_right_edge, -0.2 - 0.3 + 0.1);
}

TEST(Realize, RejectsNonPositiveEpsilon) {
    structure_spec s{{{1, 0, 1, 1, 1}}, 0, {}};
    EXPECT_THROW(realize(s, 0.0), config_error);
    EXPECT_THROW(realize(s, -1.0), config_error);
}

TEST(Realize, SlopeTimesWidthIsEdgeDifference) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2), w(0.1, 5), e(0.05, 1);
    for (int t = 0; t < 200; ++t) {
        structure_spec s{{{u(rng), u(rng), w(rng), 2, 1}}, 0, {}};
        const auto c = realize(s, e(rng))[0];
        EXPECT_NEAR(c.slope * c.width, c.v_right_edge - c.v_left_edge,
                    1e-14 * std::max(1.0, std::abs(c.v_right_edge - c.v_left_edge)));
        EXPECT_GT(c.width, 0);
    }
}

TEST(Realize, BiasAccumulationRandomized) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1), w(0.1, 3);
    for (int t = 0; t < 100; ++t) {
        structure_spec s;
        const int n = 1 + int(rng() % 8);
        for (int i = 0; i < n; ++i) s.layers.push_back({u(rng), u(rng), w(rng), 1, 1});
        const auto c = realize(s, 1.0);
        double cum = 0;
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(c[i].v_left_edge, s.layers[i].a + cum, 1e-14);
            cum += s.layers[i].b;
        }
        EXPECT_NEAR(leads(s, 1.0).right, cum, 1e-14);
    }
}

TEST(Leads, DefaultAndOverride) {
    structure_spec s{{{0, 0.5, 1, 1, 1}, {0, -0.2, 1, 2, 0}}, 0.1, {}};
    const auto lp = leads(s, 0.5);
    EXPECT_DOUBLE_EQ(lp.left, 0.1);
    EXPECT_DOUBLE_EQ(lp.right, 0.1 + 0.5 / 0.5 - 0.2);
    s.v_right_override = -3;
    EXPECT_EQ(leads(s, 0.5).right, -3);
}

TEST(Validate, RejectsBadLayers) {
    EXPECT_THROW(validate(layer_spec{0, 0, 0, 1, 1}), config_error);
    EXPECT_THROW(validate(layer_spec{0, 0, 1, 1, 1.5}), config_error);
    EXPECT_THROW(validate(layer_spec{0, 0, 1, -1, 0}), config_error);
    EXPECT_THROW(validate(structure_spec{}), config_error);
    EXPECT_NO_THROW(validate(layer_spec{0, 0, 1, 0, 0}));
}

TEST(DerivedCoefficients, BiasedAlpha) {
    structure_spec s{{{1.31232, -0.524928, 2, 1, 1}}, 0, {}};
    EXPECT_NEAR(derived_coefficients(s, 0).alpha, 2.099712, 1e-12);
}

TEST(DerivedCoefficients, UnbiasedAlpha) {
    structure_spec s{{{0.8, 0, 3, 1, 1}}, 0, {}};
    const auto c = derived_coefficients(s, 0);
    EXPECT_DOUBLE_EQ(c.alpha, 0.8 * 3);
    EXPECT_FALSE(c.c1);
    EXPECT_THROW(c.require_c1(), bias_free_layer_error);
    EXPECT_THROW(c.require_c2(), bias_free_layer_error);
}

TEST(DerivedCoefficients, WellKappa) {
    structure_spec s{{{-1, 0, 1, 2, 1}}, 0, {}};
    const auto c = derived_coefficients(s, 0);
    EXPECT_DOUBLE_EQ(c.kappa, 1);
    EXPECT_FALSE(c.kappa_imaginary);
}

TEST(DerivedCoefficients, UsesCumulativeShift) {
    structure_spec s{{{0.5, 0.3, 1, 1, 1}, {-1.0, 0.4, 2, 2, 1}}, 0, {}};
    const auto c = derived_coefficients(s, 1);
    EXPECT_DOUBLE_EQ(c.alpha, (-1.0 + 0.3 + 0.2) * 2);
    EXPECT_DOUBLE_EQ(c.kappa, std::sqrt(0.7));
    ASSERT_TRUE(c.c1 && c.c2);
    const double r = 2 / 0.4;
    EXPECT_NEAR(*c.c1, 0.5 * 0.49 * (-0.3) * r * r, 1e-14);
    EXPECT_NEAR(*c.c2, 0.5 * (-0.7) * 0.09 * r * r, 1e-14);
    EXPECT_THROW(derived_coefficients(s, 2), config_error);
}

TEST(Region, NamedExamples) {
    EXPECT_EQ(classify_region(1, 1), region::P11);
    EXPECT_TRUE(in_s0_closure(region::P11));
    EXPECT_EQ(classify_region(2, 1), region::P21);
    EXPECT_TRUE(in_s_inf_closure(region::P21));
    EXPECT_EQ(classify_region(0.5, 0), region::L0_1);
    EXPECT_EQ(classify_region(2, 0), region::P20);
    EXPECT_EQ(classify_region(0, 0), region::OUTSIDE);
    EXPECT_EQ(classify_region(1, 1.5), region::OUTSIDE);
    EXPECT_EQ(classify_region(2.5, 1), region::OUTSIDE);
}

TEST(Region, PartitionAgreesWithExponentSign) {
    const int n = 200;
    for (int i = 1; i <= n; ++i) {
        const double mu = 2.0 * i / n;
        for (int j = 0; j <= n; ++j) {
            const double nu = 2.0 * j / n;
            const region r = classify_region(mu, nu);
            if (nu > mu + region_tolerance) {
                EXPECT_EQ(r, region::OUTSIDE);
                continue;
            }
            EXPECT_NE(r, region::OUTSIDE) << mu << ' ' << nu;
            EXPECT_FALSE(in_s0_closure(r) && in_s_inf_closure(r));
            const double exponent = 2 * (1 + nu) / 3 - mu;
            if (r == region::S0) {
                EXPECT_GT(exponent, 0) << mu << ' ' << nu;
            }
            if (r == region::S_INF) {
                EXPECT_LT(exponent, 0) << mu << ' ' << nu;
            }
        }
    }
}

TEST(Units, Conversions) {
    EXPECT_DOUBLE_EQ(ev_to_invnm2(1), 2.62464);
    EXPECT_EQ(ev_to_invnm2(0), 0);
    EXPECT_NEAR(ev_to_invnm2(0.1), 0.262464, 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 1000; ++i) {
        const double e = u(rng);
        EXPECT_NEAR(invnm2_to_ev(ev_to_invnm2(e)), e, 1e-14 * std::abs(e));
    }
}
