#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "squeeze/transfer_matrix.hpp"
#include "support/ode_oracle.hpp"

using namespace squeeze;

using oracle::make_layer;
using oracle::ode_matrix;
using oracle::integrate_linear;
using state = oracle::ode_state;

TEST(ConstantLayer, HalfPeriod) {
    const auto m = layer_matrix_constant(0, std::numbers::pi, 1);
    EXPECT_NEAR(m.l11, -1, 1e-15);
    EXPECT_NEAR(m.l12, 0, 1e-15);
    EXPECT_NEAR(m.l21, 0, 1e-15);
    EXPECT_NEAR(m.l22, -1, 1e-15);
}

TEST(ConstantLayer, ZeroWidthIsIdentity) {
    EXPECT_LT(max_abs_difference(layer_matrix_constant(0, 1e-300, 1), transfer_matrix::identity()), 1e-15);
}

TEST(ConstantLayer, HyperbolicBranch) {
    const auto m = layer_matrix_constant(1, 1, 0.5);
    const double kap = std::sqrt(0.5);
    EXPECT_NEAR(m.l11, 1.260592, 1e-6);
    EXPECT_NEAR(m.l11, std::cosh(kap), 1e-15);
    EXPECT_NEAR(m.l21, kap * std::sinh(kap), 1e-15);
    EXPECT_NEAR(m.l12, std::sinh(kap) / kap, 1e-15);
    EXPECT_NEAR(m.det(), 1, 1e-14);
}

TEST(ConstantLayer, AtThresholdEnergy) {
    const auto m = layer_matrix_constant(0.7, 2.5, 0.7);
    EXPECT_EQ(m.l11, 1);
    EXPECT_EQ(m.l12, 2.5);
    EXPECT_EQ(m.l21, 0);
    EXPECT_EQ(m.l22, 1);
}

TEST(AiryParams, UnitSlope) {
    const auto p = make_airy_layer_params(make_layer(0, 1, 1), 0.3);
    EXPECT_DOUBLE_EQ(p.sigma, 1);
}

TEST(AiryParams, EnergyAtLeftEdge) {
    const auto p = make_airy_layer_params(make_layer(0.4, 1.1, 2), 0.4);
    EXPECT_EQ(p.z_left, 0);
}

TEST(AiryParams, UnsqueezedArguments) {
    const double b = -0.6, d = 2, e = 0.3, a = 0.2;
    const auto p = make_airy_layer_params(make_layer(a, a + b, d), e);
    const double k0sq = e - a;
    EXPECT_NEAR(p.z_left, -std::cbrt((d / b) * (d / b)) * k0sq, 1e-14);
}

TEST(AiryParams, ReconstructionAndLinearRelation) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(-3, 3), w(0.1, 4), e(-1, 3);
    for (int t = 0; t < 500; ++t) {
        const auto layer = make_layer(v(rng), v(rng), w(rng));
        const double energy = e(rng);
        const auto p = make_airy_layer_params(layer, energy);
        const double eta23 = std::cbrt(layer.slope * layer.slope);
        EXPECT_NEAR(p.z_left, -p.k2_left / eta23, 1e-12 * std::max(1.0, std::abs(p.z_left)));
        EXPECT_NEAR(p.z_right, -p.k2_right / eta23, 1e-12 * std::max(1.0, std::abs(p.z_right)));
        EXPECT_NEAR(p.z_left, p.sigma * (0 - p.s), 1e-10 * std::max(1.0, std::abs(p.z_left)));
        EXPECT_NEAR(p.z_right, p.sigma * (layer.width - p.s), 1e-10 * std::max(1.0, std::abs(p.z_right)));
    }
}

TEST(AiryParams, DegenerateSlopeRejected) {
    EXPECT_THROW(make_airy_layer_params(make_layer(0.5, 0.5, 1), 1), degenerate_slope_error);
    EXPECT_THROW(layer_matrix_linear(make_layer(0.5, 0.5 + 1e-12, 1), 1), degenerate_slope_error);
}

TEST(LinearLayer, NearlyFlatMatchesConstant) {
    const double eta = 1e-8;
    const auto lin = layer_matrix_linear(make_layer(0.5, 0.5 + eta, 1), 1);
    EXPECT_LT(max_abs_difference(lin, layer_matrix_constant(0.5, 1, 1)), 1e-6);
}

TEST(LinearLayer, MatchesOdeOracleExample) {
    const auto layer = make_layer(1.31232, 0.787392, 2);
    const double e = 0.262464;
    const auto m = layer_matrix_linear(layer, e);
    const auto o = ode_matrix(layer, e);
    EXPECT_LT(max_abs_difference(m, o), 1e-7);
}

TEST(LinearLayer, MatchesOdeOracleRandom) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> v(-2, 3), w(0.2, 3), e(0.01, 2);
    for (int t = 0; t < 100; ++t) {
        const auto layer = make_layer(v(rng), v(rng), w(rng));
        const double energy = e(rng);
        if (is_degenerate_slope(layer, energy)) continue;
        EXPECT_LT(max_abs_difference(layer_matrix_linear(layer, energy), ode_matrix(layer, energy)), 1e-7)
            << layer.v_left_edge << ' ' << layer.v_right_edge << ' ' << layer.width << ' ' << energy;
    }
}

TEST(LinearLayer, SteepAndThickLayersStayFinite) {
    // Arguments of several hundred on both edges: assembled from scaled values.
    const auto m = layer_matrix_linear(make_layer(300, 400, 0.5), 1);
    EXPECT_TRUE(std::isfinite(m.l11) && std::isfinite(m.l12) && std::isfinite(m.l21) && std::isfinite(m.l22));
    EXPECT_NEAR(m.det(), 1, 1e-9 * std::max(1.0, std::abs(m.l11 * m.l22)));
    EXPECT_THROW(layer_matrix_linear(make_layer(300, 400, 100), 1), overflow_error);
}

TEST(Determinant, RandomSingleLayers) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> v(-5, 5), w(0.05, 3), e(-2, 5), coin(0, 1);
    for (int t = 0; t < 1000; ++t) {
        const double v0 = v(rng);
        const double v1 = coin(rng) < 0.3 ? v0 : v(rng);
        const auto m = layer_matrix(make_layer(v0, v1, w(rng)), e(rng));
        EXPECT_NEAR(m.det(), 1, 1e-9);
    }
}

TEST(Determinant, RandomProducts) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> v(-2, 2), w(0.05, 1), e(0.1, 2);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + int(rng() % 16);
        std::vector<concrete_layer> layers;
        for (int i = 0; i < n; ++i) layers.push_back(make_layer(v(rng), v(rng), w(rng)));
        const auto m = structure_matrix(layers, e(rng));
        EXPECT_NEAR(m.det(), 1, 1e-8 * std::max(1.0, std::abs(m.l11 * m.l22)));
    }
}

TEST(Structure, SingleLayerIsLayerMatrix) {
    const std::vector<concrete_layer> layers{make_layer(0.2, -0.4, 1.5)};
    EXPECT_EQ(max_abs_difference(structure_matrix(layers, 0.6), layer_matrix(layers[0], 0.6)), 0);
}

TEST(Structure, FreeLayersCompose) {
    const std::vector<concrete_layer> layers{make_layer(0, 0, 0.7), make_layer(0, 0, 1.9)};
    EXPECT_LT(max_abs_difference(structure_matrix(layers, 1.3), layer_matrix_constant(0, 2.6, 1.3)), 1e-14);
}

TEST(Structure, EmptyRejected) {
    EXPECT_THROW(structure_matrix(std::vector<concrete_layer>{}, 1), config_error);
}

TEST(Structure, Associativity) {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> v(-1.5, 1.5), w(0.1, 1), e(0.1, 2);
    for (int t = 0; t < 100; ++t) {
        std::vector<concrete_layer> a, b;
        for (int i = 0, n = 1 + int(rng() % 5); i < n; ++i) a.push_back(make_layer(v(rng), v(rng), w(rng)));
        for (int i = 0, n = 1 + int(rng() % 5); i < n; ++i) b.push_back(make_layer(v(rng), v(rng), w(rng)));
        const double energy = e(rng);
        std::vector<concrete_layer> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const auto whole = structure_matrix(ab, energy);
        const auto parts = structure_matrix(b, energy) * structure_matrix(a, energy);
        EXPECT_LT(max_abs_difference(whole, parts), 1e-10 * std::max(1.0, std::abs(whole.l11) + std::abs(whole.l12) +
                                                                               std::abs(whole.l21) + std::abs(whole.l22)));
    }
}

TEST(Structure, SlopeThresholdContinuity) {
    const double v0 = 0.8, width = 1.2, energy = 1.1;
    const double threshold = 1e-9 * std::max({1.0, std::abs(v0), energy});
    const auto flat = layer_matrix_constant(v0, width, energy);
    for (double sign : {1.0, -1.0}) {
        const auto above = layer_matrix(make_layer(v0, v0 + sign * threshold * 1.001, width), energy);
        const auto below = layer_matrix(make_layer(v0, v0 + sign * threshold * 0.999, width), energy);
        EXPECT_LT(max_abs_difference(above, flat), 1e-6);
        EXPECT_LT(max_abs_difference(below, flat), 1e-6);
    }
}

// Lambda_i = M(x_i) M(x_{i-1})^{-1} with M = [[u, v], [u', v']] for two independent
// numerically integrated solutions started at the layer midpoint.
TEST(Structure, WronskianRouteBarrierWell) {
    const double energy = 0.5;
    const std::vector<concrete_layer> layers{make_layer(1, 1, 1), make_layer(-1, -1, 1)};
    transfer_matrix total = transfer_matrix::identity();
    for (const auto& l : layers) {
        const double mid = l.width / 2;
        const state u0{1.0, 0.3}, v0{0.2, 1.0};
        const auto uL = integrate_linear(l, energy, u0, mid, 0), uR = integrate_linear(l, energy, u0, mid, l.width);
        const auto vL = integrate_linear(l, energy, v0, mid, 0), vR = integrate_linear(l, energy, v0, mid, l.width);
        const transfer_matrix mR{uR[0], vR[0], uR[1], vR[1]};
        const transfer_matrix mL{uL[0], vL[0], uL[1], vL[1]};
        const double w = mL.det();
        const transfer_matrix mL_inv{mL.l22 / w, -mL.l12 / w, -mL.l21 / w, mL.l11 / w};
        total = (mR * mL_inv) * total;
    }
    const auto m = structure_matrix(layers, energy);
    EXPECT_NEAR(m.det(), 1, 1e-9);
    EXPECT_LT(max_abs_difference(m, total), 1e-9);
}
