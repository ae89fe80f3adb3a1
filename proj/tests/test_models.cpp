#include "fdml/models.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace fdml;
using Catch::Matchers::WithinAbs;

namespace {

DmlParams with_current(double I) {
    DmlParams p;
    p.I = I;
    return p;
}

State4 swapped(const State4& s) { return {s[2], s[3], s[0], s[1]}; }

}  // namespace

TEST_CASE("Single-cell vector field", "[models]") {
    SECTION("zero state") {
        const auto f = rhs_single(0.0, {0.0, 0.0}, with_current(0.0));
        CHECK(f[0] == 0.0);
        CHECK_THAT(f[1], WithinAbs(0.0041, 1e-15));
    }
    SECTION("published equilibrium is nearly stationary") {
        const auto f = rhs_single(0.0, {0.40772, 0.11746}, with_current(0.019));
        CHECK_THAT(f[0], WithinAbs(0.0, 5e-5));
        CHECK_THAT(f[1], WithinAbs(0.0, 5e-5));
    }
    SECTION("direct arithmetic") {
        const auto f = rhs_single(0.0, {1.0, 0.5}, with_current(0.2));
        CHECK_THAT(f[0], WithinAbs(-0.3, 1e-15));
        CHECK_THAT(f[1], WithinAbs(0.0041 * std::exp(5.276) - 0.15, 1e-13));
    }
    SECTION("autonomous") {
        const auto p = with_current(0.019);
        CHECK(rhs_single(0.0, {0.3, 0.2}, p) == rhs_single(1234.5, {0.3, 0.2}, p));
    }
}

TEST_CASE("Linear dimer vector field", "[models]") {
    const auto p = with_current(0.019);
    const State4 s{0.1, 0.1, -0.2, 0.1};

    SECTION("theta = 0 stacks two single cells exactly") {
        const auto f = rhs_coupled_linear(0.0, s, p, 0.0);
        const auto a = rhs_single(0.0, {s[0], s[1]}, p);
        const auto b = rhs_single(0.0, {s[2], s[3]}, p);
        CHECK(f == State4{a[0], a[1], b[0], b[1]});
    }
    SECTION("symmetric state carries no coupling") {
        for (const double theta : {0.0, 0.008, 1.0}) {
            const auto f = rhs_coupled_linear(0.0, {0.3, 0.2, 0.3, 0.2}, p, theta);
            const auto a = rhs_single(0.0, {0.3, 0.2}, p);
            CHECK(f[0] == a[0]);
            CHECK(f[0] == f[2]);
            CHECK(f[1] == f[3]);
        }
    }
    SECTION("direct arithmetic") {
        const auto f = rhs_coupled_linear(0.0, s, p, 0.008);
        CHECK_THAT(f[0], WithinAbs(0.1 * 0.1 * 0.9 - 0.1 + 0.019 + 0.008 * (-0.3), 1e-15));
        CHECK_THAT(f[0], WithinAbs(-0.0744, 1e-15));
    }
}

TEST_CASE("Sigmoid dimer vector field", "[models]") {
    const auto p = with_current(0.019);
    const State4 s{0.1, 0.1, -0.2, 0.1};
    const SigmoidCoupling syn{};

    SECTION("sigma = 0 stacks two single cells exactly") {
        auto off = syn;
        off.sigma = 0.0;
        const auto f = rhs_coupled_sigmoid(0.0, s, p, off);
        const auto a = rhs_single(0.0, {s[0], s[1]}, p);
        const auto b = rhs_single(0.0, {s[2], s[3]}, p);
        CHECK(f == State4{a[0], a[1], b[0], b[1]});
    }
    SECTION("direct arithmetic") {
        const auto f = rhs_coupled_sigmoid(0.0, s, p, syn);
        const double expected = 0.1 * 0.1 * 0.9 - 0.1 + 0.019 + 0.001 * 1.9 / (1.0 + std::exp(-0.5));
        CHECK_THAT(f[0], WithinAbs(expected, 1e-15));
    }
    SECTION("saturated presynaptic voltage") {
        const double x_pre = syn.q + 100.0 / syn.lambda;
        const State4 state{0.3, 0.2, x_pre, 0.1};
        const auto f = rhs_coupled_sigmoid(0.0, state, p, syn);
        const auto base = rhs_single(0.0, {0.3, 0.2}, p);
        CHECK_THAT(f[0] - base[0], WithinAbs(syn.sigma * (syn.v_s - 0.3), 1e-10));
    }
}

TEST_CASE("Coupled fields are symmetric under neuron exchange", "[models][property]") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> x(-0.6, 1.2);
    std::uniform_real_distribution<double> y(-0.2, 0.6);
    std::uniform_real_distribution<double> strength(0.0, 0.05);
    for (int i = 0; i < 200; ++i) {
        const auto p = with_current(x(rng) * 0.03);
        const State4 s{x(rng), y(rng), x(rng), y(rng)};
        const double theta = strength(rng);
        SigmoidCoupling syn;
        syn.sigma = strength(rng);

        const auto fl = rhs_coupled_linear(0.0, s, p, theta);
        CHECK(rhs_coupled_linear(0.0, swapped(s), p, theta) == swapped(fl));
        const auto fs = rhs_coupled_sigmoid(0.0, s, p, syn);
        CHECK(rhs_coupled_sigmoid(0.0, swapped(s), p, syn) == swapped(fs));
    }
}

TEST_CASE("Sigmoid evaluation is overflow free", "[models]") {
    for (const double x : {-1e6, -500.0, -40.0, -0.25, 0.0, 40.0, 500.0, 1e6}) {
        const double s = sigmoid(x, 10.0, -0.25);
        const double ds = sigmoid_slope(x, 10.0, -0.25);
        CHECK(std::isfinite(s));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(std::isfinite(ds));
        CHECK(ds >= 0.0);
    }
    CHECK(sigmoid(-0.25, 10.0, -0.25) == 0.5);
    CHECK_THAT(sigmoid_slope(-0.25, 10.0, -0.25), WithinAbs(2.5, 1e-15));
    const double h = 1e-6;
    CHECK_THAT(sigmoid_slope(0.1, 10.0, -0.25),
               WithinAbs((sigmoid(0.1 + h, 10.0, -0.25) - sigmoid(0.1 - h, 10.0, -0.25)) / (2 * h), 1e-8));
}

TEST_CASE("Model selection and validation", "[models]") {
    CHECK(model_of(NoCoupling{}) == Model::Single);
    CHECK(model_of(LinearCoupling{}) == Model::DimerLinear);
    CHECK(model_of(SigmoidCoupling{}) == Model::DimerSigmoid);
    for (const auto m : {Model::Single, Model::DimerLinear, Model::DimerSigmoid}) {
        CHECK(parse_model(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_model("trimer"), InvalidArgument);
    CHECK(state_dimension(NoCoupling{}) == 2);
    CHECK(state_dimension(SigmoidCoupling{}) == 4);
    CHECK(coupling_strength(LinearCoupling{0.02}) == 0.02);

    DmlParams p;
    CHECK_NOTHROW(p.validate());
    p.I = -0.5;
    CHECK_NOTHROW(p.validate());
    for (double DmlParams::*field : {&DmlParams::A, &DmlParams::alpha, &DmlParams::gamma}) {
        DmlParams bad;
        bad.*field = 0.0;
        CHECK_THROWS_AS(bad.validate(), InvalidArgument);
        bad.*field = -1.0;
        CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    }
    CHECK_THROWS_AS(validate_coupling(LinearCoupling{-0.1}), InvalidArgument);
    SigmoidCoupling syn;
    syn.lambda = 0.0;
    CHECK_THROWS_AS(validate_coupling(syn), InvalidArgument);
    syn = SigmoidCoupling{};
    syn.sigma = -1e-3;
    CHECK_THROWS_AS(validate_coupling(syn), InvalidArgument);
}

TEST_CASE("Solver adapter dispatches on the coupling", "[models]") {
    const auto p = with_current(0.019);
    const std::vector<double> s2{0.3, 0.2};
    const std::vector<double> s4{0.1, 0.1, -0.2, 0.1};
    const auto single = make_rhs(p, NoCoupling{})(0.0, s2);
    const auto expected = rhs_single(0.0, {0.3, 0.2}, p);
    CHECK(single == std::vector<double>(expected.begin(), expected.end()));

    const auto linear = make_rhs(p, LinearCoupling{0.008})(0.0, s4);
    const auto expected_linear = rhs_coupled_linear(0.0, {0.1, 0.1, -0.2, 0.1}, p, 0.008);
    CHECK(linear == std::vector<double>(expected_linear.begin(), expected_linear.end()));

    CHECK_THROWS_AS(make_rhs(p, NoCoupling{})(0.0, s4), DimensionMismatch);
    CHECK_THROWS_AS(make_rhs(p, SigmoidCoupling{})(0.0, s2), DimensionMismatch);
}

TEST_CASE("Excitatory synapse advisory", "[models]") {
    Trajectory traj(0.0, 0.1, 4);
    traj.push_back(std::vector<double>{0.1, 0.1, -0.2, 0.1});
    CHECK(synapse_excitatory(traj, SigmoidCoupling{}));
    traj.push_back(std::vector<double>{2.5, 0.1, -0.2, 0.1});
    CHECK_FALSE(synapse_excitatory(traj, SigmoidCoupling{}));
    CHECK(synapse_excitatory(traj, LinearCoupling{}));
}
