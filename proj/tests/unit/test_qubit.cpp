#include <cmath>
#include <numbers>

#include "doctest.h"
#include "squeezelab/channels.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"
#include "squeezelab/qubit.hpp"
#include "squeezelab/wsolve.hpp"
#include "support.hpp"

using namespace squeezelab;
using algebra::SplitStrategy;
using std::numbers::pi;
using Complex = std::complex<double>;

TEST_SUITE("qubit") {

TEST_CASE("encode/decode round trip is exact") {
    for (int i = 0; i < 50; ++i) {
        const double theta = testsupport::uniform(-3.0, 3.0);
        const double phi = testsupport::uniform(0.0, 2.0 * pi - 1e-9);
        const double dq = testsupport::uniform(0.4, 1.5);
        const double sqp = testsupport::uniform(-0.2, 0.2);
        const double dp = std::sqrt((0.25 + sqp * sqp)) / dq;
        const auto s = qubit::qubit_encode(theta, phi, dq, dp, sqp);
        const auto c = qubit::qubit_decode(s);
        CHECK(c.theta == doctest::Approx(theta).epsilon(1e-12));
        CHECK(c.phi == doctest::Approx(phi).epsilon(1e-12));
        CHECK(std::norm(c.a) + std::norm(c.b) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.a.imag() == 0.0);
        CHECK(c.a.real() >= 0.0);
    }
    CHECK_THROWS_AS(qubit::qubit_encode(0.0, 0.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("theta = 0 gives even odds; vacuum decodes to the origin") {
    const auto s = qubit::qubit_encode(0.0, 0.3, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0);
    const auto probs = qubit::measure_p1(s);
    CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-14));

    gaussian::GaussianState vac;
    vac.cov = 0.5 * Eigen::Matrix2d::Identity();
    const auto c = qubit::qubit_decode(vac);
    CHECK(c.theta == 0.0);
    CHECK(c.phi == 0.0);
    CHECK(std::abs(c.a - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(c.b - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("large theta saturates p1") {
    const auto s = qubit::qubit_encode(5.0, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0);
    CHECK(qubit::measure_p1(s)[1] > 1.0 - 1e-11);
}

TEST_CASE("decode rejects mixed states") {
    CHECK_THROWS_AS(qubit::qubit_decode(testsupport::random_mixed_state()),
                    std::invalid_argument);
}

TEST_CASE("measure_p1: erfc value and quadrature oracle on random pure states") {
    gaussian::GaussianState s;
    s.cov << 0.5, 0.0, 0.0, 0.5;
    s.mean << 3.0, 0.0;
    CHECK(qubit::measure_p1(s)[1] == doctest::Approx(0.5 * std::erfc(-3.0)).epsilon(1e-14));

    for (int i = 0; i < 100; ++i) {
        const auto st = testsupport::random_pure_state();
        const double sig = std::sqrt(st.cov(0, 0));
        auto dens = [&](double x) { return std::norm(gaussian::wavefunction(st, x)); };
        const double hi = std::max(0.0, st.mean(0)) + 10.0 * sig;
        const double p1 = testsupport::simpson(dens, 0.0, hi, 4001);
        CHECK(qubit::measure_p1(st)[1] == doctest::Approx(p1).epsilon(1e-8));
    }
}

TEST_CASE("parity swaps the outcome probabilities") {
    const auto s = testsupport::random_state();
    const auto p = qubit::measure_p1(s);
    const auto q = qubit::measure_p1(gaussian::apply_parity(s));
    CHECK(p[0] == doctest::Approx(q[1]).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(q[0]).epsilon(1e-12));
}

TEST_CASE("gates: X negates theta, Z adds pi to phi, ZX = Y, XX = 1") {
    const auto s = qubit::qubit_encode(1.0, 0.4, 0.9, std::sqrt(0.25 + 0.01) / 0.9, 0.1);

    const auto flipped = qubit::qubit_decode(qubit::gate(s, qubit::Gate::X));
    CHECK(flipped.theta == doctest::Approx(-1.0).epsilon(1e-12));

    const auto zed = qubit::qubit_decode(qubit::gate(s, qubit::Gate::Z));
    CHECK(zed.phi == doctest::Approx(0.4 + pi).epsilon(1e-12));
    CHECK(zed.theta == doctest::Approx(1.0).epsilon(1e-12));

    const auto zx = qubit::qubit_decode(qubit::gate(qubit::gate(s, qubit::Gate::X), qubit::Gate::Z));
    const auto y = qubit::qubit_decode(qubit::gate(s, qubit::Gate::Y));
    CHECK(zx.theta == doctest::Approx(y.theta).epsilon(1e-14));
    CHECK(zx.phi == doctest::Approx(y.phi).epsilon(1e-14));

    const auto twice = qubit::qubit_decode(qubit::gate(qubit::gate(s, qubit::Gate::X), qubit::Gate::X));
    const auto original = qubit::qubit_decode(s);
    CHECK(twice.theta == original.theta);
    CHECK(twice.phi == original.phi);
}

TEST_CASE("not_circuit: vacuum input stays centered and pure") {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const auto out = qubit::not_circuit(m, Complex(0, 0), 1.0, SplitStrategy::q_filter, 1e-12);
    CHECK(out.mean.norm() < 1e-9);
    CHECK(gaussian::purity(out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("not_circuit: output is |-beta e^{-w4/2}> in the B(t*) frame") {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const double t_star = 1.0;
    const Complex beta(1.0, 0.0);
    for (auto strat : {SplitStrategy::q_filter, SplitStrategy::example_symmetric}) {
        const auto out = qubit::not_circuit(m, beta, t_star, strat, 1e-12);
        const auto b_star = channels::lowering_b_at(m, t_star, strat, 1e-12);

        const Complex amp = b_star.u * out.mean(0) + b_star.v * out.mean(1);
        CHECK(std::abs(amp - (-beta * std::exp(-0.5))) < 1e-9);  // w4(t*) = 1

        const auto target = gaussian::eigenstate_of(b_star, -beta * std::exp(-0.5));
        CHECK(gaussian::fidelity(out, target) >= 1.0 - 1e-9);
    }
}

TEST_CASE("not_circuit amplitude map is split-strategy independent") {
    // The input eigenstate depends on which split defines B(t*), so the raw
    // moments differ between strategies; the circuit's contract, the
    // amplitude map beta -> -beta e^{-w4/2} read in the matching B-frame,
    // must not.
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const Complex beta(0.7, -0.4);
    Complex amps[2];
    int i = 0;
    for (auto strat : {SplitStrategy::q_filter, SplitStrategy::example_symmetric}) {
        const auto out = qubit::not_circuit(m, beta, 1.0, strat, 1e-12);
        CHECK(gaussian::purity(out) == doctest::Approx(1.0).epsilon(1e-9));
        const auto b_star = channels::lowering_b_at(m, 1.0, strat, 1e-12);
        amps[i++] = b_star.u * out.mean(0) + b_star.v * out.mean(1);
    }
    CHECK(std::abs(amps[0] - amps[1]) < 1e-9);
    CHECK(std::abs(amps[0] - (-beta * std::exp(-0.5))) < 1e-9);
}

TEST_CASE("eavesdropper filtering away from t* recovers only mixed states") {
    const auto m = model::make_squeezing_model(1.0, 2.0, 1.0, 1.0, 2.0);
    const double t_star = 1.0;
    const auto strat = SplitStrategy::example_symmetric;
    const auto c_star = channels::lowering_c_at(m, t_star, strat, 1e-12);
    const auto s0 = gaussian::eigenstate_of(c_star, Complex(1.0, 0.0));

    double delta0 = 1.0;
    for (double t : {0.8, 1.2, 0.7, 1.35}) {
        // filter applied at the wrong time = deconvolution picture at t
        const double p = gaussian::purity(channels::dp_propagate(m, s0, t, strat, 1e-12));
        CHECK(p < 1.0);
        delta0 = std::min(delta0, 1.0 - p);
    }
    CHECK(delta0 > 1e-4);  // measured impurity floor of the eavesdropper
}

TEST_CASE("cnot: symmetric vacuum case") {
    const auto a = algebra::standard_lowering(1.0);
    qubit::GridSpec2D spec;
    spec.n = 128;
    const auto res = qubit::cnot_apply(Complex(0, 0), a, spec);
    CHECK(res.grid.norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.outcome.control_prob[1] == doctest::Approx(0.5).epsilon(1e-6));
    // beta = 0: both branches identical, target distribution symmetric
    CHECK(res.outcome.conditional[0][0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.outcome.conditional[1][1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("cnot: norm, row sums, conditional mirror, erfc cross-check") {
    const double nu = 0.3;
    const auto op = algebra::from_bogoliubov(std::sqrt(1.0 + nu * nu), nu, 1.0);
    const Complex beta(1.0, 0.5);
    qubit::GridSpec2D spec;
    spec.n = 128;
    const auto res = qubit::cnot_apply(beta, op, spec);
    CHECK(res.grid.norm == doctest::Approx(1.0).epsilon(1e-6));
    for (int c = 0; c < 2; ++c)
        CHECK(res.outcome.conditional[c][0] + res.outcome.conditional[c][1] ==
              doctest::Approx(1.0).epsilon(1e-6));

    // conditional outcome given the control equals the half-line probability
    // of the corresponding displaced target state
    const auto plus = gaussian::eigenstate_of(op, beta);
    const auto minus = gaussian::eigenstate_of(op, -beta);
    CHECK(res.outcome.conditional[0][1] ==
          doctest::Approx(qubit::measure_p1(plus)[1]).epsilon(1e-8));
    CHECK(res.outcome.conditional[1][1] ==
          doctest::Approx(qubit::measure_p1(minus)[1]).epsilon(1e-8));

    // real beta: the flip mirrors the conditional distribution
    const auto real_res = qubit::cnot_apply(Complex(0.9, 0.0), op, spec);
    CHECK(real_res.outcome.conditional[0][0] ==
          doctest::Approx(real_res.outcome.conditional[1][1]).epsilon(1e-8));
    CHECK(real_res.outcome.conditional[0][1] ==
          doctest::Approx(real_res.outcome.conditional[1][0]).epsilon(1e-8));
}

TEST_CASE("cnot grid values follow the wavefunction product") {
    const auto a = algebra::standard_lowering(1.0);
    const Complex beta(0.6, -0.2);
    qubit::GridSpec2D spec;
    spec.n = 64;
    const auto res = qubit::cnot_apply(beta, a, spec);
    const auto vac = gaussian::eigenstate_of(a, Complex(0, 0));
    const auto plus = gaussian::eigenstate_of(a, beta);
    const auto minus = gaussian::eigenstate_of(a, -beta);
    for (int i : {5, 31, 60}) {
        for (int j : {7, 32, 59}) {
            const double q1 = res.grid.q1(i), q2 = res.grid.q2(j);
            const Complex expected = gaussian::wavefunction(vac, q1) *
                                     (q1 > 0 ? gaussian::wavefunction(minus, q2)
                                             : gaussian::wavefunction(plus, q2));
            CHECK(std::abs(res.grid.at(i, j) - expected) < 1e-12);
        }
    }
}

}  // TEST_SUITE
