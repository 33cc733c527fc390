#include <doctest.h>

#include "rabi/eigensolver.hpp"
#include "rabi/experiment.hpp"

using namespace rabi;

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Driven transmon setting that lands deep in the Rabi regime.
CircuitQedParams circuit_rabi_setting() {
    CircuitQedParams c;
    c.omega_b = kTwoPi * 6.02;
    c.omega_1 = kTwoPi * 6.0;
    c.omega_2 = kTwoPi * 4.0;
    c.Omega_3 = kTwoPi * 1.0;  // (omega_1 - omega_2)/2
    c.Omega_1 = c.Omega_3 + kTwoPi * 20e-6;
    c.Omega_2 = kTwoPi * 0.4e-3;
    c.G = kTwoPi * 0.04;
    return c;
}

}  // namespace

TEST_CASE("regime classification thresholds") {
    ModelParams p;
    p.delta = 0.01;
    p.lambda = 1.0;
    CHECK(classify_regime(p) == Regime::rabi_valid);

    p.delta = 0.9;
    p.lambda = 0.1;
    CHECK(classify_regime(p) == Regime::jc_valid);

    p.delta = 0.9;
    p.lambda = 1.0;
    CHECK(classify_regime(p) == Regime::neither);

    // boundary values are inclusive
    p.delta = 0.05;
    p.lambda = 0.5;
    CHECK(classify_regime(p) == Regime::rabi_valid);
    p.delta = 0.9;
    p.lambda = 0.2;
    CHECK(classify_regime(p) == Regime::jc_valid);
}

TEST_CASE("circuit-QED map reproduces the effective spectrum") {
    const CircuitQedParams c = circuit_rabi_setting();
    const MappedModel m = map_circuit_qed(c);
    CHECK(m.params.delta == doctest::Approx(kTwoPi * 0.4e-3));
    CHECK(m.params.epsilon == doctest::Approx(kTwoPi * 20e-6));
    CHECK(m.params.omega == doctest::Approx(kTwoPi * 0.02));
    CHECK(m.params.lambda == doctest::Approx(kTwoPi * 0.02));
    CHECK(m.regime == Regime::rabi_valid);

    const FockTruncation t = FockTruncation::fixed(24);
    const Spectrum direct = eigh(build_circuit_qed_effective(c, t));
    const Spectrum mapped = eigh(build_rabi(m.params, t));
    CHECK((direct.values - mapped.values).cwiseAbs().maxCoeff() <
          1e-10 * m.params.omega);
}

TEST_CASE("circuit-QED map with weak coupling classifies as JC") {
    CircuitQedParams c = circuit_rabi_setting();
    c.G = kTwoPi * 0.004;  // lambda/omega = 0.1
    const MappedModel m = map_circuit_qed(c);
    CHECK(m.regime == Regime::jc_valid);
}

TEST_CASE("circuit-QED map validation") {
    CircuitQedParams c = circuit_rabi_setting();
    c.Omega_3 *= 1.001;  // breaks the rotating-frame condition
    CHECK_THROWS_AS(map_circuit_qed(c), std::invalid_argument);

    CircuitQedParams c2 = circuit_rabi_setting();
    c2.omega_b = c2.omega_1 - 0.1;  // effective omega <= 0
    CHECK_THROWS_AS(map_circuit_qed(c2), std::invalid_argument);
}

TEST_CASE("NV map is an exact matrix identity up to the Delta sign") {
    NvParams nv;
    nv.Omega_prime = 0.02;
    nv.Delta_prime = 1e-4;
    nv.omega_m = 1.0;
    nv.lambda_prime = 0.8;
    const MappedModel m = map_nv(nv);
    CHECK(m.params.delta == -0.02);
    CHECK(m.params.omega == 1.0);
    CHECK(m.regime == Regime::rabi_valid);

    const FockTruncation t = FockTruncation::fixed(32);
    const Spectrum direct = eigh(build_nv_hamiltonian(nv, t));
    const Spectrum mapped = eigh(build_rabi(m.params, t));
    CHECK((direct.values - mapped.values).cwiseAbs().maxCoeff() < 1e-10);

    nv.omega_m = 0.0;
    CHECK_THROWS_AS(map_nv(nv), std::invalid_argument);
}

TEST_CASE("trapped-ion map is an exact matrix identity") {
    IonParams ion;
    ion.Omega_tilde = 0.03;
    ion.epsilon_tilde = 5e-5;
    ion.nu_tilde = 1.0;
    ion.eta = 1.2;
    CHECK(ion.g_tilde() == doctest::Approx(0.6));

    const MappedModel m = map_ion(ion);
    CHECK(m.params.delta == 0.03);
    CHECK(m.params.epsilon == doctest::Approx(1e-4));
    CHECK(m.params.lambda == doctest::Approx(0.6));
    CHECK(m.regime == Regime::rabi_valid);

    const FockTruncation t = FockTruncation::fixed(32);
    const Spectrum direct = eigh(build_ion_hamiltonian(ion, t));
    const Spectrum mapped = eigh(build_rabi(m.params, t));
    CHECK((direct.values - mapped.values).cwiseAbs().maxCoeff() < 1e-10);

    ion.nu_tilde = 0.0;
    CHECK_THROWS_AS(map_ion(ion), std::invalid_argument);
    ion.nu_tilde = 1.0;
    ion.eta = -0.1;
    CHECK_THROWS_AS(map_ion(ion), std::invalid_argument);
}
