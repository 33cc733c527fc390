#include <doctest.h>

#include "rabi/displaced.hpp"
#include "rabi/eigensolver.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/observables.hpp"

using namespace rabi;

namespace {

// Numeric oracle for the displaced-Fock overlaps: build |m>_A = displaced Fock
// state at -q and |n>_B at +q explicitly in a large Fock truncation and take
// the inner product. |m>_d = D(d)|m> is assembled by m applications of the
// displaced creation operator a† - d̄... here all real: column m of
// D(d) = e^{d(a†-a)}, computed via matrix exponential by scaling-and-squaring
// is overkill — instead displace through the recursion on coherent-state
// derivatives: |m>_d = (a† - d)^m / sqrt(m!) |0>_d with |0>_d the coherent
// state at d.
Eigen::VectorXd displaced_fock(int m, double d, int n_big) {
    Eigen::VectorXd v(n_big + 1);
    const double half = -0.5 * d * d;
    for (int n = 0; n <= n_big; ++n) {
        v(n) = (d == 0.0 && n > 0)
                   ? 0.0
                   : std::exp(half + n * std::log(std::abs(d) > 0 ? std::abs(d) : 1.0) -
                              0.5 * std::lgamma(n + 1.0));
        if (d < 0.0 && (n % 2)) v(n) = -v(n);
        if (d == 0.0) v(n) = (n == 0) ? 1.0 : 0.0;
    }
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n_big + 1);
        for (int n = 0; n + 1 <= n_big; ++n) w(n + 1) = std::sqrt(n + 1.0) * v(n);
        w -= d * v;
        v = w / std::sqrt(k + 1.0);
    }
    return v;
}

}  // namespace

TEST_CASE("overlap_D against the explicit displaced-state oracle") {
    const int n_big = 160;
    for (double q : {0.3, 1.0, 2.2}) {
        for (int m : {0, 1, 3, 6}) {
            for (int n : {0, 2, 5}) {
                const Eigen::VectorXd am = displaced_fock(m, -q, n_big);
                const Eigen::VectorXd bn = displaced_fock(n, q, n_big);
                // D carries the (-1)^n ansatz phase on the B-sector states
                const double oracle = ((n % 2) ? -1.0 : 1.0) * am.dot(bn);
                CHECK(overlap_D(m, n, q) == doctest::Approx(oracle).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("overlap_D closed forms and special cases") {
    const double q = 0.7;
    CHECK(overlap_D(0, 0, q) == doctest::Approx(std::exp(-2.0 * q * q)));
    // D_{1,0} = 2q e^{-2q^2}, D_{1,1} = (4q^2 - 1) e^{-2q^2}
    CHECK(overlap_D(1, 0, q) == doctest::Approx(2.0 * q * std::exp(-2.0 * q * q)));
    CHECK(overlap_D(1, 1, q) ==
          doctest::Approx((4.0 * q * q - 1.0) * std::exp(-2.0 * q * q)));
    CHECK(overlap_D(0, 0, 0.0) == 1.0);
    CHECK(overlap_D(3, 3, 0.0) == -1.0);
    CHECK(overlap_D(2, 3, 0.0) == 0.0);
    CHECK_THROWS_AS(overlap_D(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(overlap_D(0, 0, -0.5), std::invalid_argument);

    // symmetry and large-index stability (no overflow, bounded by 1)
    CHECK(overlap_D(7, 4, 1.3) == doctest::Approx(overlap_D(4, 7, 1.3)));
    const double big = overlap_D(120, 118, 2.6);
    CHECK(std::isfinite(big));
    CHECK(std::abs(big) <= 1.0 + 1e-12);
}

TEST_CASE("branch energies and amplitudes") {
    ModelParams p;
    p.delta = 0.4;
    p.epsilon = 0.1;
    p.lambda = 0.6;
    const DisplacedSolution s = energies(0, p);
    const double d00 = overlap_D(0, 0, 0.6);
    const double r = std::hypot(p.epsilon, p.delta * d00);
    CHECK(s.e_plus == doctest::Approx(-0.36 + 0.5 * r));
    CHECK(s.e_minus == doctest::Approx(-0.36 - 0.5 * r));

    // amplitudes are unit, d > 0, and diagonalize the 2x2 block
    for (int branch : {0, 1}) {
        const double c = branch ? s.c_plus : s.c_minus;
        const double d = branch ? s.d_plus : s.d_minus;
        const double e = branch ? s.e_plus : s.e_minus;
        CHECK(c * c + d * d == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d > 0.0);
        const double base = p.omega * (0 - p.beta());
        // (base + eps/2) c + (Delta D/2) d = E c ; (Delta D/2) c + (base - eps/2) d = E d
        CHECK((base + 0.5 * p.epsilon) * c + 0.5 * p.delta * d00 * d ==
              doctest::Approx(e * c).epsilon(1e-12));
        CHECK(0.5 * p.delta * d00 * c + (base - 0.5 * p.epsilon) * d ==
              doctest::Approx(e * d).epsilon(1e-12));
    }
}

TEST_CASE("branch amplitudes survive catastrophic cancellation") {
    // eps >> |Delta D|: naive eps - r cancels; the stable form must not.
    ModelParams p;
    p.delta = 1e-12;
    p.epsilon = 1.0;
    const DisplacedSolution s = energies(0, p);
    // exact small-angle limit: c_- ≈ -x/(2 eps) with x = Delta D_00
    CHECK(s.c_minus == doctest::Approx(-0.5e-12).epsilon(1e-6));
    CHECK(s.d_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.c_plus == doctest::Approx(1.0).epsilon(1e-12));

    // Delta D = 0 limits
    ModelParams pz;
    pz.epsilon = 0.5;
    pz.lambda = 0.0;
    pz.delta = 0.0;
    const DisplacedSolution sz = energies(0, pz);
    CHECK(sz.c_minus == 0.0);
    CHECK(sz.d_minus == 1.0);
    CHECK(sz.c_plus == 1.0);
    CHECK(sz.d_plus == 0.0);
}

TEST_CASE("ground_sigma_z closed form and edge behavior") {
    // exact midpoint: beta = beta_c gives -1/sqrt(3)
    for (double kappa : {1e-1, 1e-2, 1e-6}) {
        const double bc = -std::log(2.0 * kappa * kappa) / 4.0;
        CHECK(ground_sigma_z(bc, kappa) ==
              doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    }

    // direct formula at moderate arguments
    CHECK(ground_sigma_z(0.5, 0.25) ==
          doctest::Approx(-0.25 / std::sqrt(0.0625 + std::exp(-2.0))));

    // limits and symmetry
    CHECK(ground_sigma_z(0.0, 0.0) == 0.0);
    CHECK(ground_sigma_z(3.0, -0.1) == -ground_sigma_z(3.0, 0.1));
    CHECK(ground_sigma_z(200.0, 1e-300) == doctest::Approx(0.0));
    CHECK(ground_sigma_z(1000.0, 1e-300) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(ground_sigma_z(0.0, 1e6) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ground_sigma_z(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("ground_sigma_z agrees with dense diagonalization") {
    ModelParams p;
    p.delta = 1e-2;
    p.epsilon = 1e-4;
    for (double lam : {0.4, 0.9, 1.3}) {
        p.lambda = lam;
        const FockTruncation t = FockTruncation::fixed(256);
        const GroundState g = ground(build_rabi(p, t));
        const double numeric = population_inversion(g.psi, Frame::rabi);
        const double analytic = ground_sigma_z(p.beta(), p.kappa());
        CHECK(std::abs(numeric - analytic) < 5e-3);
    }
}

TEST_CASE("coherent amplitudes") {
    const Eigen::VectorXd v = coherent_amplitudes(0.8, 60);
    CHECK(v(0) == doctest::Approx(std::exp(-0.32)));
    CHECK(v(1) == doctest::Approx(0.8 * std::exp(-0.32)));
    CHECK(v.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));

    const Eigen::VectorXd w = coherent_amplitudes(-0.8, 60);
    for (int n = 0; n <= 60; ++n) {
        CHECK(w(n) == doctest::Approx(((n % 2) ? -1.0 : 1.0) * v(n)));
    }

    const Eigen::VectorXd z = coherent_amplitudes(0.0, 5);
    CHECK(z(0) == 1.0);
    CHECK(z.tail(5).norm() == 0.0);
}

TEST_CASE("analytic ground wavefunction overlaps the numeric ground state") {
    ModelParams p;
    p.delta = 1e-2;
    p.epsilon = 1e-4;
    p.lambda = 1.2;
    const FockTruncation t = FockTruncation::fixed(128);
    const Eigen::VectorXd psi = ground_wavefunction(p, t);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));

    const GroundState g = ground(build_rabi(p, t));
    CHECK(std::abs(psi.dot(g.psi)) > 0.999);

    // its population inversion reproduces the closed form
    CHECK(population_inversion(psi, Frame::rabi) ==
          doctest::Approx(ground_sigma_z(p.beta(), p.kappa())).epsilon(1e-10));
}

TEST_CASE("ground_wavefunction guards") {
    ModelParams p;
    p.epsilon = 0.1;
    p.lambda = 0.5;
    CHECK_THROWS_AS(ground_wavefunction(p, FockTruncation::fixed(32)),
                    std::domain_error);  // delta == 0

    ModelParams big;
    big.delta = 1e-2;
    big.lambda = 4.0;  // coherent support far beyond n_max = 4
    CHECK_THROWS_AS(ground_wavefunction(big, FockTruncation::fixed(4)),
                    std::runtime_error);
}
