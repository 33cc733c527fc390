#include <doctest.h>

#include "rabi/eigensolver.hpp"
#include "rabi/operators.hpp"
#include "rabi/params.hpp"
#include "rabi/truncation.hpp"

using namespace rabi;

TEST_CASE("basis index map") {
    CHECK(basis_index(Spin::up, 0, 7) == 0);
    CHECK(basis_index(Spin::down, 3, 7) == 7);
    CHECK_THROWS_AS(basis_index(Spin::up, 8, 7), std::out_of_range);
    CHECK_THROWS_AS(basis_index(Spin::up, -1, 7), std::out_of_range);

    // round-trip for every (spin, n)
    const int n_max = 13;
    for (int n = 0; n <= n_max; ++n) {
        for (Spin s : {Spin::up, Spin::down}) {
            const int row = basis_index(s, n, n_max);
            const BasisIndex b = basis_unindex(row, n_max);
            CHECK(b.spin == s);
            CHECK(b.n == n);
        }
    }
}

TEST_CASE("model params derived scales") {
    ModelParams p;
    p.delta = 0.2;
    p.epsilon = 0.05;
    p.omega = 2.0;
    p.lambda = 1.0;
    p.validate();
    CHECK(p.q() == doctest::Approx(0.5));
    CHECK(p.beta() == doctest::Approx(0.25));
    CHECK(p.kappa() == doctest::Approx(0.25));

    p.delta = 0.0;
    CHECK_THROWS_AS(p.kappa(), std::domain_error);

    p.omega = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.omega = 1.0;
    p.lambda = -0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("boson operators") {
    const FockTruncation t = FockTruncation::fixed(3);
    const BosonOps b = build_boson_ops(t);

    Eigen::VectorXd one = Eigen::VectorXd::Zero(4);
    one(1) = 1.0;
    CHECK((b.a * one - Eigen::VectorXd::Unit(4, 0)).norm() == 0.0);

    Eigen::VectorXd vac = Eigen::VectorXd::Unit(4, 0);
    CHECK((b.a * vac).norm() == 0.0);

    CHECK(b.parity_phase.diagonal() == Eigen::Vector4d(1, -1, 1, -1));
    CHECK(b.a_dag == b.a.transpose());

    // a†a == n up to one ulp in sqrt(n+1)^2; parity^2 == identity
    CHECK((b.a_dag * b.a - b.n_op).cwiseAbs().maxCoeff() < 1e-15 * t.n_max);
    CHECK((b.parity_phase * b.parity_phase -
           Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("(a + a_dag)^2 diagonal is 2n+1 away from the truncation edge") {
    const int n_max = 12;
    const BosonOps b = build_boson_ops(FockTruncation::fixed(n_max));
    const Eigen::MatrixXd x = b.a + b.a_dag;
    CHECK(x == x.transpose());
    const Eigen::MatrixXd x2 = x * x;
    for (int n = 0; n < n_max; ++n) {
        CHECK(x2(n, n) == doctest::Approx(2.0 * n + 1.0));
    }
    // the edge element misses the (n_max+1) contribution
    CHECK(x2(n_max, n_max) == doctest::Approx(static_cast<double>(n_max)));
}

TEST_CASE("tensor product follows the interleaved index map") {
    const int n_max = 6;
    const FockTruncation t = FockTruncation::fixed(n_max);
    const BosonOps b = build_boson_ops(t);
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(n_max + 1, n_max + 1);

    const Eigen::MatrixXd sz = tensor_spin_boson(pauli::sigma_z(), id_b);
    CHECK(sz(basis_index(Spin::up, 5, n_max), basis_index(Spin::up, 5, n_max)) == 1.0);
    CHECK(sz(basis_index(Spin::down, 2, n_max), basis_index(Spin::down, 2, n_max)) ==
          -1.0);

    const Eigen::MatrixXd sx = tensor_spin_boson(pauli::sigma_x(), id_b);
    for (int n = 0; n <= n_max; ++n) {
        Eigen::VectorXd up = Eigen::VectorXd::Unit(t.dim(), basis_index(Spin::up, n, n_max));
        Eigen::VectorXd flipped = sx * up;
        CHECK(flipped(basis_index(Spin::down, n, n_max)) == 1.0);
        CHECK(flipped.norm() == 1.0);
    }

    const Eigen::MatrixXd nop = tensor_spin_boson(pauli::identity(), b.n_op);
    CHECK(nop(basis_index(Spin::down, 4, n_max), basis_index(Spin::down, 4, n_max)) ==
          4.0);
}

TEST_CASE("choose_truncation: decoupled oscillator converges immediately") {
    ModelParams p;
    p.delta = 0.1;
    const FockTruncation t = choose_truncation(p, TruncationTarget::ground, 1e-10);
    CHECK(t.n_max <= 32);
    const GroundState g = ground(build_rabi(p, t));
    CHECK(g.energy == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("choose_truncation: strong coupling needs a large cutoff") {
    ModelParams p;
    p.delta = 1e-2;
    p.epsilon = 1e-8;
    p.lambda = 2.6;  // beta ~ 6.76
    const FockTruncation t = choose_truncation(p, TruncationTarget::ground, 1e-10);
    CHECK(t.n_max >= 79);  // starting guess 4(q^2+3q)+20 rounds up to 79 here

    // doubling oracle: the accepted cutoff is actually converged
    const double e1 = ground(build_rabi(p, t)).energy;
    const double e2 = ground(build_rabi(p, FockTruncation::fixed(2 * t.n_max))).energy;
    CHECK(std::abs(e1 - e2) < 1e-10 * p.omega);
}

TEST_CASE("choose_truncation: agrees with a large-truncation reference") {
    ModelParams p;
    p.delta = 1e-2;
    p.epsilon = 1e-4;
    p.lambda = 0.3;
    const FockTruncation t = choose_truncation(p, TruncationTarget::ground, 1e-10);
    const double e = ground(build_rabi(p, t)).energy;
    const double ref = ground(build_rabi(p, FockTruncation::fixed(512))).energy;
    CHECK(std::abs(e - ref) < 1e-10 * p.omega);
}
