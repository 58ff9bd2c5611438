#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "offpol/analysis.hpp"
#include "offpol/errors.hpp"
#include "offpol/experiments.hpp"
#include "support/generators.hpp"

using namespace offpol;

TEST_CASE("expected_system on the two-state example") {
    const Benchmark b = build_theta_2theta();
    const ExpectedSystem s0 = expected_system(b.mdp, b.target, b.behavior, b.features, 0.0);
    CHECK(s0.a.rows() == 1);
    CHECK(std::abs(s0.a(0, 0) - (-0.2)) <= 1e-12);
    CHECK(std::abs(s0.min_sym_eigenvalue - (-0.4)) <= 1e-12);
    CHECK_FALSE(is_positive_definite(s0));

    const ExpectedSystem s1 = expected_system(b.mdp, b.target, b.behavior, b.features, 1.0);
    CHECK(std::abs(s1.a(0, 0) - 2.3) <= 1e-12);
    CHECK(std::abs(s1.min_sym_eigenvalue - 4.6) <= 1e-12);
    CHECK(is_positive_definite(s1));
}

TEST_CASE("expected_system on the three-state chain at eta = 0.5") {
    const Benchmark b = build_chain3();
    const ExpectedSystem s = expected_system(b.mdp, b.target, b.behavior, b.features, 0.5);
    CHECK(s.a(0, 0) == doctest::Approx(4.05 / 11.0).epsilon(1e-9));
    CHECK(s.a(0, 1) == doctest::Approx(-3.45 / 11.0).epsilon(1e-9));
    CHECK(s.a(1, 0) == doctest::Approx(-3.45 / 11.0).epsilon(1e-9));
    CHECK(s.a(1, 1) == doctest::Approx(4.05 / 11.0).epsilon(1e-9));
    CHECK(s.b[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-9));
    CHECK(s.b[1] == doctest::Approx(6.0 / 11.0).epsilon(1e-9));
}

TEST_CASE("positive definiteness flips between eta 0.4 and 0.5 on the chain") {
    const Benchmark b = build_chain3();
    const ExpectedSystem s04 = expected_system(b.mdp, b.target, b.behavior, b.features, 0.4);
    const ExpectedSystem s05 = expected_system(b.mdp, b.target, b.behavior, b.features, 0.5);
    CHECK_FALSE(is_positive_definite(s04));
    CHECK(is_positive_definite(s05));
    CHECK(s04.min_sym_eigenvalue == doctest::Approx(-0.2 / 11.0).epsilon(1e-6));
    CHECK(s05.min_sym_eigenvalue == doctest::Approx(1.2 / 11.0).epsilon(1e-6));
}

TEST_CASE("eta_lower_bound examples") {
    const Benchmark t2t = build_theta_2theta();
    CHECK(std::abs(eta_lower_bound(t2t.mdp, t2t.target, t2t.behavior) - 0.8) <= 1e-12);

    const Benchmark chain = build_chain3();
    CHECK(eta_lower_bound(chain.mdp, chain.target, chain.behavior) ==
          doctest::Approx(8.0).epsilon(1e-8));

    // on-policy: d^T P_pi = d, so the ratio collapses to gamma < 1 and the bound is 0
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto instance = testgen::random_instance(rng);
        CHECK(eta_lower_bound(instance.mdp, instance.behavior, instance.behavior) == 0.0);
    }
}

TEST_CASE("fixed_point examples") {
    const Benchmark chain = build_chain3();
    const ExpectedSystem s =
        expected_system(chain.mdp, chain.target, chain.behavior, chain.features, 0.5);
    const Vector theta = fixed_point(s);
    CHECK(theta[0] == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(theta[1] == doctest::Approx(10.0).epsilon(1e-9));

    const Benchmark t2t = build_theta_2theta();
    const Vector theta2 =
        fixed_point(expected_system(t2t.mdp, t2t.target, t2t.behavior, t2t.features, 1.0));
    CHECK(std::abs(theta2[0]) <= 1e-12);

    // Baird's features are rank deficient, so A is singular at every eta
    const Benchmark baird = build_baird();
    for (double eta : {0.0, 6.0, 10.0})
        CHECK_THROWS_AS(
            fixed_point(expected_system(baird.mdp, baird.target, baird.behavior,
                                        baird.features, eta)),
            RankError);
}

TEST_CASE("fixed point satisfies the projected Bellman characterization") {
    const Benchmark chain = build_chain3();
    const ExpectedSystem s =
        expected_system(chain.mdp, chain.target, chain.behavior, chain.features, 0.5);
    const Vector theta = fixed_point(s);
    CHECK(fixed_point_consistency(chain.mdp, chain.target, chain.behavior, chain.features, 0.5,
                                  theta) <= 1e-9);

    const Benchmark t2t = build_theta_2theta();
    CHECK(fixed_point_consistency(t2t.mdp, t2t.target, t2t.behavior, t2t.features, 1.0,
                                  {0.0}) <= 1e-12);

    Vector nudged = theta;
    for (double& x : nudged) x += 1.0;
    CHECK(fixed_point_consistency(chain.mdp, chain.target, chain.behavior, chain.features, 0.5,
                                  nudged) > 0.1);
}

TEST_CASE("eta above the Gershgorin bound guarantees positive definiteness") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto instance = testgen::random_instance(rng, 5, 3);
        const double bound =
            eta_lower_bound(instance.mdp, instance.target, instance.behavior);
        for (double epsilon : {1e-6, 0.1}) {
            const ExpectedSystem s = expected_system(instance.mdp, instance.target,
                                                     instance.behavior, instance.features,
                                                     bound + epsilon);
            CHECK(is_positive_definite(s));
        }
    }
}

TEST_CASE("min symmetric eigenvalue is nondecreasing in eta") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto instance = testgen::random_instance(rng);
        double prev = -1e300;
        for (double eta : {0.0, 0.3, 0.8, 1.5, 4.0}) {
            const ExpectedSystem s = expected_system(instance.mdp, instance.target,
                                                     instance.behavior, instance.features, eta);
            CHECK(s.min_sym_eigenvalue >= prev - 1e-10);
            prev = s.min_sym_eigenvalue;
        }
    }
}

TEST_CASE("symmetrized eigenvalue verdict agrees with random quadratic forms") {
    Rng rng(57);
    int checked = 0;
    while (checked < 30) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        Matrix m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = 2.0 * rng.uniform() - 1.0;
        Matrix sym = m + m.transposed();
        const double min_eig = symmetric_eigenvalues(sym).front();
        if (std::abs(min_eig) < 0.1) continue;  // keep the Monte Carlo verdict unambiguous
        ++checked;

        double worst = 1e300;
        for (int probe = 0; probe < 1000; ++probe) {
            Vector y = testgen::random_vector(rng, n, 1.0);
            double norm = std::sqrt(dot(y, y));
            if (norm < 1e-9) continue;
            for (double& x : y) x /= norm;
            worst = std::min(worst, dot(y, mat_vec(m, y)));
        }
        CHECK((worst > 0.0) == (min_eig > 0.0));
    }
}

TEST_CASE("on-policy expected system is positive definite at eta = 0") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const auto instance = testgen::random_instance(rng);
        const ExpectedSystem s = expected_system(instance.mdp, instance.behavior,
                                                 instance.behavior, instance.features, 0.0);
        CHECK(is_positive_definite(s));
    }
}

TEST_CASE("expected_system rejects invalid inputs") {
    const Benchmark b = build_theta_2theta();
    CHECK_THROWS_AS(expected_system(b.mdp, b.target, b.behavior, b.features, -0.1),
                    std::invalid_argument);
    const Benchmark chain = build_chain3();
    CHECK_THROWS_AS(expected_system(b.mdp, b.target, b.behavior, chain.features, 0.0),
                    std::invalid_argument);
}
