#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "freering/measure.hpp"
#include "freering/rmt.hpp"

using namespace freering;

namespace {
DiscreteMeasure bernoulli(double a) { return DiscreteMeasure::from_atoms({-a, a}, {0.5, 0.5}); }

DiscreteMeasure random_measure(Rng& rng, int atoms) {
    std::vector<double> t(atoms), w(atoms);
    for (int i = 0; i < atoms; ++i) {
        t[i] = 4.0 * rng.uniform() - 2.0;
        w[i] = rng.uniform() + 0.05;
    }
    return DiscreteMeasure::from_atoms(t, w);
}
}  // namespace

TEST_CASE("from_atoms canonicalizes, normalizes, merges") {
    const auto mu = DiscreteMeasure::from_atoms({2.0, 1.0}, {0.6, 0.4});
    CHECK(mu.locations() == std::vector<double>{1.0, 2.0});
    CHECK(mu.weights()[0] == doctest::Approx(0.4).epsilon(1e-14));

    const auto delta = DiscreteMeasure::from_atoms({0.0}, {1.0});
    CHECK(delta.is_point_mass());
    CHECK(delta.weights()[0] == 1.0);

    const auto merged = DiscreteMeasure::from_atoms({1.0, 1.0}, {0.5, 0.5});
    CHECK(merged.atom_count() == 1);
    CHECK(merged.locations()[0] == 1.0);

    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({1.0}, {-0.2}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({1.0, 2.0}, {1.0}), std::invalid_argument);

    // weights renormalized after any constructor
    const auto scaled = DiscreteMeasure::from_atoms({1.0, 3.0}, {2.0, 6.0});
    double total = 0.0;
    for (double w : scaled.weights()) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetrization and its idempotence") {
    const auto mu = DiscreteMeasure::from_atoms({1.0, 2.0}, {0.4, 0.6});
    const auto sym = mu.symmetrized();
    CHECK(sym.is_symmetric());
    CHECK(sym.atom_count() == 4);
    CHECK(sym.weights()[0] == doctest::Approx(0.3));
    const auto sym2 = sym.symmetrized();
    REQUIRE(sym2.atom_count() == sym.atom_count());
    for (std::size_t i = 0; i < sym.atom_count(); ++i) {
        CHECK(sym2.locations()[i] == doctest::Approx(sym.locations()[i]).epsilon(1e-15));
        CHECK(sym2.weights()[i] == doctest::Approx(sym.weights()[i]).epsilon(1e-15));
    }
}

TEST_CASE("moments of the two-atom example") {
    const auto mu = DiscreteMeasure::from_atoms({1.0, 2.0}, {0.4, 0.6});
    CHECK(mu.moment(2.0) == doctest::Approx(2.8).epsilon(1e-14));
    CHECK(mu.moment(-2.0) == doctest::Approx(0.55).epsilon(1e-14));
    CHECK(DiscreteMeasure::dirac(1.0).moment(2.0) == doctest::Approx(1.0));

    const auto charged = DiscreteMeasure::from_atoms({0.0, 1.0}, {0.5, 0.5});
    CHECK_THROWS_AS(charged.moment(-2.0), std::domain_error);
}

TEST_CASE("cauchy transform values and pole error") {
    const auto mu = bernoulli(1.0);
    const Complex g = mu.cauchy(Complex(0.0, 2.0));
    CHECK(g.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g.imag() == doctest::Approx(-0.4).epsilon(1e-14));

    const auto delta = DiscreteMeasure::dirac(0.0);
    const Complex z(0.3, 0.7);
    const Complex gd = delta.cauchy(z);
    CHECK(std::abs(gd - 1.0 / z) < 1e-15);

    // real evaluation inside the gap: closed form x/(x^2-1)
    const Complex gx = mu.cauchy(Complex(0.1, 0.0));
    CHECK(gx.real() == doctest::Approx(0.1 / (0.01 - 1.0)).epsilon(1e-14));
    CHECK(gx.imag() == 0.0);

    CHECK_THROWS_AS(mu.cauchy(Complex(1.0, 0.0)), std::domain_error);

    // Im G < 0 on the upper half plane
    Rng rng(42);
    for (int k = 0; k < 50; ++k) {
        const auto random_mu = random_measure(rng, 5);
        const Complex zz(4.0 * rng.uniform() - 2.0, rng.uniform() + 0.01);
        CHECK(random_mu.cauchy(zz).imag() < 0.0);
    }
}

TEST_CASE("r_transform against the two-point closed form") {
    // R(w) = (sqrt(1+4w^2)-1)/(2w) for the symmetric two-point law at +/-1
    const auto mu = bernoulli(1.0);
    const Complex w(0.1, 0.0);
    const Complex r = mu.r_transform(w);
    const double expected = (std::sqrt(1.0 + 4.0 * 0.01) - 1.0) / 0.2;
    CHECK(r.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.real() == doctest::Approx(0.099020).epsilon(1e-5));
    CHECK(std::abs(r.imag()) < 1e-13);

    // w -> 0 returns the mean (0 for symmetric laws)
    CHECK(std::abs(mu.r_transform(Complex(0.0, 0.0))) == 0.0);
    CHECK(std::abs(mu.r_transform(Complex(1e-9, 0.0))) < 1e-8);

    // point mass at 0: R identically 0
    CHECK(std::abs(DiscreteMeasure::dirac(0.0).r_transform(Complex(0.05, 0.02))) == 0.0);
    // point mass at c: R identically c
    CHECK(std::abs(DiscreteMeasure::dirac(2.5).r_transform(Complex(0.01, 0.0)) - 2.5) == 0.0);

    CHECK_THROWS_AS(mu.r_transform(Complex(0.5, 0.0)), std::domain_error);
}

TEST_CASE("r_transform consistency |G(R(w)+1/w) - w| < 1e-12 on random inputs") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto mu = random_measure(rng, 4);
        const double radius = 1.0 / (6.0 * mu.max_abs_location());
        const double rho = radius * (0.1 + 0.85 * rng.uniform());
        const double angle = 2.0 * M_PI * rng.uniform();
        const Complex w = rho * Complex(std::cos(angle), std::sin(angle));
        const Complex r = mu.r_transform(w);
        CHECK(std::abs(mu.cauchy(r + 1.0 / w) - w) < 1e-12);
    }
}

TEST_CASE("cauchy-schwarz moment invariant for symmetric measures") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mu = random_measure(rng, 3 + (trial % 4));
        if (mu.charges_zero()) continue;
        const auto sym = mu.symmetrized();
        if (sym.charges_zero()) continue;
        CHECK(sym.moment(-2.0) * sym.moment(2.0) >= 1.0 - 1e-12);
    }
    // equality iff two symmetric points
    const auto two_point = bernoulli(1.7);
    CHECK(two_point.moment(-2.0) * two_point.moment(2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("G scaling under dilation: c * G_dilated(c z) = G(z)") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mu = random_measure(rng, 4);
        const double c = 0.5 + 2.0 * rng.uniform();
        const auto nu = mu.dilated(c);
        const Complex z(2.0 * rng.uniform() - 1.0, 0.3 + rng.uniform());
        CHECK(std::abs(c * nu.cauchy(c * z) - mu.cauchy(z)) < 1e-12);
    }
}

TEST_CASE("symmetrized singular law of small matrices") {
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
    const auto law = symmetrized_singular_law(eye, Complex(0.0, 0.0));
    CHECK(law.locations() == std::vector<double>{-1.0, 1.0});
    CHECK(law.weights()[0] == doctest::Approx(0.5));

    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
    const auto shifted = symmetrized_singular_law(zero, Complex(3.0, 0.0));
    CHECK(shifted.locations() == std::vector<double>{-3.0, 3.0});

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(0, 0) = Complex(-2.2, 0.0);
    diag(1, 1) = Complex(1.0, 0.0);
    const auto mixed = symmetrized_singular_law(diag, Complex(0.0, 0.0));
    REQUIRE(mixed.atom_count() == 4);
    CHECK(mixed.locations()[0] == doctest::Approx(-2.2));
    CHECK(mixed.locations()[1] == doctest::Approx(-1.0));
    CHECK(mixed.weights()[0] == doctest::Approx(0.25));

    // zero singular values fold into a single weight-1/n atom at 0
    Eigen::MatrixXcd rank1 = Eigen::MatrixXcd::Zero(2, 2);
    rank1(0, 0) = 1.0;
    const auto folded = symmetrized_singular_law(rank1, Complex(0.0, 0.0));
    REQUIRE(folded.atom_count() == 3);
    CHECK(folded.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("cauchy bound diagnostic") {
    const auto mu = bernoulli(1.0);
    const auto diag = cauchy_bound_diag(mu, 1.0, 1.0, 1000);
    CHECK(diag.passed);
    CHECK(diag.bound <= 0.5 + 1e-12);  // max of eta/(1+eta^2)
    for (std::size_t i = 1; i < diag.eta_grid.size(); ++i)
        CHECK(diag.eta_grid[i] < diag.eta_grid[i - 1]);

    const auto point = DiscreteMeasure::dirac(0.0);
    CHECK_FALSE(cauchy_bound_diag(point, 1.0, 10.0, 1000).passed);

    const auto example = DiscreteMeasure::from_atoms({1.0, 2.0}, {0.4, 0.6}).symmetrized();
    CHECK(cauchy_bound_diag(example, 1.0, 2.0, 1000).passed);
}

TEST_CASE("json round trip is exact") {
    const auto mu = DiscreteMeasure::from_atoms({0.1, 1.0 / 3.0, 2.8}, {0.25, 0.25, 0.5});
    const auto back = DiscreteMeasure::from_json_string(mu.to_json_string());
    REQUIRE(back.atom_count() == mu.atom_count());
    for (std::size_t i = 0; i < mu.atom_count(); ++i) {
        CHECK(back.locations()[i] == mu.locations()[i]);
        CHECK(back.weights()[i] == mu.weights()[i]);
    }
    CHECK(back.to_json_string() == mu.to_json_string());
}
