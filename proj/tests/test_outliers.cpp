#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "freering/emit.hpp"
#include "freering/outliers.hpp"

using namespace freering;

namespace {

ModelSpec example_model() {
    return ModelSpec(
        DiscreteMeasure::from_atoms({1.0, 2.0}, {0.4, 0.6}),
        {Complex(-2.2, 0.0), Complex(1.0, 0.0)}, {0.15, 0.85},
        {Complex(0.75, 0.25), Complex(0.65, 0.25), Complex(-1.5, 1.5), Complex(-2.0, 1.2),
         Complex(-1.0, -1.0), Complex(-1.0, -0.5)});
}

}  // namespace

TEST_CASE("match_spikes basics") {
    const std::vector<Complex> spikes = {Complex(1.0, 1.0), Complex(-2.0, 0.0)};
    const auto exact = match_spikes({Complex(1.0, 1.0), Complex(-2.0, 0.0)}, spikes, 1e-6);
    REQUIRE(exact.size() == 2);
    for (const auto& m : exact) {
        CHECK(m.matched);
        CHECK(m.distance == 0.0);
    }

    const auto empty = match_spikes({}, spikes, 0.2);
    for (const auto& m : empty) {
        CHECK_FALSE(m.matched);
        CHECK(m.eigenvalues_in_disk == 0);
    }

    // two eigenvalues in one disk: not a match
    const auto crowded =
        match_spikes({Complex(1.05, 1.0), Complex(0.95, 1.0)}, {Complex(1.0, 1.0)}, 0.2);
    CHECK_FALSE(crowded[0].matched);
    CHECK(crowded[0].eigenvalues_in_disk == 2);

    CHECK_THROWS_AS(match_spikes({}, {Complex(0.0, 0.0), Complex(0.1, 0.0)}, 0.2),
                    std::invalid_argument);
    CHECK_THROWS_AS(match_spikes({}, {Complex(0.0, 0.0)}, 0.0), std::invalid_argument);
}

TEST_CASE("inner_empty_check counts the closed disk") {
    CHECK(inner_empty_check({Complex(0.52, 0.0)}, Complex(0.52, 0.0), 0.5) == 1);
    CHECK(inner_empty_check({Complex(1.03, 0.0)}, Complex(0.52, 0.0), 0.5) == 0);
    CHECK(inner_empty_check({Complex(1.02, 0.0)}, Complex(0.52, 0.0), 0.5) == 1);  // boundary
    std::vector<Complex> circle;
    for (int k = 0; k < 32; ++k)
        circle.push_back(std::polar(1.0, 2.0 * M_PI * k / 32.0));
    CHECK(inner_empty_check(circle, Complex(0.0, 0.0), 0.9) == 0);
}

TEST_CASE("stability margin of the worked model") {
    const auto spec = example_model();
    std::vector<Complex> circle;
    for (int k = 0; k < 64; ++k)
        circle.push_back(Complex(-1.5, 1.5) + 0.2 * std::polar(1.0, 2.0 * M_PI * k / 64.0));
    const double margin = stability_margin(spec, 200, circle);
    CHECK(margin > 0.0);

    // no spikes: empty determinant, margin 1
    const auto bare = ModelSpec(DiscreteMeasure::dirac(1.0), {Complex(0.0, 0.0)}, {1.0}, {});
    CHECK(stability_margin(bare, 100, circle) == 1.0);

    // a second spike sitting on the contour drives the margin to zero
    const auto unstable = ModelSpec(DiscreteMeasure::dirac(1.0), {Complex(0.0, 0.0)}, {1.0},
                                    {Complex(-1.5, 1.5), Complex(-1.3, 1.5)});
    const double bad = stability_margin(unstable, 100, circle);
    CHECK(bad < 1e-12);

    // cross-check against the determinant-function route on a sample
    const auto sample = sample_model(spec, 64, 4);
    double margin_det = std::numeric_limits<double>::infinity();
    for (const Complex z : circle)
        margin_det = std::min(margin_det, std::abs(det_functions(sample, z).second));
    CHECK(margin == doctest::Approx(margin_det).epsilon(1e-10));
}

TEST_CASE("small outlier experiment end to end") {
    const auto spec = example_model();
    const auto report = run_experiment(spec, 200, 4, 0.35, 11);
    CHECK(report.trials == 4);
    REQUIRE(report.per_spike.size() == 4);  // the four outer spikes
    for (const auto& s : report.per_spike) {
        CHECK(s.match_count <= report.trials);
        CHECK(s.max_distance >= s.mean_distance * (s.match_count > 0 ? 1.0 : 0.0));
        CHECK(theta_classify(spec, s.spike) == DomainClass::ThetaOut);
    }
    CHECK(report.stability_margin > 0.0);
    REQUIRE(report.seeds.size() == 4);
    CHECK(report.seeds[0] == 11);
    CHECK(report.seeds[3] == 14);

    // determinism: identical report bytes on rerun
    const auto rerun = run_experiment(spec, 200, 4, 0.35, 11);
    CHECK(report_json(report) == report_json(rerun));
}

TEST_CASE("experiment without spikes tracks bulk leakage only") {
    const auto bare = ModelSpec(DiscreteMeasure::from_atoms({1.0, 2.0}, {0.4, 0.6}),
                                {Complex(0.0, 0.0)}, {1.0}, {});
    const auto report = run_experiment(bare, 128, 5, 0.2, 3);
    CHECK(report.per_spike.empty());
    CHECK(report.stability_margin == 1.0);
    CHECK(report.inner_violations >= 0);
}

TEST_CASE("report json round trip") {
    const auto spec = example_model();
    const auto report = run_experiment(spec, 128, 2, 0.35, 5);
    const std::string text = report_json(report);
    const OutlierReport parsed = report_from_json(text);
    CHECK(report_json(parsed) == text);
}

TEST_CASE("mean outlier distance shrinks with n") {
    const auto spec = example_model();
    double previous = std::numeric_limits<double>::infinity();
    for (const long n : {250L, 500L, 1000L}) {
        const auto report = run_experiment(spec, n, 3, 0.35, 21);
        double mean = 0.0;
        int matched = 0;
        for (const auto& s : report.per_spike) {
            mean += s.mean_distance * s.match_count;
            matched += s.match_count;
        }
        REQUIRE(matched > 0);
        mean /= matched;
        CHECK(mean <= previous * 1.10);  // 10% slack on the trend
        previous = mean;
    }
}
