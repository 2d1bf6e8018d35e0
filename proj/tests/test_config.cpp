#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "freering/config.hpp"
#include "freering/emit.hpp"
#include "freering/rmt.hpp"

using namespace freering;

namespace {

const char* kFigureConfig = R"({
  "model": {
    "sigma": {"atoms": [[1, 0.4], [2, 0.6]]},
    "aprime": {"atoms": [[[-2.2, 0], 0.15], [[1, 0], 0.85]]},
    "spikes": [[0.75, 0.25], [0.65, 0.25], [-1.5, 1.5], [-2, 1.2], [-1, -1], [-1, -0.5]]
  },
  "n": 1000,
  "trials": 20,
  "seed": 7,
  "tol": 0.2,
  "grid": {"bbox": [-3, 2, -2, 2], "resolution": 100}
})";

}  // namespace

TEST_CASE("figure config parses to the worked model") {
    const auto cfg = parse_config_text(kFigureConfig);
    CHECK(cfg.n == 1000);
    CHECK(cfg.trials == 20);
    CHECK(cfg.seed.has_value());
    CHECK(*cfg.seed == 7);
    CHECK(cfg.tol == 0.2);
    CHECK(cfg.has_grid);
    CHECK(cfg.resolution == 100);
    CHECK(cfg.model.sigma_law.moment(2.0) == doctest::Approx(2.8));
    REQUIRE(cfg.model.spikes.size() == 6);
    CHECK(cfg.model.spikes[2] == Complex(-1.5, 1.5));
    CHECK(cfg.model.aprime_weights[0] == doctest::Approx(0.15));
}

TEST_CASE("shipped figure1 config matches the inline one") {
    const auto cfg = parse_config(std::string(CONFIG_DIR) + "/figure1.json");
    CHECK(cfg.model.sigma_law.moment(-2.0) == doctest::Approx(0.55));
    CHECK(cfg.n == 1000);
    CHECK(*cfg.seed == 7);
}

TEST_CASE("minimal haar config") {
    const auto cfg = parse_config_text(R"({
      "model": {"sigma": {"atoms": [[1, 1]]}, "aprime": {"atoms": [[[0, 0], 1]]}},
      "n": 64, "seed": 1
    })");
    CHECK(cfg.model.spikes.empty());
    CHECK(cfg.model.sigma_law.is_point_mass());
    const auto sample = sample_model(cfg.model, cfg.n, *cfg.seed);
    // no deformation: the sample is exactly the Haar factor
    const Eigen::VectorXcd ev = eigenvalues(sample.m);
    for (long k = 0; k < ev.size(); ++k) CHECK(std::abs(std::abs(ev[k]) - 1.0) < 1e-8);
}

TEST_CASE("schema violations name the field") {
    // weights summing to 0.9
    try {
        parse_config_text(R"({
          "model": {"sigma": {"atoms": [[1, 0.4], [2, 0.5]]},
                    "aprime": {"atoms": [[[0, 0], 1]]}}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("model.sigma.atoms") != std::string::npos);
    }

    // unknown key
    try {
        parse_config_text(R"({"model": {"sigma": {"atoms": [[1, 1]]},
                              "aprime": {"atoms": [[[0, 0], 1]]}}, "bogus": 3})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }

    // n below the floor
    CHECK_THROWS_AS(parse_config_text(R"({"model": {"sigma": {"atoms": [[1, 1]]},
                    "aprime": {"atoms": [[[0, 0], 1]]}}, "n": 4})"),
                    ConfigError);
    // resolution below 2
    CHECK_THROWS_AS(parse_config_text(R"({"model": {"sigma": {"atoms": [[1, 1]]},
                    "aprime": {"atoms": [[[0, 0], 1]]}},
                    "grid": {"bbox": [0, 1, 0, 1], "resolution": 1}})"),
                    ConfigError);
    // nonpositive weight
    CHECK_THROWS_AS(parse_config_text(R"({"model": {"sigma": {"atoms": [[1, -1]]},
                    "aprime": {"atoms": [[[0, 0], 1]]}}})"),
                    ConfigError);
    // malformed json
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    // missing file
    CHECK_THROWS_AS(parse_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("config round trip through emit and parse") {
    const auto cfg = parse_config_text(kFigureConfig);
    const auto back = parse_config_text(cfg.to_json_string());
    CHECK(back.to_json_string() == cfg.to_json_string());
    CHECK(back.n == cfg.n);
    CHECK(back.model.spikes == cfg.model.spikes);
    CHECK(back.model.sigma_law.locations() == cfg.model.sigma_law.locations());
}

TEST_CASE("model hash is stable and sensitive") {
    const auto cfg = parse_config_text(kFigureConfig);
    const std::string h1 = model_hash(cfg.model);
    CHECK(h1.size() == 16);
    CHECK(h1 == model_hash(cfg.model));
    auto other = cfg.model;
    other.spikes[0] += Complex(0.01, 0.0);
    CHECK(model_hash(other) != h1);
}

TEST_CASE("csv emitters") {
    const std::vector<Complex> evs = {Complex(0.5, -0.25), Complex(1.0 / 3.0, 2.0)};
    const std::string csv = eigenvalues_csv(evs);
    CHECK(csv.substr(0, 6) == "re,im\n");
    CHECK(csv.find("0.33333333333333331") != std::string::npos);

    const auto cfg = parse_config_text(kFigureConfig);
    const auto grid = grid_map(cfg.model, BBox{-1.0, 1.0, -1.0, 1.0}, 4);
    const std::string grid_csv = domain_grid_csv(grid);
    CHECK(grid_csv.substr(0, 10) == "x,y,class\n");
    CHECK(std::count(grid_csv.begin(), grid_csv.end(), '\n') == 17);

    const DiscreteMeasure b = DiscreteMeasure::from_atoms({-1.0, 1.0}, {0.5, 0.5});
    std::vector<SubordinationSolution> sols = {subordination_solve(b, b, Complex(0.0, 3.0))};
    const std::string sub_csv = subordination_csv(sols);
    CHECK(sub_csv.find("re_omega1") != std::string::npos);
    CHECK(std::count(sub_csv.begin(), sub_csv.end(), '\n') == 2);
}

TEST_CASE("svg emitter produces a well-formed scatter") {
    const auto cfg = parse_config_text(kFigureConfig);
    const auto grid = grid_map(cfg.model, BBox{-3.0, 2.0, -2.0, 2.0}, 20);
    const std::string svg = scatter_svg(grid, {Complex(0.0, 0.0)}, cfg.model.spikes);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '<') > 20);
    // spikes render as crosses (paths), eigenvalues as circles
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("emitted artifacts are byte deterministic") {
    const auto cfg = parse_config_text(kFigureConfig);
    const auto sample_a = sample_model(cfg.model, 64, *cfg.seed);
    const auto sample_b = sample_model(cfg.model, 64, *cfg.seed);
    const Eigen::VectorXcd ea = eigenvalues(sample_a.m);
    const Eigen::VectorXcd eb = eigenvalues(sample_b.m);
    const std::vector<Complex> va(ea.data(), ea.data() + ea.size());
    const std::vector<Complex> vb(eb.data(), eb.data() + eb.size());
    CHECK(eigenvalues_csv(va) == eigenvalues_csv(vb));
    CHECK(spectrum_metadata_json(cfg.model, 64, *cfg.seed) ==
          spectrum_metadata_json(cfg.model, 64, *cfg.seed));
}
