#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "freering/domains.hpp"

namespace freering {

/// Thrown on schema violations; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment description: the limiting model plus command
/// parameters. Unknown keys are rejected, every numeric range is
/// validated, and the seed is mandatory for stochastic commands.
struct ExperimentConfig {
    ModelSpec model;

    long n = 1000;
    int trials = 20;
    std::optional<std::uint64_t> seed;
    double tol = 0.2;

    BBox bbox{-3.0, 3.0, -3.0, 3.0};
    int resolution = 100;
    bool has_grid = false;

    Complex point{0.0, 0.0};  // model point defining mu1 for subord/gap
    bool has_point = false;

    std::string to_json_string() const;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Limiting symmetrized law of |a - z| (atoms +/- |alpha_i - z|).
DiscreteMeasure model_mu1(const ModelSpec& model, Complex z);
/// Limiting symmetrized singular-value law (atoms +/- t_i of sigma).
DiscreteMeasure model_mu2(const ModelSpec& model);

/// FNV-1a hash of the canonical model serialization, as fixed-width hex.
std::string model_hash(const ModelSpec& model);

}  // namespace freering
