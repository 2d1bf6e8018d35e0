#include "freering/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace freering {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("config: unknown key \"" + where + key + "\"");
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("config: missing field \"" + where + key + "\"");
    if (!obj[key].is_number()) throw ConfigError("config: field \"" + where + key + "\" must be numeric");
    return obj[key].get<double>();
}

Complex parse_complex(const json& value, const std::string& where) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
        throw ConfigError("config: field \"" + where + "\" must be a [re, im] pair");
    return Complex(value[0].get<double>(), value[1].get<double>());
}

DiscreteMeasure parse_real_measure(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("atoms"))
        throw ConfigError("config: \"" + where + "\" must be an object with an \"atoms\" array");
    reject_unknown_keys(obj, {"atoms"}, where + ".");
    const json& atoms = obj["atoms"];
    if (!atoms.is_array() || atoms.empty())
        throw ConfigError("config: \"" + where + ".atoms\" must be a nonempty array");
    std::vector<double> t, w;
    double total = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const json& atom = atoms[k];
        const std::string label = where + ".atoms[" + std::to_string(k) + "]";
        if (!atom.is_array() || atom.size() != 2 || !atom[0].is_number() || !atom[1].is_number())
            throw ConfigError("config: \"" + label + "\" must be [t, w]");
        const double weight = atom[1].get<double>();
        if (!(weight > 0.0)) throw ConfigError("config: \"" + label + "\" weight must be positive");
        t.push_back(atom[0].get<double>());
        w.push_back(weight);
        total += weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError("config: \"" + where + ".atoms\" weights must sum to 1 (got " +
                          std::to_string(total) + ")");
    return DiscreteMeasure::from_atoms(t, w);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(j, {"model", "n", "trials", "seed", "tol", "grid", "point"}, "");

    if (!j.contains("model") || !j["model"].is_object())
        throw ConfigError("config: missing object field \"model\"");
    const json& jm = j["model"];
    reject_unknown_keys(jm, {"sigma", "aprime", "spikes"}, "model.");

    const DiscreteMeasure sigma = parse_real_measure(jm.contains("sigma") ? jm["sigma"] : json(),
                                                     "model.sigma");

    if (!jm.contains("aprime") || !jm["aprime"].is_object() || !jm["aprime"].contains("atoms"))
        throw ConfigError("config: \"model.aprime\" must be an object with an \"atoms\" array");
    reject_unknown_keys(jm["aprime"], {"atoms"}, "model.aprime.");
    std::vector<Complex> a_loc;
    std::vector<double> a_w;
    double a_total = 0.0;
    const json& a_atoms = jm["aprime"]["atoms"];
    if (!a_atoms.is_array() || a_atoms.empty())
        throw ConfigError("config: \"model.aprime.atoms\" must be a nonempty array");
    for (std::size_t k = 0; k < a_atoms.size(); ++k) {
        const json& atom = a_atoms[k];
        const std::string label = "model.aprime.atoms[" + std::to_string(k) + "]";
        if (!atom.is_array() || atom.size() != 2)
            throw ConfigError("config: \"" + label + "\" must be [[re, im], w]");
        a_loc.push_back(parse_complex(atom[0], label + "[0]"));
        if (!atom[1].is_number() || !(atom[1].get<double>() > 0.0))
            throw ConfigError("config: \"" + label + "\" weight must be positive");
        a_w.push_back(atom[1].get<double>());
        a_total += a_w.back();
    }
    if (std::abs(a_total - 1.0) > 1e-9)
        throw ConfigError("config: \"model.aprime.atoms\" weights must sum to 1 (got " +
                          std::to_string(a_total) + ")");

    std::vector<Complex> spikes;
    if (jm.contains("spikes")) {
        if (!jm["spikes"].is_array())
            throw ConfigError("config: \"model.spikes\" must be an array of [re, im] pairs");
        for (std::size_t k = 0; k < jm["spikes"].size(); ++k)
            spikes.push_back(parse_complex(jm["spikes"][k], "model.spikes[" + std::to_string(k) + "]"));
    }

    ExperimentConfig cfg{ModelSpec(sigma, std::move(a_loc), std::move(a_w), std::move(spikes))};

    if (j.contains("n")) {
        const double n = require_number(j, "n", "");
        if (n < 8 || n != std::floor(n)) throw ConfigError("config: \"n\" must be an integer >= 8");
        cfg.n = static_cast<long>(n);
    }
    if (j.contains("trials")) {
        const double trials = require_number(j, "trials", "");
        if (trials < 1 || trials != std::floor(trials))
            throw ConfigError("config: \"trials\" must be an integer >= 1");
        cfg.trials = static_cast<int>(trials);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw ConfigError("config: \"seed\" must be an unsigned integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tol")) {
        const double tol = require_number(j, "tol", "");
        if (!(tol > 0.0)) throw ConfigError("config: \"tol\" must be positive");
        cfg.tol = tol;
    }
    if (j.contains("grid")) {
        const json& jg = j["grid"];
        if (!jg.is_object()) throw ConfigError("config: \"grid\" must be an object");
        reject_unknown_keys(jg, {"bbox", "resolution"}, "grid.");
        if (!jg.contains("bbox") || !jg["bbox"].is_array() || jg["bbox"].size() != 4)
            throw ConfigError("config: \"grid.bbox\" must be [xmin, xmax, ymin, ymax]");
        for (int k = 0; k < 4; ++k)
            if (!jg["bbox"][k].is_number())
                throw ConfigError("config: \"grid.bbox\" entries must be numeric");
        cfg.bbox = BBox{jg["bbox"][0].get<double>(), jg["bbox"][1].get<double>(),
                        jg["bbox"][2].get<double>(), jg["bbox"][3].get<double>()};
        if (!(cfg.bbox.xmin < cfg.bbox.xmax) || !(cfg.bbox.ymin < cfg.bbox.ymax))
            throw ConfigError("config: \"grid.bbox\" must have xmin < xmax and ymin < ymax");
        const double res = require_number(jg, "resolution", "grid.");
        if (res < 2 || res != std::floor(res))
            throw ConfigError("config: \"grid.resolution\" must be an integer >= 2");
        cfg.resolution = static_cast<int>(res);
        cfg.has_grid = true;
    }
    if (j.contains("point")) {
        cfg.point = parse_complex(j["point"], "point");
        cfg.has_point = true;
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string ExperimentConfig::to_json_string() const {
    ordered_json j;
    ordered_json jm;
    ordered_json sigma_atoms = ordered_json::array();
    for (std::size_t i = 0; i < model.sigma_law.locations().size(); ++i)
        sigma_atoms.push_back({model.sigma_law.locations()[i], model.sigma_law.weights()[i]});
    jm["sigma"]["atoms"] = sigma_atoms;
    ordered_json a_atoms = ordered_json::array();
    for (std::size_t i = 0; i < model.aprime_locations.size(); ++i)
        a_atoms.push_back({{model.aprime_locations[i].real(), model.aprime_locations[i].imag()},
                           model.aprime_weights[i]});
    jm["aprime"]["atoms"] = a_atoms;
    ordered_json spikes = ordered_json::array();
    for (const Complex s : model.spikes) spikes.push_back({s.real(), s.imag()});
    jm["spikes"] = spikes;
    j["model"] = jm;
    j["n"] = n;
    j["trials"] = trials;
    if (seed) j["seed"] = *seed;
    j["tol"] = tol;
    if (has_grid) {
        j["grid"]["bbox"] = {bbox.xmin, bbox.xmax, bbox.ymin, bbox.ymax};
        j["grid"]["resolution"] = resolution;
    }
    if (has_point) j["point"] = {point.real(), point.imag()};
    return j.dump(2);
}

DiscreteMeasure model_mu1(const ModelSpec& model, Complex z) {
    std::vector<double> t, w;
    for (std::size_t i = 0; i < model.aprime_locations.size(); ++i) {
        const double d = std::abs(model.aprime_locations[i] - z);
        t.push_back(d);
        w.push_back(model.aprime_weights[i] / 2.0);
        t.push_back(-d);
        w.push_back(model.aprime_weights[i] / 2.0);
    }
    return DiscreteMeasure::from_atoms(t, w);
}

DiscreteMeasure model_mu2(const ModelSpec& model) {
    std::vector<double> t, w;
    for (std::size_t i = 0; i < model.sigma_law.locations().size(); ++i) {
        t.push_back(model.sigma_law.locations()[i]);
        w.push_back(model.sigma_law.weights()[i] / 2.0);
        t.push_back(-model.sigma_law.locations()[i]);
        w.push_back(model.sigma_law.weights()[i] / 2.0);
    }
    return DiscreteMeasure::from_atoms(t, w);
}

std::string model_hash(const ModelSpec& model) {
    ordered_json jm;
    ordered_json sigma_atoms = ordered_json::array();
    for (std::size_t i = 0; i < model.sigma_law.locations().size(); ++i)
        sigma_atoms.push_back({model.sigma_law.locations()[i], model.sigma_law.weights()[i]});
    jm["sigma"] = sigma_atoms;
    ordered_json a_atoms = ordered_json::array();
    for (std::size_t i = 0; i < model.aprime_locations.size(); ++i)
        a_atoms.push_back({{model.aprime_locations[i].real(), model.aprime_locations[i].imag()},
                           model.aprime_weights[i]});
    jm["aprime"] = a_atoms;
    ordered_json spikes = ordered_json::array();
    for (const Complex s : model.spikes) spikes.push_back({s.real(), s.imag()});
    jm["spikes"] = spikes;
    const std::string text = jm.dump();

    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

}  // namespace freering
