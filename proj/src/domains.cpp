#include "freering/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace freering {

ModelSpec::ModelSpec(DiscreteMeasure sigma, std::vector<Complex> a_locations,
                     std::vector<double> a_weights, std::vector<Complex> spike_list)
    : sigma_law(std::move(sigma)),
      aprime_locations(std::move(a_locations)),
      aprime_weights(std::move(a_weights)),
      spikes(std::move(spike_list)) {
    if (sigma_law.locations().front() < 0.0)
        throw std::invalid_argument("model: sigma_law must live on [0, inf)");
    if (aprime_locations.empty() || aprime_locations.size() != aprime_weights.size())
        throw std::invalid_argument("model: aprime law needs matching nonempty atom/weight lists");
    double total = 0.0;
    for (double w : aprime_weights) {
        if (!(w > 0.0)) throw std::invalid_argument("model: aprime weights must be positive");
        total += w;
    }
    for (double& w : aprime_weights) w /= total;
    // canonical order: lexicographic by (Re, Im)
    std::vector<std::size_t> order(aprime_locations.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Complex &x = aprime_locations[a], &y = aprime_locations[b];
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    std::vector<Complex> loc;
    std::vector<double> wts;
    for (std::size_t idx : order) {
        loc.push_back(aprime_locations[idx]);
        wts.push_back(aprime_weights[idx]);
    }
    aprime_locations = std::move(loc);
    aprime_weights = std::move(wts);
}

double ModelSpec::aprime_moment_m2(Complex z) const {
    double s = 0.0;
    for (std::size_t i = 0; i < aprime_locations.size(); ++i)
        s += aprime_weights[i] * std::norm(aprime_locations[i] - z);
    return s;
}

double ModelSpec::aprime_moment_m_minus2(Complex z) const {
    double s = 0.0;
    for (std::size_t i = 0; i < aprime_locations.size(); ++i) {
        const double d2 = std::norm(aprime_locations[i] - z);
        if (d2 < 1e-28) return std::numeric_limits<double>::infinity();
        s += aprime_weights[i] / d2;
    }
    return s;
}

Complex ModelSpec::aprime_mean() const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < aprime_locations.size(); ++i)
        s += aprime_weights[i] * aprime_locations[i];
    return s;
}

DomainClass theta_classify(const ModelSpec& model, Complex z) {
    const double m2_t = model.sigma_law.moment(2.0);
    const double m_minus2_a = model.aprime_moment_m_minus2(z);
    if (std::isfinite(m_minus2_a) && m2_t * m_minus2_a < 1.0) return DomainClass::ThetaOut;

    if (!model.sigma_law.charges_zero()) {
        const double m_minus2_t = model.sigma_law.moment(-2.0);
        const double m2_a = model.aprime_moment_m2(z);
        if (m2_a * m_minus2_t < 1.0) return DomainClass::ThetaIn;
    }
    return DomainClass::Neither;
}

DomainGrid grid_map(const ModelSpec& model, BBox bbox, int resolution) {
    if (resolution < 2) throw std::invalid_argument("grid_map: resolution must be >= 2");
    DomainGrid grid;
    grid.bbox = bbox;
    grid.resolution = resolution;
    grid.classes.resize(static_cast<std::size_t>(resolution) * resolution);
    for (int row = 0; row < resolution; ++row) {
        const double y = grid.y_at(row);
        for (int col = 0; col < resolution; ++col)
            grid.classes[row * resolution + col] = theta_classify(model, Complex(grid.x_at(col), y));
    }
    return grid;
}

std::optional<Disk> f2_disk(const ModelSpec& model) {
    if (model.sigma_law.charges_zero())
        throw std::domain_error("f2_disk: sigma law must not charge 0");
    const Complex center = model.aprime_mean();
    const double radius_sq =
        1.0 / model.sigma_law.moment(-2.0) - model.aprime_moment_m2(center);
    if (!(radius_sq > 0.0)) return std::nullopt;
    return Disk{center, std::sqrt(radius_sq)};
}

std::pair<double, double> ring_radii(const ModelSpec& model) {
    if (model.aprime_locations.size() != 1 || std::abs(model.aprime_locations[0]) != 0.0)
        throw std::domain_error("ring_radii: requires the trivial diagonal law delta_0");
    if (model.sigma_law.charges_zero())
        throw std::domain_error("ring_radii: sigma law must not charge 0");
    const double r_outer = std::sqrt(model.sigma_law.moment(2.0));
    const double r_inner = 1.0 / std::sqrt(model.sigma_law.moment(-2.0));
    return {r_inner, r_outer};
}

}  // namespace freering
