#include "freering/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "lapack_util.hpp"

namespace freering {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kSymmetryTol = 1e-12;
constexpr double kZeroAtomTol = 1e-14;

bool check_symmetric(const std::vector<double>& t, const std::vector<double>& w) {
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        if (std::abs(t[i] + t[j]) > kSymmetryTol) return false;
        if (std::abs(w[i] - w[j]) > kSymmetryTol) return false;
    }
    return true;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_atoms(const std::vector<double>& locations,
                                            const std::vector<double>& weights) {
    if (locations.empty() || locations.size() != weights.size())
        throw std::invalid_argument("measure: need equal, nonzero numbers of locations and weights");
    for (double t : locations)
        if (!std::isfinite(t)) throw std::invalid_argument("measure: atom location not finite");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("measure: weights must be positive");
        total += w;
    }

    std::vector<std::size_t> order(locations.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return locations[a] < locations[b]; });

    std::vector<double> t, w;
    t.reserve(locations.size());
    w.reserve(locations.size());
    for (std::size_t idx : order) {
        const double ti = locations[idx];
        const double wi = weights[idx] / total;
        if (!t.empty() && ti - t.back() <= kMergeTol) {
            // merge, keeping the weighted mean location
            const double wsum = w.back() + wi;
            t.back() = (t.back() * w.back() + ti * wi) / wsum;
            w.back() = wsum;
        } else {
            t.push_back(ti);
            w.push_back(wi);
        }
    }
    const bool symmetric = check_symmetric(t, w);
    return DiscreteMeasure(std::move(t), std::move(w), symmetric);
}

DiscreteMeasure DiscreteMeasure::dirac(double t) { return from_atoms({t}, {1.0}); }

DiscreteMeasure DiscreteMeasure::symmetrized() const {
    std::vector<double> t = locations_;
    std::vector<double> w = weights_;
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        t.push_back(-locations_[i]);
        w.push_back(weights_[i]);
    }
    return from_atoms(t, w);
}

DiscreteMeasure DiscreteMeasure::dilated(double c) const {
    if (c == 0.0) throw std::invalid_argument("measure: dilation factor must be nonzero");
    std::vector<double> t = locations_;
    for (double& x : t) x *= c;
    return from_atoms(t, weights_);
}

double DiscreteMeasure::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i) s += weights_[i] * locations_[i];
    return s;
}

bool DiscreteMeasure::charges_zero() const {
    for (double t : locations_)
        if (std::abs(t) < kZeroAtomTol) return true;
    return false;
}

double DiscreteMeasure::moment(double p) const {
    if (p < 0.0 && charges_zero())
        throw std::domain_error("measure: negative moment of a measure charging 0");
    double s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i)
        s += weights_[i] * std::pow(std::abs(locations_[i]), p);
    return s;
}

double DiscreteMeasure::min_abs_location() const {
    double m = std::abs(locations_[0]);
    for (double t : locations_) m = std::min(m, std::abs(t));
    return m;
}

double DiscreteMeasure::max_abs_location() const {
    return std::max(std::abs(locations_.front()), std::abs(locations_.back()));
}

Complex DiscreteMeasure::cauchy(Complex z) const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        const Complex d = z - locations_[i];
        if (std::abs(d) < 1e-15 * std::max(1.0, std::abs(locations_[i])))
            throw std::domain_error("cauchy transform: z hits an atom");
        s += weights_[i] / d;
    }
    return s;
}

Complex DiscreteMeasure::cauchy_derivative(Complex z) const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        const Complex d = z - locations_[i];
        if (std::abs(d) < 1e-15 * std::max(1.0, std::abs(locations_[i])))
            throw std::domain_error("cauchy transform: z hits an atom");
        s -= weights_[i] / (d * d);
    }
    return s;
}

Complex DiscreteMeasure::f_transform(Complex z) const { return 1.0 / cauchy(z); }

double DiscreteMeasure::free_cumulant2() const {
    const double m1 = mean();
    return moment(2.0) - m1 * m1;
}

double DiscreteMeasure::free_cumulant4() const {
    // Free cumulants for k >= 2 are shift-invariant, so center first;
    // for a centered law kappa4 = m4 - 2 m2^2.
    double m1 = mean(), m2 = 0, m3 = 0, m4 = 0;
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        const double t = locations_[i], w = weights_[i];
        m2 += w * t * t;
        m3 += w * t * t * t;
        m4 += w * t * t * t * t;
    }
    const double c2 = m2 - m1 * m1;
    const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
    return c4 - 2.0 * c2 * c2;
}

Complex DiscreteMeasure::r_transform(Complex w) const {
    if (is_point_mass()) return locations_[0];  // G^{-1}(w) = t + 1/w exactly
    const double m1 = mean();
    if (std::abs(w) == 0.0) return m1;
    const double r = max_abs_location();
    if (r > 0.0 && std::abs(w) >= 1.0 / (6.0 * r))
        throw std::domain_error("r_transform: argument outside |w| < 1/(6r)");

    // Newton inversion of G(x) = w starting from the two-term inverse series.
    Complex x = 1.0 / w + m1 + free_cumulant2() * w;
    const double target = 1e-13;
    Complex g = cauchy(x) - w;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(g) < target) break;
        const Complex dg = cauchy_derivative(x);
        Complex step = g / dg;
        // damped step if Newton overshoots
        for (int halving = 0; halving < 60; ++halving) {
            const Complex x_new = x - step;
            Complex g_new;
            try {
                g_new = cauchy(x_new) - w;
            } catch (const std::domain_error&) {
                step *= 0.5;
                continue;
            }
            if (std::abs(g_new) < std::abs(g)) {
                x = x_new;
                g = g_new;
                break;
            }
            step *= 0.5;
        }
    }
    if (std::abs(g) >= 1e-12)
        throw std::runtime_error("r_transform: Newton inversion of G did not converge");
    return x - 1.0 / w;
}

std::string DiscreteMeasure::to_json_string() const {
    nlohmann::ordered_json j;
    j["atoms"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < locations_.size(); ++i)
        j["atoms"].push_back({locations_[i], weights_[i]});
    return j.dump();
}

DiscreteMeasure DiscreteMeasure::from_json_string(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("atoms") || !j["atoms"].is_array())
        throw std::invalid_argument("measure json: missing \"atoms\" array");
    std::vector<double> t, w;
    for (const auto& atom : j["atoms"]) {
        if (!atom.is_array() || atom.size() != 2)
            throw std::invalid_argument("measure json: each atom must be [t, w]");
        t.push_back(atom[0].get<double>());
        w.push_back(atom[1].get<double>());
    }
    return from_atoms(t, w);
}

FiniteMeasure::FiniteMeasure(std::vector<double> locations, std::vector<double> weights) {
    if (locations.size() != weights.size())
        throw std::invalid_argument("finite measure: locations/weights size mismatch");
    for (double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("finite measure: weights must be >= 0");
    std::vector<std::size_t> order(locations.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return locations[a] < locations[b]; });
    for (std::size_t idx : order) {
        if (weights[idx] == 0.0) continue;
        locations_.push_back(locations[idx]);
        weights_.push_back(weights[idx]);
    }
}

double FiniteMeasure::total_mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double FiniteMeasure::max_abs_location() const {
    if (empty()) return 0.0;
    return std::max(std::abs(locations_.front()), std::abs(locations_.back()));
}

bool FiniteMeasure::is_symmetric() const {
    if (empty()) return true;
    return check_symmetric(locations_, weights_);
}

DiscreteMeasure symmetrized_singular_law(const Eigen::MatrixXcd& m, Complex shift) {
    if (m.rows() != m.cols()) throw std::invalid_argument("singular law: matrix must be square");
    Eigen::MatrixXcd shifted = m;
    shifted.diagonal().array() -= shift;
    const Eigen::VectorXd s = detail::singular_values(shifted);
    const long n = m.rows();
    std::vector<double> t, w;
    t.reserve(2 * n);
    w.reserve(2 * n);
    const double half = 0.5 / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
        t.push_back(s[i]);
        w.push_back(half);
        t.push_back(-s[i]);
        w.push_back(half);
    }
    return DiscreteMeasure::from_atoms(t, w);  // +/-0 pairs merge to weight 1/n at 0
}

TransformDiagnostics cauchy_bound_diag(const DiscreteMeasure& mu, double kappa1, double kappa2,
                                       long n) {
    if (!mu.is_symmetric()) throw std::invalid_argument("cauchy_bound_diag: measure not symmetric");
    if (kappa1 <= 0.0 || n < 2) throw std::invalid_argument("cauchy_bound_diag: need kappa1 > 0, n >= 2");
    const double eta_min = std::pow(static_cast<double>(n), -kappa1);
    const int points = 200;
    TransformDiagnostics diag;
    diag.eta_grid.reserve(points);
    double bound = 0.0;
    for (int k = 0; k < points; ++k) {
        // log grid from 1 down to eta_min
        const double frac = static_cast<double>(k) / (points - 1);
        const double eta = std::exp(std::log(1.0) + frac * (std::log(eta_min) - std::log(1.0)));
        diag.eta_grid.push_back(eta);
        bound = std::max(bound, std::abs(mu.cauchy(Complex(0.0, eta))));
    }
    diag.bound = bound;
    diag.passed = bound <= kappa2;
    return diag;
}

}  // namespace freering
