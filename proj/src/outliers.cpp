#include "freering/outliers.hpp"

#include <algorithm>
#include <cmath>

#include "freering/parallel.hpp"

namespace freering {

std::vector<SpikeMatch> match_spikes(const std::vector<Complex>& eigenvalues,
                                     const std::vector<Complex>& spikes_out, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("match_spikes: tol must be positive");
    for (std::size_t i = 0; i < spikes_out.size(); ++i)
        for (std::size_t j = i + 1; j < spikes_out.size(); ++j)
            if (std::abs(spikes_out[i] - spikes_out[j]) <= 2.0 * tol)
                throw std::invalid_argument("match_spikes: spikes closer than 2*tol");

    std::vector<SpikeMatch> out;
    out.reserve(spikes_out.size());
    for (const Complex spike : spikes_out) {
        SpikeMatch m;
        m.spike = spike;
        double best = std::numeric_limits<double>::infinity();
        for (const Complex ev : eigenvalues) {
            const double d = std::abs(ev - spike);
            if (d <= tol) {
                ++m.eigenvalues_in_disk;
                best = std::min(best, d);
            }
        }
        if (m.eigenvalues_in_disk > 0) m.distance = best;
        m.matched = (m.eigenvalues_in_disk == 1);
        out.push_back(m);
    }
    return out;
}

double stability_margin(const ModelSpec& spec, long n, const std::vector<Complex>& boundary) {
    (void)n;
    const int r = static_cast<int>(spec.spikes.size());
    if (r == 0) return 1.0;
    if (boundary.empty()) throw std::invalid_argument("stability_margin: empty boundary sample");

    // The bulk diagonal cancels between det(A - z) and det(A' - z); the
    // ratio reduces to the spike slots, whose diagonal-law entry is 0.
    double margin = std::numeric_limits<double>::infinity();
    for (const Complex z : boundary) {
        if (std::abs(z) < 1e-14)
            throw std::domain_error("stability_margin: boundary point hits a diagonal atom");
        Complex g = 1.0;
        for (int i = 0; i < r; ++i) g *= 1.0 - spec.spikes[i] / z;
        margin = std::min(margin, std::abs(g));
    }
    return margin;
}

int inner_empty_check(const std::vector<Complex>& eigenvalues, Complex center, double radius) {
    int count = 0;
    for (const Complex ev : eigenvalues)
        if (std::abs(ev - center) <= radius) ++count;
    return count;
}

OutlierReport run_experiment(const ModelSpec& spec, long n, int trials, double tol,
                             std::uint64_t base_seed) {
    if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");

    OutlierReport report;
    report.n = n;
    report.trials = trials;
    report.tol = tol;

    std::vector<Complex> outer_spikes;
    for (const Complex spike : spec.spikes)
        if (theta_classify(spec, spike) == DomainClass::ThetaOut) outer_spikes.push_back(spike);

    std::optional<Disk> inner;
    try {
        inner = f2_disk(spec);
    } catch (const std::domain_error&) {
        inner = std::nullopt;
    }
    const bool count_inner = inner.has_value() && inner->radius > tol;
    const double inner_radius = count_inner ? inner->radius - tol : 0.0;

    struct TrialResult {
        std::vector<SpikeMatch> matches;
        int inner_count = 0;
    };
    std::vector<TrialResult> results(trials);
    parallel_for_index(trials, [&](long t) {
        const auto sample = sample_model(spec, n, base_seed + static_cast<std::uint64_t>(t));
        const Eigen::VectorXcd ev = eigenvalues(sample.m);
        const std::vector<Complex> evs(ev.data(), ev.data() + ev.size());
        TrialResult res;
        res.matches = match_spikes(evs, outer_spikes, tol);
        if (count_inner) res.inner_count = inner_empty_check(evs, inner->center, inner_radius);
        results[t] = std::move(res);
    });

    report.per_spike.resize(outer_spikes.size());
    for (std::size_t s = 0; s < outer_spikes.size(); ++s) {
        SpikeTrialStats stats;
        stats.spike = outer_spikes[s];
        double dist_sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            const SpikeMatch& m = results[t].matches[s];
            if (m.matched) {
                ++stats.match_count;
                dist_sum += m.distance;
                stats.max_distance = std::max(stats.max_distance, m.distance);
            }
        }
        stats.mean_distance = stats.match_count > 0 ? dist_sum / stats.match_count : 0.0;
        report.per_spike[s] = stats;
    }
    for (int t = 0; t < trials; ++t) report.inner_violations += results[t].inner_count;

    // boundary circles of radius tol around the outer spikes, 64 points
    double margin = 1.0;
    for (const Complex spike : outer_spikes) {
        std::vector<Complex> circle(64);
        for (int k = 0; k < 64; ++k) {
            const double angle = 2.0 * M_PI * k / 64.0;
            circle[k] = spike + tol * Complex(std::cos(angle), std::sin(angle));
        }
        margin = std::min(margin, stability_margin(spec, n, circle));
    }
    report.stability_margin = margin;

    report.seeds.resize(trials);
    for (int t = 0; t < trials; ++t) report.seeds[t] = base_seed + static_cast<std::uint64_t>(t);
    return report;
}

}  // namespace freering
