#pragma once

#include <cstdint>
#include <vector>

#include "freering/domains.hpp"
#include "freering/rmt.hpp"

namespace freering {

/// Matching outcome for one spike against one eigenvalue list.
struct SpikeMatch {
    Complex spike;
    int eigenvalues_in_disk = 0;  // eigenvalues within tol of the spike
    double distance = 0.0;        // distance of the nearest one (when any)
    bool matched = false;         // exactly one eigenvalue in the disk
};

/// Greedy nearest-first matching of eigenvalues to spike disks of radius
/// tol. Requires pairwise spike separation > 2*tol so disks are disjoint.
std::vector<SpikeMatch> match_spikes(const std::vector<Complex>& eigenvalues,
                                     const std::vector<Complex>& spikes_out, double tol);

/// min over the boundary sample of |g(z)| with g the deterministic
/// determinant ratio det(A - z)/det(A' - z); a near-zero means an
/// eigenvalue of the deterministic part sits close to the contour and the
/// outlier count inside is unstable.
double stability_margin(const ModelSpec& spec, long n, const std::vector<Complex>& boundary);

/// Number of eigenvalues in the closed disk.
int inner_empty_check(const std::vector<Complex>& eigenvalues, Complex center, double radius);

struct SpikeTrialStats {
    Complex spike;
    int match_count = 0;      // trials with exactly one eigenvalue in the disk
    double mean_distance = 0.0;
    double max_distance = 0.0;
};

struct OutlierReport {
    long n = 0;
    int trials = 0;
    double tol = 0.0;
    std::vector<SpikeTrialStats> per_spike;  // outer-domain spikes, model order
    int inner_violations = 0;                // eigenvalues found in the shrunk inner disk
    double stability_margin = 1.0;
    std::vector<std::uint64_t> seeds;
};

/// Monte-Carlo verification run: per trial samples the model, classifies
/// every spike, matches the outer ones within tol and counts eigenvalues
/// in the inner disk shrunk by tol. Trial t uses seed base_seed + t and
/// trials aggregate in index order.
OutlierReport run_experiment(const ModelSpec& spec, long n, int trials, double tol,
                             std::uint64_t base_seed);

}  // namespace freering
