#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Core>

#include "freering/domains.hpp"
#include "freering/measure.hpp"

namespace freering {

/// Deterministic random stream: xoshiro256** seeded through splitmix64,
/// with a hand-rolled Gaussian transform, so sequences are reproducible
/// across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();             // (0, 1]
    Complex complex_gaussian();   // E z = 0, E|z|^2 = 1
    std::uint64_t next_raw();

private:
    std::uint64_t state_[4];  // xoshiro256** internals
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phase correction that makes the R factor's diagonal positive (plain QR
/// is not Haar).
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

/// Random unit vector (normalized complex Gaussian).
Eigen::VectorXcd random_unit_vector(int n, Rng& rng);

/// One finite-n realization of the model: the deterministic summand is
/// sampled unitarily invariant as W diag(a' + spikes) W^* with W Haar;
/// a diagonal summand would share the eigenbasis of Sigma and the inner
/// domain then fills with bulk eigenvalues.
struct ModelSample {
    long n = 0;
    int rank = 0;
    Eigen::VectorXcd a_prime_diag;  // quantiles of the diagonal law, spike slots zeroed
    Eigen::VectorXcd spike_values;
    Eigen::VectorXd sigma_diag;     // quantiles of the singular-value law
    Eigen::MatrixXcd u;             // Haar factor of Y = U Sigma
    Eigen::MatrixXcd basis;         // Haar frame W of the deterministic summand
    Eigen::MatrixXcd a_conj;        // W diag(a') W^*
    Eigen::MatrixXcd p_factor;      // n x r, conjugated left factor of the spike part
    Eigen::MatrixXcd q_factor;      // r x n, conjugated right factor
    Eigen::MatrixXcd m;             // a_conj + P Q + U Sigma
    std::uint64_t seed = 0;

    Eigen::MatrixXcd y() const;  // U Sigma

    /// x -> (A' - z)^{-1} x in the sampled frame (diagonal solve
    /// sandwiched between W^* and W).
    Eigen::VectorXcd aprime_resolvent_apply(Complex z, const Eigen::VectorXcd& x) const;
};

/// Deterministic diagonal fill: entry k of count is the quantile of the
/// law at (k + 1/2) / count.
std::vector<double> quantile_fill(const DiscreteMeasure& law, long count);
std::vector<Complex> quantile_fill_complex(const std::vector<Complex>& atoms,
                                           const std::vector<double>& weights, long count);

ModelSample sample_model(const ModelSpec& spec, long n, std::uint64_t seed);

/// All eigenvalues of a dense complex matrix (LAPACK backed).
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m);

/// Smallest singular value of M - z I.
double smallest_sv(const Eigen::MatrixXcd& m, Complex z);

/// The two determinant functions of the sample at z:
///   f(z) = det(I_r - Q (zI - A' - Y)^{-1} P)      (random resolvent)
///   g(z) = det(I_r - Q (zI - A')^{-1} P)          (deterministic resolvent)
/// so that det(M - z) = det(A' + Y - z) * f(z) and
/// g(z) = det(A - z) / det(A' - z).
std::pair<Complex, Complex> det_functions(const ModelSample& sample, Complex z);

/// v^* ((A'-z)^{-1} Y)^k (A'-z)^{-1} u, evaluated by k solve-and-multiply
/// passes; no dense inverse is formed.
Complex series_term(const ModelSample& sample, Complex z, int k, const Eigen::VectorXcd& v,
                    const Eigen::VectorXcd& u);

/// Spectral radius of (A'-z)^{-1} Y.
double spectral_radius_outer(const ModelSample& sample, Complex z);

/// Spectral radius of (A'-z) Y^{-1}.
double spectral_radius_inner(const ModelSample& sample, Complex z);

}  // namespace freering
