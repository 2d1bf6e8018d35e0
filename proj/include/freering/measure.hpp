#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace freering {

using Complex = std::complex<double>;

/// Compactly supported probability measure on the real line, stored as a
/// finite list of weighted atoms in canonical form: locations strictly
/// increasing, weights positive and summing to one.
///
/// All analytic transforms of the measure (Cauchy/Stieltjes transform G,
/// its reciprocal F, the R-transform, absolute moments) are evaluated as
/// exact atom sums. Instances are immutable and safe to share across
/// threads.
class DiscreteMeasure {
public:
    /// Builds the canonical measure from raw atom data. Weights are
    /// rescaled to sum to one; atoms closer than the merge tolerance are
    /// combined (weight-averaged location, summed weight).
    static DiscreteMeasure from_atoms(const std::vector<double>& locations,
                                      const std::vector<double>& weights);

    /// Point mass at t.
    static DiscreteMeasure dirac(double t);

    const std::vector<double>& locations() const { return locations_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t atom_count() const { return locations_.size(); }
    bool is_symmetric() const { return symmetric_; }
    bool is_point_mass() const { return locations_.size() == 1; }

    /// Even reflection (mu(B) + mu(-B)) / 2.
    DiscreteMeasure symmetrized() const;

    /// Pushforward under t -> c*t (c != 0).
    DiscreteMeasure dilated(double c) const;

    double mean() const;
    /// Absolute moment  sum_i w_i |t_i|^p.  Negative p requires that the
    /// measure does not charge 0 (atoms within 1e-14 of 0 count as 0).
    double moment(double p) const;

    double min_abs_location() const;
    double max_abs_location() const;  // support radius

    /// True when the measure charges 0 (an atom within 1e-14 of 0).
    bool charges_zero() const;

    /// G(z) = sum_i w_i / (z - t_i).  Throws if z hits an atom.
    Complex cauchy(Complex z) const;
    /// G'(z) = -sum_i w_i / (z - t_i)^2.
    Complex cauchy_derivative(Complex z) const;
    /// F(z) = 1 / G(z).
    Complex f_transform(Complex z) const;

    /// R(w) = G^{-1}(w) - 1/w for |w| < 1/(6r), r the support radius,
    /// computed by Newton inversion of G; the defect |G(R(w)+1/w) - w|
    /// of the returned value is below 1e-12.  R(0) returns the mean.
    Complex r_transform(Complex w) const;

    /// Second and fourth free cumulants (exact for symmetric measures).
    double free_cumulant2() const;
    double free_cumulant4() const;

    /// Serialization: {"atoms": [[t, w], ...]} with exact float round-trip.
    std::string to_json_string() const;
    static DiscreteMeasure from_json_string(const std::string& text);

    bool operator==(const DiscreteMeasure& other) const = default;

private:
    DiscreteMeasure(std::vector<double> locations, std::vector<double> weights, bool symmetric)
        : locations_(std::move(locations)), weights_(std::move(weights)), symmetric_(symmetric) {}

    std::vector<double> locations_;
    std::vector<double> weights_;
    bool symmetric_ = false;
};

/// Finite (not necessarily normalized, possibly empty) atomic measure.
/// Carrier for the Levy-type measure of freely infinitely divisible laws.
class FiniteMeasure {
public:
    FiniteMeasure() = default;
    FiniteMeasure(std::vector<double> locations, std::vector<double> weights);

    const std::vector<double>& locations() const { return locations_; }
    const std::vector<double>& weights() const { return weights_; }
    bool empty() const { return locations_.empty(); }
    double total_mass() const;
    double max_abs_location() const;
    bool is_symmetric() const;

private:
    std::vector<double> locations_;
    std::vector<double> weights_;
};

/// Symmetrized empirical singular-value law of M - shift*I: atoms at
/// +/- s_i with weight 1/(2n) each; zero singular values contribute
/// weight 1/n at 0.
DiscreteMeasure symmetrized_singular_law(const Eigen::MatrixXcd& m, Complex shift);

struct TransformDiagnostics {
    std::vector<double> eta_grid;  // strictly decreasing
    double bound = 0.0;            // sup over the grid of |G(i eta)|
    bool passed = false;           // bound <= kappa2
};

/// Evaluates |G(i eta)| on a logarithmic grid eta in [n^-kappa1, 1] and
/// checks the uniform bound kappa2.
TransformDiagnostics cauchy_bound_diag(const DiscreteMeasure& mu, double kappa1, double kappa2,
                                       long n);

}  // namespace freering
