#pragma once

#include <optional>
#include <vector>

#include "freering/measure.hpp"

namespace freering {

/// Limiting model data: the singular-value law of the rotation-invariant
/// summand, the eigenvalue law of the well-conditioned diagonal part, and
/// the finite list of spike eigenvalues carried by the low-rank part.
/// The finite-n realization fills diagonals with quantiles of the laws
/// and reserves the first r slots for the spikes (zeroing the diagonal
/// law there, so the deterministic summand has the spikes as exact
/// eigenvalues).
struct ModelSpec {
    DiscreteMeasure sigma_law;                 // law of the singular values, atoms >= 0
    std::vector<Complex> aprime_locations;     // complex atoms of the diagonal law
    std::vector<double> aprime_weights;        // positive, sum to 1
    std::vector<Complex> spikes;

    ModelSpec(DiscreteMeasure sigma, std::vector<Complex> a_locations,
              std::vector<double> a_weights, std::vector<Complex> spike_list);

    double aprime_moment_m2(Complex z) const;         // sum w_i |alpha_i - z|^2
    double aprime_moment_m_minus2(Complex z) const;   // sum w_i / |alpha_i - z|^2 (inf on atoms)
    Complex aprime_mean() const;                      // sum w_i alpha_i
};

enum class DomainClass { ThetaOut, ThetaIn, Neither };

/// Strict moment inequalities; boundary points and degenerate cases fall
/// into Neither.
DomainClass theta_classify(const ModelSpec& model, Complex z);

struct BBox {
    double xmin, xmax, ymin, ymax;
};

struct DomainGrid {
    BBox bbox;
    int resolution = 0;                // nodes per axis
    std::vector<DomainClass> classes;  // row-major, rows scan y, columns x

    DomainClass at(int row, int col) const { return classes[row * resolution + col]; }
    double x_at(int col) const { return bbox.xmin + (bbox.xmax - bbox.xmin) * col / (resolution - 1.0); }
    double y_at(int row) const { return bbox.ymin + (bbox.ymax - bbox.ymin) * row / (resolution - 1.0); }
};

DomainGrid grid_map(const ModelSpec& model, BBox bbox, int resolution);

struct Disk {
    Complex center;
    double radius = 0.0;
    bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

/// The inner domain is an open disk centered at the mean of the diagonal
/// law; empty when the radius-squared expression is nonpositive.
/// Membership of the inner domain is always decided by theta_classify,
/// never by this radius.
std::optional<Disk> f2_disk(const ModelSpec& model);

/// With a trivial diagonal law (delta_0) the two domains reduce to the
/// outside/inside of an annulus; returns (r_inner, r_outer).
std::pair<double, double> ring_radii(const ModelSpec& model);

}  // namespace freering
