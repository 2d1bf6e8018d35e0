#pragma once

#include <utility>
#include <vector>

#include "freering/measure.hpp"

namespace freering {

/// Thrown when an iterative solver fails to reach its tolerance.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by support_gap when the moment condition m2 * m_{-2} < 1 fails.
class NoGapError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One evaluation of the subordination system for mu1 [+] mu2 at z:
///   G(z) = G1(omega1(z)) = G2(omega2(z)),
/// with omega1 + omega2 = z + F(z).
struct SubordinationSolution {
    Complex z;
    Complex omega1;
    Complex omega2;
    Complex g_value;  // G_{mu1 [+] mu2}(z)
    int iterations = 0;
    double residual = 0.0;  // |G1(omega1) - G2(omega2)|
};

enum class HSide { H1, H2 };

/// Solves the subordination equations for Im z > 0 by iterating the
/// composed map w -> z + H1(z + H2(w)) from w0 = z (Denjoy-Wolff gives
/// global convergence), with a safeguarded Newton refinement once the
/// plain iteration slows down. Point masses bypass the iteration: a
/// convolution with delta_c is an exact translation.
///
/// The returned residual |G1(omega1) - G2(omega2)| is below 1e-10, else
/// NonConvergenceError is thrown.
SubordinationSolution subordination_solve(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                          Complex z);

/// Local inverse of the subordination functions near the origin:
///   h1(z) = z + R2(G1(z)),   h2(z) = z + R1(G2(z)).
/// Defined where |G_own(z)| < 1/(6 s_other); throws std::domain_error
/// outside.
Complex h_map(HSide side, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, Complex z);

/// Certificate that [-epsilon, epsilon] is disjoint from the support of
/// mu1 [+] mu2, derived from strict monotonicity of the local inverse h
/// on (-gamma/2, gamma/2).
struct SupportGapCertificate {
    double gamma = 0.0;    // radius of the certified monotonicity interval
    double k_const = 0.0;  // cubic-error constant of h near 0
    double epsilon = 0.0;  // certified half-gap, = h(gamma/4)
    HSide side = HSide::H1;
};

/// Side H1 requires m2(mu2) * m_{-2}(mu1) < 1 and a symmetric gap of mu1
/// around 0; H2 swaps the roles. Throws NoGapError when the moment
/// condition fails (including the two-point equality case of the
/// Cauchy-Schwarz bound).
SupportGapCertificate support_gap(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                  HSide side);

/// density(x) = -Im G_{mu1 [+] mu2}(x + i eta) / pi on an equally spaced
/// grid over [interval.first, interval.second].
std::vector<std::pair<double, double>> density_on_grid(const DiscreteMeasure& mu1,
                                                       const DiscreteMeasure& mu2,
                                                       std::pair<double, double> interval,
                                                       int points, double eta);

/// Halves eta until two successive grids agree within 1e-4 pointwise and
/// returns the finer one.
std::vector<std::pair<double, double>> density_on_grid_refined(const DiscreteMeasure& mu1,
                                                               const DiscreteMeasure& mu2,
                                                               std::pair<double, double> interval,
                                                               int points, double eta_start);

/// Global left inverse of omega1 when mu2 is freely infinitely divisible
/// with symmetric Levy-type measure sigma:
///   phi(x) = x + sum_j sigma_j / (F1(x) - xi_j),
/// valid for x in a gap of supp(mu1) with |F1(x)| > max |xi_j|.
double infdiv_phi(const DiscreteMeasure& mu1, const FiniteMeasure& sigma, double x);

/// Boundary function of the image of omega1 for the same setting:
///   nu(x) = inf{ y > 0 : sum_j sigma_j * Im(-1/(F1(x+iy) - xi_j)) / y < 1 },
/// computed by bisection in y (the double integral is the stated
/// expression, exactly); returns 0 when the y->0+ limit is already < 1.
double infdiv_boundary_nu(const DiscreteMeasure& mu1, const FiniteMeasure& sigma, double x);

}  // namespace freering
