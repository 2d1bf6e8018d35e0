#include "freering/subordination.hpp"

#include <algorithm>
#include <cmath>

namespace freering {

namespace {

constexpr double kStepTol = 1e-13;      // relative step tolerance of the fixed point
constexpr double kResidualTol = 1e-10;  // enforced on |G1(omega1) - G2(omega2)|
constexpr int kMaxIterations = 10000;

Complex h_of(const DiscreteMeasure& mu, Complex w) { return 1.0 / mu.cauchy(w) - w; }

// H'(w) = -G'(w)/G(w)^2 - 1
Complex h_prime(const DiscreteMeasure& mu, Complex w) {
    const Complex g = mu.cauchy(w);
    return -mu.cauchy_derivative(w) / (g * g) - 1.0;
}

SubordinationSolution translation_solution(const DiscreteMeasure& mu, double c, bool mu_is_first,
                                           Complex z) {
    // mu [+] delta_c is mu translated by c.
    SubordinationSolution sol;
    sol.z = z;
    const Complex w = z - c;
    const Complex g = mu.cauchy(w);
    const Complex omega_mu = w;
    const Complex omega_delta = c + 1.0 / g;  // G_delta(omega) = 1/(omega - c) = g
    sol.omega1 = mu_is_first ? omega_mu : omega_delta;
    sol.omega2 = mu_is_first ? omega_delta : omega_mu;
    sol.g_value = g;
    sol.iterations = 0;
    sol.residual = 0.0;
    return sol;
}

}  // namespace

SubordinationSolution subordination_solve(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                          Complex z) {
    if (!(z.imag() > 0.0)) throw std::domain_error("subordination_solve: need Im z > 0");

    if (mu2.is_point_mass()) return translation_solution(mu1, mu2.locations()[0], true, z);
    if (mu1.is_point_mass()) return translation_solution(mu2, mu1.locations()[0], false, z);

    // Fixed point of T(w) = z + H1(z + H2(w)); the limit is omega2.
    const auto apply_t = [&](Complex w) -> Complex { return z + h_of(mu1, z + h_of(mu2, w)); };

    Complex w = z;
    int it = 0;
    bool converged = false;
    const double im_floor = z.imag() * (1.0 - 1e-9);
    while (it < kMaxIterations) {
        const Complex u = z + h_of(mu2, w);
        const Complex tw = z + h_of(mu1, u);
        ++it;
        const Complex defect = tw - w;
        const double scale = std::max(1.0, std::abs(w));
        if (std::abs(defect) < kStepTol * scale) {
            w = tw;
            converged = true;
            break;
        }
        // Newton step on w - T(w); T'(w) = H1'(u) * H2'(w).
        const Complex tp = h_prime(mu1, u) * h_prime(mu2, w);
        bool advanced = false;
        if (tp != Complex(1.0, 0.0)) {
            const Complex w_newton = w - (w - tw) / (1.0 - tp);
            if (w_newton.imag() >= im_floor) {
                Complex tw_newton;
                bool ok = true;
                try {
                    tw_newton = apply_t(w_newton);
                } catch (const std::domain_error&) {
                    ok = false;
                }
                if (ok && std::abs(tw_newton - w_newton) < std::abs(defect)) {
                    w = w_newton;
                    ++it;
                    if (std::abs(tw_newton - w_newton) <
                        kStepTol * std::max(1.0, std::abs(w_newton))) {
                        converged = true;
                    }
                    advanced = true;
                }
            }
        }
        if (converged) break;
        if (!advanced) w = tw;  // plain Denjoy-Wolff step
    }

    SubordinationSolution sol;
    sol.z = z;
    sol.omega2 = w;
    sol.omega1 = z + h_of(mu2, sol.omega2);
    sol.g_value = mu1.cauchy(sol.omega1);
    sol.iterations = it;
    sol.residual = std::abs(sol.g_value - mu2.cauchy(sol.omega2));
    (void)converged;
    if (sol.residual >= kResidualTol)
        throw NonConvergenceError("subordination_solve: residual " + std::to_string(sol.residual) +
                                  " above tolerance at z=(" + std::to_string(z.real()) + "," +
                                  std::to_string(z.imag()) + ")");
    return sol;
}

Complex h_map(HSide side, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, Complex z) {
    const DiscreteMeasure& own = (side == HSide::H1) ? mu1 : mu2;
    const DiscreteMeasure& other = (side == HSide::H1) ? mu2 : mu1;
    const Complex g = own.cauchy(z);
    const double s_other = other.max_abs_location();
    if (s_other > 0.0 && std::abs(g) >= 1.0 / (6.0 * s_other))
        throw std::domain_error("h_map: |G(z)| outside the R-transform domain");
    return z + other.r_transform(g);
}

SupportGapCertificate support_gap(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                  HSide side) {
    const DiscreteMeasure& gap_side = (side == HSide::H1) ? mu1 : mu2;
    const DiscreteMeasure& other = (side == HSide::H1) ? mu2 : mu1;
    if (!gap_side.is_symmetric() || !other.is_symmetric())
        throw std::invalid_argument("support_gap: measures must be symmetric");

    if (gap_side.charges_zero())
        throw NoGapError("support_gap: the gap-side measure charges 0");
    const double margin = 1.0 - other.moment(2.0) * gap_side.moment(-2.0);
    if (!(margin > 0.0))
        throw NoGapError("support_gap: moment condition m2 * m_-2 < 1 fails");

    // eta: maximal symmetric gap of the gap-side measure around 0.
    const double eta = gap_side.min_abs_location();
    const double s1 = gap_side.max_abs_location();
    const double s2 = other.max_abs_location();
    const double eta0 = std::min({eta, std::pow(2.0, -0.25), 1.0 / (12.0 * (s1 + s2))});

    // Radius delta on which |R_other(w) - kappa2 w| <= (|kappa4|+1)|w|^3.
    // The tail sum_{m>=3} |kappa_2m| |w|^{2m-4} is bounded via the Cauchy
    // estimate |kappa_m| <= 2 s (6 s)^{m-1}, valid because |R| <= 2s on
    // |w| <= 1/(6s).
    double delta;
    if (s2 == 0.0) {
        delta = eta;  // other = delta_0: R identically 0
    } else {
        const double b = 6.0 * s2;
        const double tail_radius = 1.0 / std::sqrt(std::pow(b, 6) / 3.0 + b * b);
        delta = std::min(1.0 / (12.0 * s2), tail_radius);
    }

    const double kappa4 = other.free_cumulant4();
    const double k_const = 2.0 * other.moment(2.0) * std::pow(eta, -4.0) +
                           8.0 * (std::abs(kappa4) + 1.0) * std::pow(eta, -6.0);
    const double gamma =
        std::min({std::pow(eta0, 3.0), delta * eta * eta / 2.0, margin / (4.0 * k_const)});

    // Grid check: h strictly increasing on (-gamma/2, gamma/2).
    const int grid_points = 1000;
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid_points; ++k) {
        const double x = -gamma / 2.0 + gamma * (k + 0.5) / grid_points;
        const Complex hx = h_map(side, mu1, mu2, Complex(x, 0.0));
        if (!(hx.real() > prev))
            throw std::logic_error("support_gap: monotonicity grid check failed");
        prev = hx.real();
    }

    SupportGapCertificate cert;
    cert.gamma = gamma;
    cert.k_const = k_const;
    cert.side = side;
    cert.epsilon = h_map(side, mu1, mu2, Complex(gamma / 4.0, 0.0)).real();
    if (!(cert.epsilon > 0.0)) throw std::logic_error("support_gap: nonpositive epsilon");
    return cert;
}

std::vector<std::pair<double, double>> density_on_grid(const DiscreteMeasure& mu1,
                                                       const DiscreteMeasure& mu2,
                                                       std::pair<double, double> interval,
                                                       int points, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("density_on_grid: eta must be positive");
    if (points < 2) throw std::invalid_argument("density_on_grid: need at least 2 points");
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double x =
            interval.first + (interval.second - interval.first) * k / (points - 1.0);
        const auto sol = subordination_solve(mu1, mu2, Complex(x, eta));
        out.emplace_back(x, -sol.g_value.imag() / M_PI);
    }
    return out;
}

std::vector<std::pair<double, double>> density_on_grid_refined(const DiscreteMeasure& mu1,
                                                               const DiscreteMeasure& mu2,
                                                               std::pair<double, double> interval,
                                                               int points, double eta_start) {
    auto coarse = density_on_grid(mu1, mu2, interval, points, eta_start);
    double eta = eta_start;
    for (int round = 0; round < 40; ++round) {
        eta /= 2.0;
        auto fine = density_on_grid(mu1, mu2, interval, points, eta);
        double diff = 0.0;
        for (int k = 0; k < points; ++k)
            diff = std::max(diff, std::abs(fine[k].second - coarse[k].second));
        coarse = std::move(fine);
        if (diff < 1e-4) return coarse;
    }
    throw NonConvergenceError("density_on_grid_refined: grids did not stabilize");
}

double infdiv_phi(const DiscreteMeasure& mu1, const FiniteMeasure& sigma, double x) {
    if (!sigma.is_symmetric()) throw std::invalid_argument("infdiv_phi: sigma must be symmetric");
    if (sigma.empty()) return x;
    const Complex g = mu1.cauchy(Complex(x, 0.0));
    if (std::abs(g) == 0.0) return x;  // F1 = infinity, the integral term vanishes
    const double f1 = (1.0 / g).real();
    const double xi_max = sigma.max_abs_location();
    if (!(std::abs(f1) > xi_max))
        throw std::domain_error("infdiv_phi: |F1(x)| must exceed the support of sigma");
    double s = 0.0;
    for (std::size_t j = 0; j < sigma.locations().size(); ++j)
        s += sigma.weights()[j] / (f1 - sigma.locations()[j]);
    return x + s;
}

namespace {

// d(x, y) = sum_j sigma_j * Int dlambda_xi(t) / ((x-t)^2 + y^2)
//         = -(1/y) sum_j sigma_j Im[ 1/(F1(x+iy) - xi_j) ],
// using Im G_lambda(x+iy) = -y Int dlambda/((x-t)^2+y^2) with
// G_lambda = 1/(F1 - xi). Monotone decreasing in y.
double boundary_integral(const DiscreteMeasure& mu1, const FiniteMeasure& sigma, double x,
                         double y) {
    const Complex f1 = mu1.f_transform(Complex(x, y));
    double s = 0.0;
    for (std::size_t j = 0; j < sigma.locations().size(); ++j)
        s -= sigma.weights()[j] * (1.0 / (f1 - sigma.locations()[j])).imag();
    return s / y;
}

}  // namespace

double infdiv_boundary_nu(const DiscreteMeasure& mu1, const FiniteMeasure& sigma, double x) {
    if (!sigma.is_symmetric())
        throw std::invalid_argument("infdiv_boundary_nu: sigma must be symmetric");
    if (sigma.empty()) return 0.0;

    // y -> 0+ limit, computable in closed form off the atoms of mu1 when
    // F1(x) stays clear of supp(sigma).
    double dist_to_atom = std::numeric_limits<double>::infinity();
    for (double t : mu1.locations()) dist_to_atom = std::min(dist_to_atom, std::abs(x - t));
    if (dist_to_atom > 1e-9) {
        const Complex g = mu1.cauchy(Complex(x, 0.0));
        bool limit_ok = false;
        double limit = std::numeric_limits<double>::infinity();
        if (std::abs(g) == 0.0) {
            limit = 0.0;  // F1 = infinity: every term vanishes
            limit_ok = true;
        } else {
            const double f1 = (1.0 / g).real();
            if (std::abs(f1) > sigma.max_abs_location()) {
                const double f1p = (-mu1.cauchy_derivative(Complex(x, 0.0)) / (g * g)).real();
                double s = 0.0;
                for (std::size_t j = 0; j < sigma.locations().size(); ++j) {
                    const double d = f1 - sigma.locations()[j];
                    s += sigma.weights()[j] * f1p / (d * d);
                }
                limit = s;
                limit_ok = true;
            }
        }
        if (limit_ok && limit < 1.0) return 0.0;
    }

    // Bisection on the monotone-in-y integral.
    double y_hi = 1e-3;
    while (boundary_integral(mu1, sigma, x, y_hi) >= 1.0) {
        y_hi *= 2.0;
        if (y_hi > 1e12) throw NonConvergenceError("infdiv_boundary_nu: no finite boundary value");
    }
    double y_lo = 0.0;
    double probe = y_hi;
    // ensure the lower bracket actually exceeds 1; otherwise nu = 0
    bool exceeded = false;
    for (double y = y_hi / 2.0; y > 1e-13; y /= 2.0) {
        if (boundary_integral(mu1, sigma, x, y) >= 1.0) {
            y_lo = y;
            exceeded = true;
            break;
        }
        probe = y;
    }
    (void)probe;
    if (!exceeded) return 0.0;
    while (y_hi - y_lo > 1e-10) {
        const double mid = 0.5 * (y_lo + y_hi);
        if (boundary_integral(mu1, sigma, x, mid) >= 1.0)
            y_lo = mid;
        else
            y_hi = mid;
    }
    return 0.5 * (y_lo + y_hi);
}

}  // namespace freering
