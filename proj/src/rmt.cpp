#include "freering/rmt.hpp"

#include <cmath>

#include <Eigen/LU>

#include "lapack_util.hpp"

namespace freering {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& s : state_) s = splitmix64(seed);
}

std::uint64_t Rng::next_raw() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    // 53 random bits mapped to (0, 1]
    return (static_cast<double>(next_raw() >> 11) + 1.0) * 0x1.0p-53;
}

Complex Rng::complex_gaussian() {
    const double radius = std::sqrt(-std::log(uniform()));
    const double angle = 2.0 * M_PI * uniform();
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
    Eigen::MatrixXcd a(n, n);
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row) a(row, col) = rng.complex_gaussian();
    Eigen::VectorXcd r_diag;
    detail::qr_unitary_factor(a, r_diag);
    for (int col = 0; col < n; ++col) {
        const double mag = std::abs(r_diag[col]);
        const Complex phase = mag > 0.0 ? r_diag[col] / mag : Complex(1.0, 0.0);
        a.col(col) *= phase;
    }
    return a;
}

Eigen::VectorXcd random_unit_vector(int n, Rng& rng) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
    return v / v.norm();
}

std::vector<double> quantile_fill(const DiscreteMeasure& law, long count) {
    const auto& t = law.locations();
    const auto& w = law.weights();
    std::vector<double> cum(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        cum[i] = acc;
    }
    std::vector<double> out(count);
    std::size_t j = 0;
    for (long k = 0; k < count; ++k) {
        const double q = (k + 0.5) / static_cast<double>(count);
        while (j + 1 < cum.size() && cum[j] < q) ++j;
        out[k] = t[j];
    }
    return out;
}

std::vector<Complex> quantile_fill_complex(const std::vector<Complex>& atoms,
                                           const std::vector<double>& weights, long count) {
    std::vector<double> cum(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cum[i] = acc;
    }
    std::vector<Complex> out(count);
    std::size_t j = 0;
    for (long k = 0; k < count; ++k) {
        const double q = (k + 0.5) / static_cast<double>(count);
        while (j + 1 < cum.size() && cum[j] < q) ++j;
        out[k] = atoms[j];
    }
    return out;
}

Eigen::MatrixXcd ModelSample::y() const {
    return u * sigma_diag.asDiagonal();
}

Eigen::VectorXcd ModelSample::aprime_resolvent_apply(Complex z, const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd t = basis.adjoint() * x;
    for (long i = 0; i < n; ++i) {
        const Complex d = a_prime_diag[i] - z;
        if (std::abs(d) < 1e-14)
            throw std::domain_error("aprime resolvent: z hits the diagonal of A'");
        t[i] /= d;
    }
    return basis * t;
}

ModelSample sample_model(const ModelSpec& spec, long n, std::uint64_t seed) {
    const int r = static_cast<int>(spec.spikes.size());
    if (n <= r) throw std::invalid_argument("sample_model: need n > rank of the spike part");

    ModelSample s;
    s.n = n;
    s.rank = r;
    s.seed = seed;

    Rng rng(seed);
    s.u = haar_unitary(static_cast<int>(n), rng);
    s.basis = haar_unitary(static_cast<int>(n), rng);

    const auto sigma = quantile_fill(spec.sigma_law, n);
    s.sigma_diag = Eigen::Map<const Eigen::VectorXd>(sigma.data(), n);

    s.a_prime_diag = Eigen::VectorXcd::Zero(n);
    const auto bulk = quantile_fill_complex(spec.aprime_locations, spec.aprime_weights, n - r);
    for (long i = r; i < n; ++i) s.a_prime_diag[i] = bulk[i - r];

    s.spike_values = Eigen::VectorXcd::Zero(r);
    for (int i = 0; i < r; ++i) s.spike_values[i] = spec.spikes[i];

    // A'' = diag(spikes, 0...) has the analytic singular value
    // decomposition sum_i |th_i| (phase_i e_i) e_i^*; split |th_i| evenly
    // between the factors and rotate both into the sampled frame.
    s.p_factor = Eigen::MatrixXcd::Zero(n, r);
    s.q_factor = Eigen::MatrixXcd::Zero(r, n);
    for (int i = 0; i < r; ++i) {
        const Complex th = s.spike_values[i];
        const double mag = std::abs(th);
        if (mag == 0.0) continue;
        const Complex phase = th / mag;
        s.p_factor.col(i) = s.basis.col(i) * (phase * std::sqrt(mag));
        s.q_factor.row(i) = s.basis.col(i).adjoint() * std::sqrt(mag);
    }

    s.a_conj = s.basis * s.a_prime_diag.asDiagonal() * s.basis.adjoint();
    s.m = s.a_conj + s.p_factor * s.q_factor + s.u * s.sigma_diag.asDiagonal();
    return s;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m) { return detail::eigenvalues_dense(m); }

double smallest_sv(const Eigen::MatrixXcd& m, Complex z) {
    Eigen::MatrixXcd shifted = m;
    shifted.diagonal().array() -= z;
    const Eigen::VectorXd s = detail::singular_values(shifted);
    return s[s.size() - 1];
}

std::pair<Complex, Complex> det_functions(const ModelSample& sample, Complex z) {
    const long n = sample.n;
    const int r = sample.rank;
    if (r == 0) return {Complex(1.0, 0.0), Complex(1.0, 0.0)};

    // f: dense solve against the r columns of P
    Eigen::MatrixXcd k = -sample.a_conj - sample.u * sample.sigma_diag.asDiagonal();
    k.diagonal().array() += z;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(k);
    const Eigen::MatrixXcd x = lu.solve(sample.p_factor);
    const Complex f =
        (Eigen::MatrixXcd::Identity(r, r) - sample.q_factor * x).determinant();

    // g: the frame cancels and Q (zI - A')^{-1} P is diagonal
    Complex g = 1.0;
    for (int i = 0; i < r; ++i) {
        const Complex d = z - sample.a_prime_diag[i];  // zero slots: d = z
        if (std::abs(d) < 1e-14) throw std::domain_error("det_functions: z hits the diagonal of A'");
        g *= 1.0 - sample.spike_values[i] / d;
    }
    (void)n;
    return {f, g};
}

Complex series_term(const ModelSample& sample, Complex z, int k, const Eigen::VectorXcd& v,
                    const Eigen::VectorXcd& u) {
    if (k < 0) throw std::invalid_argument("series_term: k must be >= 0");
    Eigen::VectorXcd x = sample.aprime_resolvent_apply(z, u);
    for (int step = 0; step < k; ++step) {
        const Eigen::VectorXcd yx = sample.u * (sample.sigma_diag.asDiagonal() * x);
        x = sample.aprime_resolvent_apply(z, yx);
    }
    return v.dot(x);  // Eigen's dot conjugates the left argument
}

double spectral_radius_outer(const ModelSample& sample, Complex z) {
    // (A'-z)^{-1} Y  =  W diag(1/(a'-z)) W^* U Sigma
    Eigen::MatrixXcd t = sample.basis.adjoint() * (sample.u * sample.sigma_diag.asDiagonal());
    for (long i = 0; i < sample.n; ++i) {
        const Complex d = sample.a_prime_diag[i] - z;
        if (std::abs(d) < 1e-14)
            throw std::domain_error("spectral_radius_outer: z hits the diagonal of A'");
        t.row(i) /= d;
    }
    t = sample.basis * t;
    return eigenvalues(t).cwiseAbs().maxCoeff();
}

double spectral_radius_inner(const ModelSample& sample, Complex z) {
    if (sample.sigma_diag.minCoeff() <= 0.0)
        throw std::domain_error("spectral_radius_inner: Sigma must be invertible");
    // (A'-z) Y^{-1} = (a_conj - z) Sigma^{-1} U^*
    Eigen::MatrixXcd yinv = sample.u.adjoint();
    for (long i = 0; i < sample.n; ++i) yinv.row(i) /= sample.sigma_diag[i];
    Eigen::MatrixXcd shifted = sample.a_conj;
    shifted.diagonal().array() -= z;
    const Eigen::MatrixXcd t = shifted * yinv;
    return eigenvalues(t).cwiseAbs().maxCoeff();
}

}  // namespace freering
