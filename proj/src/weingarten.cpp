#include "freering/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "freering/parallel.hpp"
#include "freering/rmt.hpp"

namespace freering {

namespace {

using Perm = std::vector<int>;
using Rational = boost::rational<boost::multiprecision::cpp_int>;

std::vector<Perm> all_permutations(int p) {
    Perm base(p);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// sigma o tau^{-1}
Perm compose_with_inverse(const Perm& sigma, const Perm& tau) {
    Perm inv(tau.size());
    for (int i = 0; i < static_cast<int>(tau.size()); ++i) inv[tau[i]] = i;
    Perm out(sigma.size());
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) out[i] = sigma[inv[i]];
    return out;
}

int cycle_count(const Perm& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    int c = 0;
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) {
        if (seen[i]) continue;
        ++c;
        for (int j = i; !seen[j]; j = sigma[j]) seen[j] = true;
    }
    return c;
}

CycleType cycle_type_of(const Perm& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    CycleType type;
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = sigma[j]) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

long long int_pow(long n, int k) {
    long long out = 1;
    for (int i = 0; i < k; ++i) out *= n;
    return out;
}

// Exact Gaussian elimination of [Gram | e_id] over the rationals.
std::vector<Rational> solve_gram_exact(const std::vector<Perm>& perms, long n) {
    const int m = static_cast<int>(perms.size());
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = Rational(int_pow(n, cycle_count(compose_with_inverse(perms[i], perms[j]))));
    // identity permutation is the first in lexicographic order
    a[0][m] = Rational(1);

    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row)
            if (a[row][col] != Rational(0)) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw std::domain_error("weingarten: Gram matrix singular (n < p)");
        std::swap(a[col], a[pivot]);
        const Rational inv = Rational(1) / a[col][col];
        for (int j = col; j <= m; ++j) a[col][j] *= inv;
        for (int row = 0; row < m; ++row) {
            if (row == col || a[row][col] == Rational(0)) continue;
            const Rational factor = a[row][col];
            for (int j = col; j <= m; ++j) a[row][j] -= factor * a[col][j];
        }
    }
    std::vector<Rational> x(m);
    for (int i = 0; i < m; ++i) x[i] = a[i][m];
    return x;
}

long long catalan(int k) {
    long long c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace

double WeingartenTable::at(const CycleType& type) const {
    const auto it = values.find(type);
    if (it == values.end()) throw std::invalid_argument("weingarten: unknown cycle type");
    return it->second;
}

WeingartenTable wg_exact(int p, long n) {
    if (p < 1 || p > 6) throw std::invalid_argument("wg_exact: p must be in 1..6");
    if (n < p) throw std::domain_error("wg_exact: need n >= p for an invertible Gram matrix");

    const auto perms = all_permutations(p);
    const int m = static_cast<int>(perms.size());

    WeingartenTable table;
    table.p = p;
    table.n = n;

    std::vector<double> wg_row(m);
    if (p <= 3) {
        const auto exact = solve_gram_exact(perms, n);
        for (int i = 0; i < m; ++i)
            wg_row[i] = boost::rational_cast<double>(exact[i]);
        table.gram_residual = 0.0;
    } else {
        Eigen::MatrixXd gram(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                gram(i, j) = static_cast<double>(
                    int_pow(n, cycle_count(compose_with_inverse(perms[i], perms[j]))));
        const Eigen::MatrixXd inverse = gram.fullPivLu().inverse();
        table.gram_residual =
            (gram * inverse - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
        if (table.gram_residual >= 1e-10)
            throw std::domain_error("wg_exact: Gram inversion residual too large");
        wg_row = std::vector<double>(m);
        for (int i = 0; i < m; ++i) wg_row[i] = inverse(0, i);  // row of the identity
    }

    // Wg is a class function; collapse by cycle type and record the spread.
    std::map<CycleType, std::pair<double, double>> by_type;  // min, max
    for (int i = 0; i < m; ++i) {
        const CycleType type = cycle_type_of(perms[i]);
        auto [it, inserted] = by_type.try_emplace(type, std::make_pair(wg_row[i], wg_row[i]));
        if (!inserted) {
            it->second.first = std::min(it->second.first, wg_row[i]);
            it->second.second = std::max(it->second.second, wg_row[i]);
        }
    }
    double spread = 0.0;
    for (const auto& [type, mm] : by_type) {
        table.values[type] = 0.5 * (mm.first + mm.second);
        spread = std::max(spread, mm.second - mm.first);
    }
    table.class_spread = spread;
    return table;
}

double moebius_factor(const CycleType& sigma_type) {
    double out = 1.0;
    for (int len : sigma_type)
        out *= ((len - 1) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(catalan(len - 1));
    return out;
}

std::vector<double> wg_asymptotic_check(int p, const CycleType& sigma_type,
                                        const std::vector<long>& ns) {
    CycleType type = sigma_type;
    std::sort(type.rbegin(), type.rend());
    const int total = std::accumulate(type.begin(), type.end(), 0);
    if (total != p) throw std::invalid_argument("wg_asymptotic_check: partition must sum to p");
    const int transpositions = p - static_cast<int>(type.size());  // |sigma| = p - #sigma
    std::vector<double> out;
    out.reserve(ns.size());
    for (long n : ns) {
        const WeingartenTable table = wg_exact(p, n);
        out.push_back(std::pow(static_cast<double>(n), p + transpositions) * table.at(type));
    }
    return out;
}

double mixed_moment_exact(const std::vector<int>& i, const std::vector<int>& i_prime,
                          const std::vector<int>& j, const std::vector<int>& j_prime, long n) {
    const int p = static_cast<int>(i.size());
    if (i_prime.size() != i.size() || j.size() != i.size() || j_prime.size() != i.size())
        throw std::invalid_argument("mixed_moment_exact: index tuples must share one length");
    const WeingartenTable table = wg_exact(p, n);
    const auto perms = all_permutations(p);

    double total = 0.0;
    for (const Perm& alpha : perms) {
        bool rows_match = true;
        for (int k = 0; k < p && rows_match; ++k) rows_match = (i[k] == i_prime[alpha[k]]);
        if (!rows_match) continue;
        for (const Perm& beta : perms) {
            bool cols_match = true;
            for (int k = 0; k < p && cols_match; ++k) cols_match = (j[k] == j_prime[beta[k]]);
            if (!cols_match) continue;
            total += table.at(cycle_type_of(compose_with_inverse(alpha, beta)));
        }
    }
    return total;
}

McMoment mc_moment(const std::vector<int>& i, const std::vector<int>& i_prime,
                   const std::vector<int>& j, const std::vector<int>& j_prime, int n, int trials,
                   std::uint64_t seed) {
    const int p = static_cast<int>(i.size());
    if (i_prime.size() != i.size() || j.size() != i.size() || j_prime.size() != i.size())
        throw std::invalid_argument("mc_moment: index tuples must share one length");
    if (trials < 100) throw std::invalid_argument("mc_moment: need at least 100 trials");
    for (int k = 0; k < p; ++k)
        if (i[k] < 1 || i[k] > n || i_prime[k] < 1 || i_prime[k] > n || j[k] < 1 || j[k] > n ||
            j_prime[k] < 1 || j_prime[k] > n)
            throw std::invalid_argument("mc_moment: indices must lie in 1..n");

    std::vector<Complex> samples(trials);
    parallel_for_index(trials, [&](long t) {
        Rng rng(seed + static_cast<std::uint64_t>(t));
        const Eigen::MatrixXcd u = haar_unitary(n, rng);
        Complex monomial = 1.0;
        for (int k = 0; k < p; ++k) monomial *= u(i[k] - 1, j[k] - 1);
        for (int k = 0; k < p; ++k) monomial *= std::conj(u(i_prime[k] - 1, j_prime[k] - 1));
        samples[t] = monomial;
    });

    Complex sum = 0.0;
    double sum_sq = 0.0;
    for (const Complex s : samples) {
        sum += s;
        sum_sq += std::norm(s);
    }
    McMoment out;
    out.mean = sum / static_cast<double>(trials);
    const double variance =
        std::max(0.0, sum_sq / trials - std::norm(out.mean));
    out.stderr_ = std::sqrt(variance / trials);
    return out;
}

}  // namespace freering
