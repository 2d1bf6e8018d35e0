#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "freering/measure.hpp"

namespace freering {

/// Cycle type as a decreasing partition of p.
using CycleType = std::vector<int>;

/// The unitary Weingarten function at order p and dimension n, indexed by
/// cycle type. Computed by inverting the p! x p! Gram matrix
/// [n^{#(sigma tau^{-1})}] over the symmetric group: exact rational
/// elimination for p <= 3, floating inversion with a residual check for
/// p in {4, 5, 6}.
struct WeingartenTable {
    int p = 0;
    long n = 0;
    std::map<CycleType, double> values;
    double gram_residual = 0.0;  // max |(Gram * inverse - I)_{ij}|
    double class_spread = 0.0;   // max in-class deviation of the inverse

    double at(const CycleType& type) const;
};

WeingartenTable wg_exact(int p, long n);

/// n^{p+|sigma|} * Wg(sigma, n) for each n; converges to the Moebius
/// factor prod_cycles (-1)^{len-1} Catalan(len-1) at rate O(n^-2).
std::vector<double> wg_asymptotic_check(int p, const CycleType& sigma_type,
                                        const std::vector<long>& ns);

double moebius_factor(const CycleType& sigma_type);

/// Exact Haar mixed moment
///   E[ U_{i1 j1} ... U_{ip jp} conj(U_{i'1 j'1}) ... conj(U_{i'p j'p}) ]
/// via the double sum over S_p x S_p of index-matching deltas times Wg.
double mixed_moment_exact(const std::vector<int>& i, const std::vector<int>& i_prime,
                          const std::vector<int>& j, const std::vector<int>& j_prime, long n);

struct McMoment {
    Complex mean;
    double stderr_ = 0.0;
};

/// Monte-Carlo estimate of the same monomial over Haar samples; trial t
/// uses seed + t.
McMoment mc_moment(const std::vector<int>& i, const std::vector<int>& i_prime,
                   const std::vector<int>& j, const std::vector<int>& j_prime, int n, int trials,
                   std::uint64_t seed);

}  // namespace freering
