#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

// Thin wrappers over LAPACK's dense non-Hermitian kernels (zgeev, zgesdd,
// zgeqrf/zungqr). Matrices are column-major throughout, matching Eigen's
// default layout, so data is passed without copies beyond the working copy
// LAPACK destroys.

namespace freering::detail {

/// All eigenvalues of a general complex square matrix (zgeev, values only).
Eigen::VectorXcd eigenvalues_dense(const Eigen::MatrixXcd& m);

/// Singular values in decreasing order (zgesdd, values only).
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// In-place QR: returns Q (zgeqrf + zungqr) and the diagonal of R.
void qr_unitary_factor(Eigen::MatrixXcd& a, Eigen::VectorXcd& r_diag);

/// Caps the BLAS thread pool; returns the previous value is not available,
/// so callers simply set what they need.
void set_blas_threads(int n);

}  // namespace freering::detail
