#include "lapack_util.hpp"

#include <vector>

#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace freering::detail {

namespace {
lapack_complex_double* lp(Eigen::MatrixXcd& m) {
    return reinterpret_cast<lapack_complex_double*>(m.data());
}
}  // namespace

Eigen::VectorXcd eigenvalues_dense(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    const lapack_int n = static_cast<lapack_int>(m.rows());
    Eigen::MatrixXcd work = m;
    Eigen::VectorXcd w(n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'N', n, lp(work), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("zgeev failed, info=" + std::to_string(info));
    return w;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    Eigen::MatrixXcd work = m;
    Eigen::VectorXd s(std::min(rows, cols));
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, lp(work), rows,
                                           s.data(), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("zgesdd failed, info=" + std::to_string(info));
    return s;
}

void qr_unitary_factor(Eigen::MatrixXcd& a, Eigen::VectorXcd& r_diag) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("qr: matrix must be square");
    std::vector<std::complex<double>> tau(n);
    lapack_int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, n, n, lp(a), n,
                                     reinterpret_cast<lapack_complex_double*>(tau.data()));
    if (info != 0) throw std::runtime_error("zgeqrf failed, info=" + std::to_string(info));
    r_diag = a.diagonal();
    info = LAPACKE_zungqr(LAPACK_COL_MAJOR, n, n, n, lp(a), n,
                          reinterpret_cast<lapack_complex_double*>(tau.data()));
    if (info != 0) throw std::runtime_error("zungqr failed, info=" + std::to_string(info));
}

void set_blas_threads(int n) { openblas_set_num_threads(n); }

}  // namespace freering::detail
