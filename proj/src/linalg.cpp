// linalg.cpp
#include "autopump/linalg.hpp"

#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "autopump/errors.hpp"

namespace autopump::linalg {

EigenDecomposition eigh(const Eigen::MatrixXcd& hermitian) {
    const auto n = static_cast<lapack_int>(hermitian.rows());
    if (hermitian.rows() != hermitian.cols()) throw NumericalError("eigh: matrix is not square");
    EigenDecomposition out;
    out.values.resize(n);
    if (n == 0) return out;
    // zheevd from the system OpenBLAS returns wrong vectors (info = 0) above n of a few hundred;
    // the MRRR driver is both correct and faster here.
    Eigen::MatrixXcd work = hermitian;
    out.vectors.resize(n, n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, work.data(), n, 0.0, 0.0, 0, 0,
                                           0.0, &found, out.values.data(), out.vectors.data(), n, support.data());
    if (info != 0) throw NumericalError("eigh: zheevr failed with info = " + std::to_string(info));
    if (found != n) throw NumericalError("eigh: zheevr returned " + std::to_string(found) + " of " + std::to_string(n) + " eigenpairs");
    return out;
}

}  // namespace autopump::linalg
