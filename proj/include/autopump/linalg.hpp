// linalg.hpp: dense Hermitian eigensolver (LAPACK zheevr)
#pragma once

#include <Eigen/Dense>

namespace autopump::linalg {

struct EigenDecomposition {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // columns
};

// Reads the lower triangle. Throws NumericalError if LAPACK reports failure.
EigenDecomposition eigh(const Eigen::MatrixXcd& hermitian);

}  // namespace autopump::linalg
