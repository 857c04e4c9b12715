#pragma once

#include <Eigen/Dense>

#include "ingham/quadforms.hpp"

namespace ingham {

struct EigenDecomposition {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi for complex Hermitian matrices. Sweeps stop once the
/// off-diagonal Frobenius norm drops below `rel_tol` times the Frobenius norm.
EigenDecomposition jacobi_eigen(const HermitianMatrix& a, double rel_tol = 1e-13, int max_sweeps = 100);

/// Generalized eigenpairs of S v = lambda Q v for Hermitian S and Hermitian
/// positive definite Q: Cholesky Q = L L^*, then Jacobi on L^{-1} S L^{-*}.
/// Eigenvectors are returned in the original coordinates (v = L^{-*} y).
/// Throws ValidationError("q_not_positive_definite") when Cholesky fails.
EigenDecomposition hermitian_pencil_eig(const HermitianMatrix& S, const HermitianMatrix& Q);

} // namespace ingham
