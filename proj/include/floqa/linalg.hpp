#pragma once

#include "floqa/common.hpp"

namespace floqa {

/// max_ij |M - M^dag|
double hermiticity_defect(const Matrix& M);

/// max_ij |U^dag U - I|
double unitarity_defect(const Matrix& U);

/// exp(-i G) for Hermitian G. Exactly unitary by construction: closed form
/// for 2x2, eigendecomposition otherwise.
Matrix hermitian_generator_exp(const Matrix& G);

/// Eigendecomposition of a unitary matrix via simultaneous diagonalization
/// of the commuting Hermitian pair (U+U^dag)/2 and (U-U^dag)/2i. Returns
/// orthonormal eigenvectors even for clustered eigenvalues.
struct UnitaryEigensystem {
    Vector eigenvalues;   // on the unit circle
    Matrix eigenvectors;  // orthonormal columns
    double residual;      // max_i |U v_i - lambda_i v_i|
};

UnitaryEigensystem unitary_eigensystem(const Matrix& U);

/// U^n from a precomputed eigensystem; exact unitary powers for any n.
Matrix unitary_power(const UnitaryEigensystem& es, long long n);

}  // namespace floqa
