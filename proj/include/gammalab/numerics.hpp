#pragma once

#include <stdexcept>
#include <vector>

#include "gammalab/matrix.hpp"

namespace gammalab::num {

/// Numerical failure with a diagnostic payload.  Thrown instead of
/// returning partial answers silently.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SchurResult {
    CMatrix unitary;                  // Q
    CMatrix triangular;               // U, with Q U Q* = input
    std::vector<Complex> eigenvalues; // diagonal of U in iteration order
    double residual = 0.0;            // ||Q U Q* - input||_F
};

/// Non-convergence of the QR iteration; carries the partial iterate.
class SchurFailure : public NumericError {
public:
    SchurFailure(std::string msg, SchurResult partial)
        : NumericError(std::move(msg)), partial_(std::move(partial)) {}
    const SchurResult& partial() const { return partial_; }

private:
    SchurResult partial_;
};

/// Unitary Schur factorization of a square complex matrix.
///
/// Householder reduction to Hessenberg form followed by Wilkinson-shifted
/// QR with deflation at |h| <= tol * ||m||_F; iteration budget 100 * order.
SchurResult schur(const CMatrix& m, double tol = 1e-13);

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    CMatrix vectors;                  // unitary, column k pairs with eigenvalue k
};

/// Eigendecomposition of a (numerically) Hermitian matrix.
HermitianEig hermitian_eig(const CMatrix& m);

/// Largest singular value, computed from the Hermitian eigenproblem of m* m.
double operator_norm(const CMatrix& m);

/// Numerical radius w(m) = sup_{|v|=1} |<m v, v>|.
///
/// Evaluates max_theta lambda_max(Re(e^{i theta} m)) on a uniform grid and
/// refines around the grid maximizers by golden-section search.
double numerical_radius(const CMatrix& m, int grid_size = 64);

class NotPsdError : public NumericError {
public:
    NotPsdError(std::string msg, double offending)
        : NumericError(std::move(msg)), offending_eigenvalue_(offending) {}
    double offending_eigenvalue() const { return offending_eigenvalue_; }

private:
    double offending_eigenvalue_ = 0.0;
};

struct PsdSqrt {
    CMatrix sqrt;           // positive square root
    CMatrix pinv_of_sqrt;   // pseudo-inverse of the square root
    int rank = 0;           // number of eigenvalues above rank_tol
    CMatrix range_basis;    // m x rank, orthonormal columns spanning the range
};

/// Square root and pseudo-inverse of a PSD matrix via eigendecomposition.
/// Eigenvalues in [-rank_tol, 0] are clipped to zero; anything below
/// -rank_tol raises NotPsdError.
PsdSqrt hermitian_sqrt_and_pinv(const CMatrix& m, double rank_tol);

/// Roots (with multiplicity) of sum_k coeffs[k] t^k via the companion
/// matrix.  If monic is set, the leading coefficient must be 1.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, bool monic = false);

/// Determinant via LU with partial pivoting.
Complex det(const CMatrix& m);

/// Value of sum_k coeffs[k] t^k at t.
Complex poly_eval(const std::vector<Complex>& coeffs, Complex t);

/// Unit vector minimizing sum_i ||mats[i] v||^2 together with the attained
/// residual sqrt of that minimum (smallest "stacked" singular pair).
struct MinJointVector {
    std::vector<Complex> v;
    double residual = 0.0;
};
MinJointVector min_joint_vector(const std::vector<CMatrix>& mats);

}  // namespace gammalab::num
