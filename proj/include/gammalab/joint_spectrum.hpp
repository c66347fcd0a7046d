#pragma once

#include <cstdint>
#include <vector>

#include "gammalab/matrix.hpp"

namespace gammalab::spec {

/// Ordered tuple of commuting square matrices of a common order.
struct MatrixTuple {
    int order = 0;
    std::vector<CMatrix> mats;
    double comm_tol = 1e-10;
};

MatrixTuple make_matrix_tuple(std::vector<CMatrix> mats, double comm_tol = 1e-10);

struct CommReport {
    /// norms(i, j) = ||T_i T_j - T_j T_i||_F
    std::vector<std::vector<double>> norms;
    double worst = 0.0;
    bool pass = false;
};

/// Pairwise commutator audit; pass iff every norm is at most
/// comm_tol * max||T_i|| * max||T_j||.
CommReport verify_commuting(const MatrixTuple& t);

/// Joint spectrum as joint diagonal coefficients under a simultaneous
/// unitary triangularization.
struct JointSpectrum {
    std::vector<std::vector<Complex>> points;  // N tuples of length k, with multiplicity
    std::vector<double> residuals;             // per point: max_i ||T_i v - lambda_i v||
    CMatrix triangularizer;                    // unitary Q
    bool used_staircase = false;
};

/// Simultaneous triangularization driven by a seeded random linear
/// combination, falling back to a joint-eigenvector staircase when the
/// combination is non-generic.
JointSpectrum joint_eigs(const MatrixTuple& t, uint64_t seed = 0);

/// Brute-force joint eigenvalues: every combination of per-matrix
/// eigenvalues is tested for a common kernel.  Independent of joint_eigs;
/// intended for cross-validation.  Guarded to order <= 8.
std::vector<std::vector<Complex>> joint_eigs_oracle(const MatrixTuple& t);

}  // namespace gammalab::spec
