#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalab/matrix.hpp"
#include "gammalab/numerics.hpp"
#include "gammalab/variety.hpp"

namespace gammalab::op {

/// Candidate Gamma_n-contraction (S_1, ..., S_{n-1}, P) on C^m.
struct OperatorTuple {
    int n = 2;
    int m = 0;
    std::vector<CMatrix> S;
    CMatrix P;
    double comm_defect = 0.0;  // worst pairwise commutator among S_1..S_{n-1}, P
    double p_norm = 0.0;       // operator norm of P
};

/// Builds the tuple and certifies commutation; a non-commuting tuple is
/// rejected.  ||P|| is recorded, not enforced (classification reports it).
OperatorTuple make_operator_tuple(std::vector<CMatrix> S, CMatrix P, double comm_tol = 1e-8);

/// Fundamental operator tuple data: the unique A_i on the defect space of P
/// with S_i - S_{n-i}^* P = D_P A_i D_P.
struct FOTuple {
    std::vector<CMatrix> A;          // on the numerical range of D_P (order = defect rank)
    CMatrix range_basis;             // m x rank isometry identifying that range
    std::vector<double> residuals;   // per i: reconstruction defect norm
    std::vector<double> omega_max;   // per i: grid-max over z in T of w(A_i + A_{n-i} z)
    std::vector<double> omega_bound; // binomial(n, i)
    int defect_rank = 0;
};

FOTuple fo_tuple(const OperatorTuple& t, double rank_tol_rel = 1e-10, int z_grid = 256);

/// Truncated Toeplitz functional model with symbols phi_i(z) = F_i^* + F_{n-i} z
/// on K coefficient blocks of size d; V is the truncated shift.
struct ToeplitzModel {
    int n = 2;
    int d = 0;
    int K = 0;
    std::vector<CMatrix> T;  // order K*d, block diagonal F_i^*, block subdiagonal F_{n-i}
    CMatrix V;               // block lower shift
};

ToeplitzModel build_model(const var::PencilFamily& pf, int K);

struct IsometryDefects {
    /// Per i: ||T_i - T_{n-i}^* V|| restricted to the first K-1 blocks.
    std::vector<double> restricted;
    /// Per i: the same defect on the full truncated space (edge effect).
    std::vector<double> full;
};

IsometryDefects isometry_relations_check(const ToeplitzModel& m);

/// Compression of the model to the leading K' coefficient blocks.
OperatorTuple compress_model(const ToeplitzModel& m, int K_prime);

enum class TupleClass {
    GammaUnitary,
    GammaIsometry,
    PureGammaIsometry,
    ContractionEvidence,
    Refuted,
};
const char* to_string(TupleClass c);

struct EvidenceParams {
    int trials = 32;
    int max_degree = 3;
    int boundary_samples = 1024;
    double tol = 1e-8;
    uint64_t seed = 0;
};

struct Classification {
    TupleClass label = TupleClass::ContractionEvidence;
    std::string witness;        // filled when Refuted
    double worst_vn_margin = 0.0;
    double purity_spectral_radius = 0.0;
    double purity_power_norm = 0.0;
};

/// Decision tree: normal tuple with joint spectrum on the distinguished
/// boundary -> GammaUnitary; isometric P with the Gamma_n-isometry algebra
/// -> GammaIsometry; otherwise randomized polynomial von Neumann evidence
/// against the sampled distinguished boundary.
Classification classify_tuple(const OperatorTuple& t, const EvidenceParams& ev = {});

struct PurityReport {
    double spectral_radius = 0.0;
    double power_norm = 0.0;  // ||(P^*)^m||
    bool pure = false;
};
PurityReport purity_report(const CMatrix& p, double tol = 1e-10);

/// Max over all monomials of total degree <= max_degree of
/// || embed^* T^alpha V^k embed - S^alpha P^k ||.
double dilation_check(const OperatorTuple& t, const ToeplitzModel& m, const CMatrix& embed,
                      int max_degree);

}  // namespace gammalab::op
