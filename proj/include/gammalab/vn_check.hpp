#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalab/matrix.hpp"
#include "gammalab/op_theory.hpp"
#include "gammalab/variety.hpp"

namespace gammalab::vn {

/// Matrix-valued polynomial in n variables: sum over multi-indices alpha of
/// coeff(alpha) * x^alpha, all coefficient blocks of a common order.
struct MPoly {
    int n = 2;
    int degree = 0;
    int block_order = 1;
    std::vector<std::vector<int>> exponents;  // graded-lex order
    std::vector<CMatrix> coeffs;              // parallel to exponents
    uint64_t seed = 0;
};

/// Multi-indices of length nvars with total degree <= max_degree,
/// graded-lexicographic order.
std::vector<std::vector<int>> enumerate_multi_indices(int nvars, int max_degree);

/// Complex-Gaussian coefficients, normalized to unit max coefficient norm;
/// deterministic per seed.
MPoly random_poly(int n, int max_degree, int block_order, uint64_t seed);

/// Evaluation at a scalar point (length-n coordinate vector); result order
/// is the block order.
CMatrix eval_poly(const MPoly& f, const std::vector<Complex>& point);

/// Functional calculus at a commuting tuple: sum coeff(alpha) (x) S^alpha P^k,
/// result order block_order * m.
CMatrix eval_poly(const MPoly& f, const op::OperatorTuple& t);

struct VNTrial {
    int trial = 0;
    int degree = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool holds = false;
};

struct VNReport {
    bool hypotheses_met = false;
    std::string hypothesis_note;
    bool exploratory = false;  // run despite a failed gate
    var::GridSpec grid;
    std::vector<VNTrial> trials;
    double min_margin = 0.0;
    bool any_violation = false;
};

/// Randomized von Neumann experiment for ||f(S, P)|| against the sampled
/// maximum of ||f|| over the closure of the pencil variety.
///
/// Gate (checkable part of the dilation hypotheses): the adjoint of P is
/// pure in the finite-dimensional sense, the defect space is finite
/// (automatic), and the pencil does not audit INVALID.  A failed gate stops
/// the run unless override is set, in which case results are exploratory.
VNReport vn_experiment(const op::OperatorTuple& t, const var::PencilFamily& pf, int trials,
                       int max_degree, int block_order, const var::GridSpec& grid, double tol,
                       uint64_t seed, bool override_hypotheses = false);

}  // namespace gammalab::vn
