#pragma once

#include <vector>

#include "gammalab/matrix.hpp"

namespace gammalab::geom {

/// A point of C^n in symmetrized coordinates (s_1, ..., s_{n-1}, p).
struct GammaPoint {
    int n = 2;
    std::vector<Complex> s;  // length n - 1
    Complex p;
};

GammaPoint make_gamma_point(std::vector<Complex> s, Complex p);

enum class Membership {
    Interior,       // in the open symmetrized polydisc G_n
    TopBoundary,    // on the topological boundary but off the distinguished one
    Distinguished,  // on the distinguished boundary b Gamma_n
    Exterior,
};

const char* to_string(Membership m);

struct PointClass {
    Membership label = Membership::Exterior;
    /// Minimum over recursion levels of the slack in the binding inequality;
    /// nonnegative exactly when the label is not Exterior.
    double margin = 0.0;
    /// Max of 1/(1-|p|^2) along the recursion; +inf once a level is routed
    /// through the |p| = 1 boundary test.
    double conditioning = 1.0;
};

constexpr double kDefaultTol = 1e-9;

/// Elementary symmetric coordinates of z: s_i = e_i(z), p = prod z.
GammaPoint symmetrize(const std::vector<Complex>& z);

/// A fiber point of the symmetrization map: the n roots of
/// t^n - s_1 t^{n-1} + s_2 t^{n-2} - ... + (-1)^n p.
std::vector<Complex> desymmetrize(const GammaPoint& x);

/// The unique witness tuple c with s_i = c_i + conj(c_{n-i}) p, valid for
/// |p| < 1:
///
///   c_i = (s_i - p conj(s_{n-i})) / (1 - |p|^2).
///
/// Uniqueness: pairing the equations for i and n-i gives a linear system in
/// (c_i, conj(c_{n-i})) whose determinant is 1 - |p|^2 != 0; for the middle
/// index (n even) the equation t + conj(t) p = s_i in t is an invertible
/// real-linear map for |p| != 1.  Membership therefore reduces to testing
/// this single candidate.
struct CanonicalC {
    std::vector<Complex> c;
    double residual = 0.0;  // max_i |s_i - (c_i + conj(c_{n-i}) p)|
};
CanonicalC canonical_c(const GammaPoint& x, double tol = kDefaultTol);

/// Recursive membership classification for Gamma_n / G_n / b Gamma_n.
PointClass classify_point(const GammaPoint& x, double tol = kDefaultTol);

/// Closed-membership test for the symmetrized bidisc:
/// |s| <= 2 and |s - conj(s) p| <= 1 - |p|^2.  Used as the independent
/// n = 2 oracle for classify_point.
struct AyResult {
    bool in_closed = false;
    double slack = 0.0;  // min of the two inequality gaps
};
AyResult ay_criterion(Complex s, Complex p);

}  // namespace gammalab::geom
