#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammalab/gamma_geom.hpp"
#include "gammalab/joint_spectrum.hpp"
#include "gammalab/matrix.hpp"

namespace gammalab::var {

/// Matrices F_1, ..., F_{n-1} defining the candidate curve
///   { (s, p) : s_i is a joint eigenvalue of F_i^* + p F_{n-i} }.
struct PencilFamily {
    int n = 2;  // ambient symmetrized-polydisc dimension
    int d = 1;  // matrix order
    std::vector<CMatrix> F;
};

PencilFamily make_pencil(int n, std::vector<CMatrix> F);

/// Polar grid over the closed unit p-disc.
struct GridSpec {
    int radii = 24;
    int angles = 64;
    bool include_boundary = true;
    double boundary_eps = 1e-3;  // interior radii stop at 1 - eps
};

/// The commuting tuple (F_1^* + p F_{n-1}, ..., F_{n-1}^* + p F_1).
spec::MatrixTuple pencil_tuple(const PencilFamily& pf, Complex p);

/// Fiber over p: d joint eigenvalues (s_1, ..., s_{n-1}) with multiplicity.
std::vector<std::vector<Complex>> fiber(const PencilFamily& pf, Complex p, uint64_t seed = 0);

/// det(F_i^* + p F_{n-i} - s_i I) for each i at the given point.
std::vector<Complex> pencil_determinants(const PencilFamily& pf, const geom::GammaPoint& x);

enum class Verdict { Valid, Invalid, Inconclusive };
const char* to_string(Verdict v);

struct PencilReport {
    // (i) commutators
    spec::CommReport plain_commutators;          // [F_i, F_j]
    double starred_commutator_defect = 0.0;      // max || [F_i*, F_{n-j}] - [F_j*, F_{n-i}] ||
    bool condition_i = false;
    // (ii) sampled interior containment
    double min_interior_margin = 0.0;
    Complex min_margin_location;                 // z attaining the minimum
    // (iii) monicity certificate for the regular-sequence condition
    bool monic = true;
    std::string monic_note;
    // boundary audit
    double worst_boundary_sym_defect = 0.0;      // max_i |s_i - conj(s_{n-i}) p| over |z| = 1
    bool boundary_distinguished = false;

    Verdict verdict = Verdict::Inconclusive;
    std::string witness;                         // human-readable failure location
    std::optional<Complex> witness_z;
};

/// Sampled audit of the distinguished-variety conditions.
PencilReport validate_pencil(const PencilFamily& pf, const GridSpec& grid = {},
                             double tol = geom::kDefaultTol, uint64_t seed = 0);

struct FiberRecord {
    Complex p;
    std::vector<std::vector<Complex>> points;       // fiber points, each of length n-1
    std::vector<std::vector<double>> det_residuals; // per point, per pencil index
    std::vector<geom::PointClass> classes;          // per point
    bool on_boundary = false;
    std::string error;                              // nonempty if the fiber failed
};

struct VarietySample {
    int n = 2;
    GridSpec grid;
    std::vector<FiberRecord> records;  // deterministic grid order, boundary last
};

/// Fibers over the polar grid; failures are recorded per grid point.
/// Parallel over grid points, capped by the GAMMALAB_THREADS variable.
VarietySample sample_variety(const PencilFamily& pf, const GridSpec& grid = {}, uint64_t seed = 0);

/// Wrap a single matrix as an n = 2 pencil.
/// Convention Refined:  curve det(A^* + p A - s I) = 0  (F_1 = A).
/// Convention Adjoint:  curve det(A + p A^* - s I) = 0  (F_1 = A^*).
enum class G2Convention { Refined, Adjoint };

struct G2Result {
    PencilFamily pencil;
    double omega = 0.0;           // numerical radius of A
    bool omega_sufficient = false;  // omega < 1
    PencilReport sampled;         // sampled sigma_T containment audit
};
G2Result g2_variety_from_matrix(const CMatrix& a, G2Convention convention = G2Convention::Refined,
                                const GridSpec& grid = {}, double tol = geom::kDefaultTol);

struct PolydiscPoint {
    std::vector<Complex> z;       // n polydisc coordinates
    double max_modulus = 0.0;
    double resym_residual = 0.0;  // distance of symmetrize(z) from the source point
    geom::Membership source_class = geom::Membership::Exterior;
    Complex p;
};

/// Push each sampled variety point through a fiber of the symmetrization map.
std::vector<PolydiscPoint> polydisc_sample(const PencilFamily& pf, const GridSpec& grid = {},
                                           uint64_t seed = 0);

struct SeparatingResult {
    bool on_variety = false;
    int index = 0;        // 1-based pencil index when separated
    Complex value;        // f_index(x)
};

/// First determinant f_i with |f_i(x)| > tol; "on-variety" otherwise.
SeparatingResult separating_poly(const PencilFamily& pf, const geom::GammaPoint& x, double tol);

}  // namespace gammalab::var
