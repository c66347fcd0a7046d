#pragma once

#include <vector>

#include "gammalab/gamma_geom.hpp"
#include "gammalab/op_theory.hpp"
#include "gammalab/variety.hpp"

namespace gammalab::inter {

/// (s_1, s_2, p) -> (s_1/3 + w s_2/3, w p) for unimodular w.
geom::GammaPoint project32(const geom::GammaPoint& x, Complex omega_param);

/// Operator version of the same map.
op::OperatorTuple project32_operator(const op::OperatorTuple& t, Complex omega_param);

struct PushforwardResult {
    CMatrix A;                    // (F_1 + F_2) / 3
    double omega = 0.0;           // numerical radius of A
    var::PencilFamily g2_pencil;  // curve det(A^* + p A - s I) = 0
    var::Verdict validity = var::Verdict::Inconclusive;
    double match_residual = 0.0;  // worst distance of a projected sample point
                                  // from the image pencil's fiber
};

/// Image of an n = 3 pencil variety under (s_1, s_2, p) -> ((s_1+s_2)/3, p).
PushforwardResult pushforward_variety(const var::PencilFamily& pf,
                                      const var::GridSpec& grid = {}, uint64_t seed = 0);

struct CounterexampleRow {
    int k = 0;             // omega = exp(2 pi i k / count)
    Complex omega;
    Complex image_s;
    Complex image_p;
    geom::Membership label = geom::Membership::Exterior;
    double ay_slack = 0.0;
};

/// The scaling map is not injective on membership: a fixed exterior point
/// of Gamma_3 whose every scaled image lies in Gamma_2.
struct CounterexampleReport {
    geom::GammaPoint source;                 // (2, 5/2, 1/2)
    std::vector<Complex> canonical_witness;  // (1, 2)
    double witness_residual = 0.0;
    geom::PointClass source_class;           // EXTERIOR
    std::vector<CounterexampleRow> images;   // all non-EXTERIOR
    int non_exterior_count = 0;
};

CounterexampleReport counterexample_demo(int omega_count = 360);

}  // namespace gammalab::inter
