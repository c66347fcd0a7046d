#include "gammalab/interplay.hpp"

#include <cmath>
#include <limits>

#include "gammalab/numerics.hpp"

namespace gammalab::inter {

namespace {

void require_unimodular(Complex omega) {
    if (std::abs(std::abs(omega) - 1.0) > 1e-12)
        throw std::invalid_argument("project32: omega must be unimodular");
}

}  // namespace

geom::GammaPoint project32(const geom::GammaPoint& x, Complex omega_param) {
    if (x.n != 3) throw std::invalid_argument("project32: source must be a Gamma_3 point");
    require_unimodular(omega_param);
    const Complex s = x.s[0] / 3.0 + omega_param * x.s[1] / 3.0;
    return geom::make_gamma_point({s}, omega_param * x.p);
}

op::OperatorTuple project32_operator(const op::OperatorTuple& t, Complex omega_param) {
    if (t.n != 3) throw std::invalid_argument("project32_operator: source must be a Gamma_3 tuple");
    require_unimodular(omega_param);
    CMatrix s = t.S[0] * Complex(1.0 / 3.0) + t.S[1] * (omega_param / 3.0);
    return op::make_operator_tuple({std::move(s)}, t.P * omega_param);
}

PushforwardResult pushforward_variety(const var::PencilFamily& pf, const var::GridSpec& grid,
                                      uint64_t seed) {
    if (pf.n != 3) throw std::invalid_argument("pushforward_variety: source pencil must have n = 3");
    PushforwardResult out;
    out.A = (pf.F[0] + pf.F[1]) * Complex(1.0 / 3.0);
    out.omega = num::numerical_radius(out.A, 128);
    out.g2_pencil = var::make_pencil(2, {out.A});
    out.validity = var::validate_pencil(out.g2_pencil, grid).verdict;

    // Pointwise audit: every projected sample point must sit on a fiber of
    // the image pencil over the same p.
    const var::VarietySample sample = var::sample_variety(pf, grid, seed);
    for (const var::FiberRecord& rec : sample.records) {
        if (!rec.error.empty()) continue;
        std::vector<std::vector<Complex>> image_fiber;
        bool have_fiber = false;
        for (const std::vector<Complex>& s : rec.points) {
            const Complex mapped = (s[0] + s[1]) / 3.0;
            if (!have_fiber) {
                image_fiber = var::fiber(out.g2_pencil, rec.p, seed);
                have_fiber = true;
            }
            double dist = std::numeric_limits<double>::infinity();
            for (const std::vector<Complex>& w : image_fiber)
                dist = std::min(dist, std::abs(w[0] - mapped));
            out.match_residual = std::max(out.match_residual, dist);
        }
    }
    return out;
}

CounterexampleReport counterexample_demo(int omega_count) {
    CounterexampleReport rep;
    rep.source = geom::make_gamma_point({Complex(2.0), Complex(2.5)}, Complex(0.5));
    const geom::CanonicalC cc = geom::canonical_c(rep.source);
    rep.canonical_witness = cc.c;
    rep.witness_residual = cc.residual;
    rep.source_class = geom::classify_point(rep.source);

    rep.images.reserve(static_cast<size_t>(omega_count));
    for (int k = 0; k < omega_count; ++k) {
        const Complex omega = std::polar(1.0, 2.0 * M_PI * k / omega_count);
        const geom::GammaPoint img = project32(rep.source, omega);
        CounterexampleRow row;
        row.k = k;
        row.omega = omega;
        row.image_s = img.s[0];
        row.image_p = img.p;
        row.label = geom::classify_point(img).label;
        row.ay_slack = geom::ay_criterion(img.s[0], img.p).slack;
        if (row.label != geom::Membership::Exterior) ++rep.non_exterior_count;
        rep.images.push_back(row);
    }
    return rep;
}

}  // namespace gammalab::inter
