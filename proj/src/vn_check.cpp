#include "gammalab/vn_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammalab/numerics.hpp"
#include "gammalab/rng.hpp"

namespace gammalab::vn {

std::vector<std::vector<int>> enumerate_multi_indices(int nvars, int max_degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> alpha(static_cast<size_t>(nvars), 0);
    for (int total = 0; total <= max_degree; ++total) {
        // lexicographic within each total degree
        std::fill(alpha.begin(), alpha.end(), 0);
        alpha[0] = total;
        while (true) {
            out.push_back(alpha);
            // next composition of `total` into nvars parts, lex descending
            int pos = nvars - 2;
            while (pos >= 0 && alpha[static_cast<size_t>(pos)] == 0) --pos;
            if (pos < 0) break;
            --alpha[static_cast<size_t>(pos)];
            int rest = total;
            for (int i = 0; i <= pos; ++i) rest -= alpha[static_cast<size_t>(i)];
            for (int i = pos + 1; i < nvars; ++i) alpha[static_cast<size_t>(i)] = 0;
            alpha[static_cast<size_t>(pos + 1)] = rest;
        }
    }
    return out;
}

MPoly random_poly(int n, int max_degree, int block_order, uint64_t seed) {
    if (max_degree < 0) throw std::invalid_argument("random_poly: negative degree");
    if (block_order < 1) throw std::invalid_argument("random_poly: block order must be >= 1");
    MPoly f;
    f.n = n;
    f.degree = max_degree;
    f.block_order = block_order;
    f.seed = seed;
    f.exponents = enumerate_multi_indices(n, max_degree);
    Rng rng(seed ^ 0xd1b54a32d192ed03ull);
    f.coeffs.reserve(f.exponents.size());
    double max_norm = 0.0;
    for (size_t i = 0; i < f.exponents.size(); ++i) {
        CMatrix c = rng.gaussian_matrix(block_order, block_order);
        max_norm = std::max(max_norm, num::operator_norm(c));
        f.coeffs.push_back(std::move(c));
    }
    if (max_norm > 0.0)
        for (CMatrix& c : f.coeffs) c = c * Complex(1.0 / max_norm);
    return f;
}

CMatrix eval_poly(const MPoly& f, const std::vector<Complex>& point) {
    if (static_cast<int>(point.size()) != f.n)
        throw std::invalid_argument("eval_poly: point dimension mismatch");
    CMatrix acc(f.block_order, f.block_order);
    for (size_t t = 0; t < f.exponents.size(); ++t) {
        Complex mono = 1.0;
        for (int v = 0; v < f.n; ++v)
            for (int e = 0; e < f.exponents[t][static_cast<size_t>(v)]; ++e)
                mono *= point[static_cast<size_t>(v)];
        acc += f.coeffs[t] * mono;
    }
    return acc;
}

CMatrix eval_poly(const MPoly& f, const op::OperatorTuple& t) {
    if (t.n != f.n) throw std::invalid_argument("eval_poly: tuple dimension mismatch");
    // Powers of each slot up to the polynomial degree.
    std::vector<std::vector<CMatrix>> pow(static_cast<size_t>(f.n));
    for (int v = 0; v < f.n; ++v) {
        const CMatrix& base = (v < f.n - 1) ? t.S[static_cast<size_t>(v)] : t.P;
        pow[static_cast<size_t>(v)].push_back(CMatrix::identity(t.m));
        for (int k = 1; k <= f.degree; ++k)
            pow[static_cast<size_t>(v)].push_back(pow[static_cast<size_t>(v)].back() * base);
    }
    CMatrix acc(f.block_order * t.m, f.block_order * t.m);
    for (size_t idx = 0; idx < f.exponents.size(); ++idx) {
        CMatrix mono = pow[0][static_cast<size_t>(f.exponents[idx][0])];
        for (int v = 1; v < f.n; ++v)
            mono = mono * pow[static_cast<size_t>(v)][static_cast<size_t>(f.exponents[idx][static_cast<size_t>(v)])];
        acc += f.coeffs[idx].kron(mono);
    }
    return acc;
}

VNReport vn_experiment(const op::OperatorTuple& t, const var::PencilFamily& pf, int trials,
                       int max_degree, int block_order, const var::GridSpec& grid, double tol,
                       uint64_t seed, bool override_hypotheses) {
    VNReport rep;
    rep.grid = grid;

    const op::PurityReport purity = op::purity_report(t.P);
    const var::PencilReport audit = var::validate_pencil(pf, grid, geom::kDefaultTol, seed);
    rep.hypotheses_met = purity.pure && audit.verdict != var::Verdict::Invalid;
    if (!purity.pure)
        rep.hypothesis_note = "adjoint of P is not pure (spectral radius " +
                              std::to_string(purity.spectral_radius) + ")";
    else if (audit.verdict == var::Verdict::Invalid)
        rep.hypothesis_note = "pencil audit INVALID: " + audit.witness;
    if (!rep.hypotheses_met) {
        if (!override_hypotheses) return rep;
        rep.exploratory = true;
    }

    // The closure of the variety is sampled once; the maximum of a
    // holomorphic polynomial is approached through the boundary fibers, so
    // the grid always includes the |p| = 1 circle.
    var::GridSpec g = grid;
    g.include_boundary = true;
    const var::VarietySample sample = var::sample_variety(pf, g, seed);
    std::vector<std::vector<Complex>> points;
    for (const var::FiberRecord& rec : sample.records) {
        if (!rec.error.empty()) continue;
        for (const std::vector<Complex>& s : rec.points) {
            std::vector<Complex> coords = s;
            coords.push_back(rec.p);
            points.push_back(std::move(coords));
        }
    }
    if (points.empty()) throw num::NumericError("vn_experiment: empty variety sample");

    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.trials.reserve(static_cast<size_t>(trials));
    for (int k = 0; k < trials; ++k) {
        const MPoly f = random_poly(t.n, max_degree, block_order, seed + 7919ull * (k + 1));
        VNTrial tr;
        tr.trial = k;
        tr.degree = max_degree;
        tr.lhs = num::operator_norm(eval_poly(f, t));
        for (const std::vector<Complex>& pt : points)
            tr.rhs = std::max(tr.rhs, num::operator_norm(eval_poly(f, pt)));
        tr.margin = tr.rhs - tr.lhs;
        tr.holds = tr.margin >= -tol;
        rep.min_margin = std::min(rep.min_margin, tr.margin);
        rep.any_violation = rep.any_violation || !tr.holds;
        rep.trials.push_back(tr);
    }
    return rep;
}

}  // namespace gammalab::vn
