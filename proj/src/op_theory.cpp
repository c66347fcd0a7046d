#include "gammalab/op_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammalab/gamma_geom.hpp"
#include "gammalab/joint_spectrum.hpp"
#include "gammalab/rng.hpp"
#include "gammalab/vn_check.hpp"

namespace gammalab::op {

const char* to_string(TupleClass c) {
    switch (c) {
        case TupleClass::GammaUnitary: return "GAMMA_UNITARY";
        case TupleClass::GammaIsometry: return "GAMMA_ISOMETRY";
        case TupleClass::PureGammaIsometry: return "PURE_GAMMA_ISOMETRY";
        case TupleClass::ContractionEvidence: return "CONTRACTION_EVIDENCE";
        case TupleClass::Refuted: return "REFUTED";
    }
    return "?";
}

OperatorTuple make_operator_tuple(std::vector<CMatrix> S, CMatrix P, double comm_tol) {
    OperatorTuple t;
    t.n = static_cast<int>(S.size()) + 1;
    if (t.n < 2) throw std::invalid_argument("OperatorTuple: need at least (S_1, P)");
    t.m = P.rows();
    P.check_square("OperatorTuple");
    double scale = std::max(P.frobenius_norm(), 1.0);
    for (const CMatrix& s : S) {
        s.check_square("OperatorTuple");
        if (s.rows() != t.m) throw std::invalid_argument("OperatorTuple: mixed orders");
        scale = std::max(scale, s.frobenius_norm());
    }
    std::vector<CMatrix> all = S;
    all.push_back(P);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            t.comm_defect = std::max(t.comm_defect, commutator_norm(all[i], all[j]));
    if (t.comm_defect > comm_tol * scale * scale)
        throw std::invalid_argument("OperatorTuple: components do not commute (defect " +
                                    std::to_string(t.comm_defect) + ")");
    t.p_norm = num::operator_norm(P);
    t.S = std::move(S);
    t.P = std::move(P);
    return t;
}

namespace {

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

}  // namespace

FOTuple fo_tuple(const OperatorTuple& t, double rank_tol_rel, int z_grid) {
    const int m = t.n - 1;
    const CMatrix defect_sq = CMatrix::identity(t.m) - t.P.adjoint() * t.P;
    const double rank_tol = rank_tol_rel * std::max(defect_sq.frobenius_norm(), 1e-30);
    const num::PsdSqrt d = num::hermitian_sqrt_and_pinv(defect_sq, rank_tol);

    FOTuple out;
    out.defect_rank = d.rank;
    out.range_basis = d.range_basis;
    out.A.reserve(static_cast<size_t>(m));
    out.residuals.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const CMatrix rhs = t.S[static_cast<size_t>(i)] -
                            t.S[static_cast<size_t>(m - 1 - i)].adjoint() * t.P;
        if (d.rank == 0) {
            if (num::operator_norm(rhs) > 1e-8 * std::max(1.0, t.p_norm))
                throw num::NumericError(
                    "fo_tuple: isometry-defect inconsistency (D_P = 0 but S_i != S_{n-i}^* P)");
            out.A.push_back(CMatrix(0, 0));
            out.residuals.push_back(num::operator_norm(rhs));
            continue;
        }
        // Solve on the numerical range of D_P; the orthogonal complement
        // block is zero by convention.
        const CMatrix a_range = d.range_basis.adjoint() * d.pinv_of_sqrt * rhs * d.pinv_of_sqrt *
                                d.range_basis;
        const CMatrix lifted = d.sqrt * d.range_basis * a_range * d.range_basis.adjoint() * d.sqrt;
        out.A.push_back(a_range);
        out.residuals.push_back(num::operator_norm(rhs - lifted));
    }

    out.omega_max.assign(static_cast<size_t>(m), 0.0);
    out.omega_bound.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        out.omega_bound[static_cast<size_t>(i)] = binomial(t.n, i + 1);
        if (d.rank == 0) continue;
        double w = 0.0;
        for (int g = 0; g < z_grid; ++g) {
            const Complex z = std::polar(1.0, 2.0 * M_PI * g / z_grid);
            const CMatrix pencil = out.A[static_cast<size_t>(i)] +
                                   out.A[static_cast<size_t>(m - 1 - i)] * z;
            w = std::max(w, num::numerical_radius(pencil, 64));
        }
        out.omega_max[static_cast<size_t>(i)] = w;
    }
    return out;
}

ToeplitzModel build_model(const var::PencilFamily& pf, int K) {
    if (K < 2) throw std::invalid_argument("build_model: need K >= 2");
    ToeplitzModel m;
    m.n = pf.n;
    m.d = pf.d;
    m.K = K;
    const CMatrix eye = CMatrix::identity(K);
    const CMatrix shift = CMatrix::lower_shift(K);
    m.T.reserve(static_cast<size_t>(pf.n - 1));
    for (int i = 0; i < pf.n - 1; ++i)
        m.T.push_back(eye.kron(pf.F[static_cast<size_t>(i)].adjoint()) +
                      shift.kron(pf.F[static_cast<size_t>(pf.n - 2 - i)]));
    m.V = shift.kron(CMatrix::identity(pf.d));
    return m;
}

IsometryDefects isometry_relations_check(const ToeplitzModel& m) {
    IsometryDefects out;
    const int cut = (m.K - 1) * m.d;
    for (size_t i = 0; i < m.T.size(); ++i) {
        const CMatrix defect = m.T[i] - m.T[m.T.size() - 1 - i].adjoint() * m.V;
        out.restricted.push_back(num::operator_norm(defect.leading(cut)));
        out.full.push_back(num::operator_norm(defect));
    }
    return out;
}

OperatorTuple compress_model(const ToeplitzModel& m, int K_prime) {
    if (K_prime < 2 || K_prime > m.K - 1)
        throw std::invalid_argument("compress_model: need 2 <= K' <= K - 1");
    const int cut = K_prime * m.d;
    std::vector<CMatrix> S;
    S.reserve(m.T.size());
    for (const CMatrix& t : m.T) S.push_back(t.leading(cut));
    return make_operator_tuple(std::move(S), m.V.leading(cut));
}

PurityReport purity_report(const CMatrix& p, double tol) {
    PurityReport out;
    const num::SchurResult s = num::schur(p);
    for (const Complex& lam : s.eigenvalues)
        out.spectral_radius = std::max(out.spectral_radius, std::abs(lam));
    CMatrix power = CMatrix::identity(p.rows());
    const CMatrix ph = p.adjoint();
    for (int k = 0; k < p.rows(); ++k) power = power * ph;
    out.power_norm = num::operator_norm(power);
    // At finite dimension purity of the adjoint is exactly sigma(P) inside
    // the open disc; the power test certifies the nilpotent case directly.
    out.pure = out.power_norm <= tol || out.spectral_radius <= 1.0 - 1e-6;
    return out;
}

namespace {

bool is_normal(const CMatrix& x, double tol) {
    const double scale = std::max(x.frobenius_norm(), 1e-30);
    return (x * x.adjoint() - x.adjoint() * x).frobenius_norm() <= tol * scale * scale;
}

// Scaled tuple ((n-1)/n S_1, ..., (1/n) S_{n-1}) viewed in Gamma_{n-1}.
OperatorTuple scaled_tuple(const OperatorTuple& t) {
    const int n = t.n;
    std::vector<CMatrix> comps;
    comps.reserve(static_cast<size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i)
        comps.push_back(t.S[static_cast<size_t>(i)] * (static_cast<double>(n - 1 - i) / n));
    CMatrix p = comps.back();
    comps.pop_back();
    return make_operator_tuple(std::move(comps), std::move(p));
}

}  // namespace

Classification classify_tuple(const OperatorTuple& t, const EvidenceParams& ev) {
    Classification out;
    const PurityReport purity = purity_report(t.P);
    out.purity_spectral_radius = purity.spectral_radius;
    out.purity_power_norm = purity.power_norm;

    if (t.p_norm > 1.0 + 1e-8) {
        out.label = TupleClass::Refuted;
        out.witness = "P is not a contraction: ||P|| = " + std::to_string(t.p_norm);
        return out;
    }

    // Gamma_n-unitary: normal components with joint spectrum on b Gamma_n.
    bool normal = true;
    for (const CMatrix& s : t.S) normal = normal && is_normal(s, 1e-8);
    normal = normal && is_normal(t.P, 1e-8);
    if (normal) {
        std::vector<CMatrix> all = t.S;
        all.push_back(t.P);
        const spec::JointSpectrum js = spec::joint_eigs(spec::make_matrix_tuple(all), ev.seed);
        bool on_boundary = true;
        for (const std::vector<Complex>& pt : js.points) {
            std::vector<Complex> s(pt.begin(), pt.end() - 1);
            const geom::PointClass pc = geom::classify_point(geom::make_gamma_point(s, pt.back()), 1e-7);
            on_boundary = on_boundary && pc.label == geom::Membership::Distinguished;
        }
        if (on_boundary) {
            out.label = TupleClass::GammaUnitary;
            return out;
        }
    }

    // Gamma_n-isometry: P isometric, S_i = S_{n-i}^* P, scaled tuple passes.
    const double iso_defect =
        (t.P.adjoint() * t.P - CMatrix::identity(t.m)).frobenius_norm();
    if (iso_defect <= 1e-8 * std::max(1.0, t.p_norm)) {
        double rel_defect = 0.0;
        double scale = 1.0;
        for (const CMatrix& s : t.S) scale = std::max(scale, s.frobenius_norm());
        for (int i = 0; i < t.n - 1; ++i)
            rel_defect = std::max(
                rel_defect, (t.S[static_cast<size_t>(i)] -
                             t.S[static_cast<size_t>(t.n - 2 - i)].adjoint() * t.P)
                                .frobenius_norm());
        if (rel_defect <= 1e-8 * scale) {
            bool scaled_ok;
            if (t.n == 2) {
                scaled_ok = num::operator_norm(t.S[0]) / 2.0 <= 1.0 + 1e-8;
            } else {
                scaled_ok = classify_tuple(scaled_tuple(t), ev).label != TupleClass::Refuted;
            }
            if (scaled_ok) {
                out.label = purity.pure ? TupleClass::PureGammaIsometry : TupleClass::GammaIsometry;
                return out;
            }
        }
    }

    // Randomized polynomial von Neumann evidence against the sampled
    // distinguished boundary (polynomial checks suffice on a polynomially
    // convex set).
    Rng rng(ev.seed ^ 0xc2b2ae3d27d4eb4full);
    std::vector<geom::GammaPoint> boundary;
    boundary.reserve(static_cast<size_t>(ev.boundary_samples));
    for (int b = 0; b < ev.boundary_samples; ++b) {
        std::vector<Complex> z(static_cast<size_t>(t.n));
        if (b % 8 == 0) {  // aligned tuples hit the extreme points
            const Complex w = rng.unit_circle();
            std::fill(z.begin(), z.end(), w);
        } else {
            for (Complex& zi : z) zi = rng.unit_circle();
        }
        boundary.push_back(geom::symmetrize(z));
    }

    out.worst_vn_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < ev.trials; ++trial) {
        const vn::MPoly f = vn::random_poly(t.n, ev.max_degree, 1, ev.seed + 1000003ull * trial);
        const double lhs = num::operator_norm(vn::eval_poly(f, t));
        double rhs = 0.0;
        for (const geom::GammaPoint& x : boundary) {
            std::vector<Complex> coords = x.s;
            coords.push_back(x.p);
            rhs = std::max(rhs, num::operator_norm(vn::eval_poly(f, coords)));
        }
        const double margin = rhs - lhs;
        out.worst_vn_margin = std::min(out.worst_vn_margin, margin);
        if (margin < -ev.tol) {
            out.label = TupleClass::Refuted;
            out.witness = "von Neumann violation at trial " + std::to_string(trial) +
                          " (margin " + std::to_string(margin) + ")";
            return out;
        }
    }
    out.label = TupleClass::ContractionEvidence;
    return out;
}

double dilation_check(const OperatorTuple& t, const ToeplitzModel& m, const CMatrix& embed,
                      int max_degree) {
    if (embed.rows() != m.K * m.d || embed.cols() != t.m)
        throw std::invalid_argument("dilation_check: embedding shape mismatch");
    if ((embed.adjoint() * embed - CMatrix::identity(t.m)).frobenius_norm() > 1e-10)
        throw std::invalid_argument("dilation_check: embedding is not isometric");
    if (static_cast<int>(t.S.size()) + 1 != m.n)
        throw std::invalid_argument("dilation_check: tuple/model dimension mismatch");

    const int slots = m.n;  // m_1..m_{n-1} then the V power
    // Powers of each factor up to max_degree.
    std::vector<std::vector<CMatrix>> big(static_cast<size_t>(slots));
    std::vector<std::vector<CMatrix>> small(static_cast<size_t>(slots));
    for (int s = 0; s < slots; ++s) {
        const CMatrix& bs = (s < m.n - 1) ? m.T[static_cast<size_t>(s)] : m.V;
        const CMatrix& ss = (s < m.n - 1) ? t.S[static_cast<size_t>(s)] : t.P;
        big[static_cast<size_t>(s)].push_back(CMatrix::identity(m.K * m.d));
        small[static_cast<size_t>(s)].push_back(CMatrix::identity(t.m));
        for (int k = 1; k <= max_degree; ++k) {
            big[static_cast<size_t>(s)].push_back(big[static_cast<size_t>(s)].back() * bs);
            small[static_cast<size_t>(s)].push_back(small[static_cast<size_t>(s)].back() * ss);
        }
    }

    double worst = 0.0;
    std::vector<int> alpha(static_cast<size_t>(slots), 0);
    while (true) {
        int total = 0;
        for (int a : alpha) total += a;
        if (total <= max_degree) {
            CMatrix bigprod = big[0][static_cast<size_t>(alpha[0])];
            CMatrix smallprod = small[0][static_cast<size_t>(alpha[0])];
            for (int s = 1; s < slots; ++s) {
                bigprod = bigprod * big[static_cast<size_t>(s)][static_cast<size_t>(alpha[static_cast<size_t>(s)])];
                smallprod = smallprod * small[static_cast<size_t>(s)][static_cast<size_t>(alpha[static_cast<size_t>(s)])];
            }
            const CMatrix compressed = embed.adjoint() * bigprod * embed;
            worst = std::max(worst, num::operator_norm(compressed - smallprod));
        }
        int pos = slots - 1;
        while (pos >= 0) {
            if (++alpha[static_cast<size_t>(pos)] <= max_degree) break;
            alpha[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return worst;
}

}  // namespace gammalab::op
