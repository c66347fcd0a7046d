#include "gammalab/variety.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "gammalab/numerics.hpp"

namespace gammalab::var {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "VALID";
        case Verdict::Invalid: return "INVALID";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

PencilFamily make_pencil(int n, std::vector<CMatrix> F) {
    if (n < 2) throw std::invalid_argument("PencilFamily: need n >= 2");
    if (static_cast<int>(F.size()) != n - 1)
        throw std::invalid_argument("PencilFamily: expected n - 1 matrices");
    PencilFamily pf;
    pf.n = n;
    pf.d = F.front().rows();
    for (const CMatrix& m : F) {
        m.check_square("PencilFamily");
        if (m.rows() != pf.d) throw std::invalid_argument("PencilFamily: mixed orders");
    }
    pf.F = std::move(F);
    return pf;
}

spec::MatrixTuple pencil_tuple(const PencilFamily& pf, Complex p) {
    std::vector<CMatrix> mats;
    mats.reserve(static_cast<size_t>(pf.n - 1));
    for (int i = 0; i < pf.n - 1; ++i)
        mats.push_back(pf.F[static_cast<size_t>(i)].adjoint() +
                       pf.F[static_cast<size_t>(pf.n - 2 - i)] * p);
    return spec::make_matrix_tuple(std::move(mats));
}

std::vector<std::vector<Complex>> fiber(const PencilFamily& pf, Complex p, uint64_t seed) {
    return spec::joint_eigs(pencil_tuple(pf, p), seed).points;
}

std::vector<Complex> pencil_determinants(const PencilFamily& pf, const geom::GammaPoint& x) {
    if (x.n != pf.n) throw std::invalid_argument("pencil_determinants: dimension mismatch");
    std::vector<Complex> vals;
    vals.reserve(static_cast<size_t>(pf.n - 1));
    for (int i = 0; i < pf.n - 1; ++i) {
        CMatrix m = pf.F[static_cast<size_t>(i)].adjoint() +
                    pf.F[static_cast<size_t>(pf.n - 2 - i)] * x.p;
        for (int r = 0; r < pf.d; ++r) m(r, r) -= x.s[static_cast<size_t>(i)];
        vals.push_back(num::det(m));
    }
    return vals;
}

namespace {

std::vector<Complex> grid_points(const GridSpec& g, bool boundary_only, bool interior_only) {
    std::vector<Complex> pts;
    if (!boundary_only) {
        for (int j = 0; j < g.radii; ++j) {
            const double r = (1.0 - g.boundary_eps) * (j + 1) / g.radii;
            for (int k = 0; k < g.angles; ++k)
                pts.push_back(std::polar(r, 2.0 * M_PI * k / g.angles));
        }
    }
    if (!interior_only && g.include_boundary) {
        for (int k = 0; k < g.angles; ++k) pts.push_back(std::polar(1.0, 2.0 * M_PI * k / g.angles));
    }
    return pts;
}

int thread_cap() {
    if (const char* env = std::getenv("GAMMALAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

template <typename Fn>
void parallel_for(size_t count, Fn&& fn) {
    const int threads = std::min<int>(thread_cap(), static_cast<int>(count));
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = static_cast<size_t>(t); i < count; i += static_cast<size_t>(threads)) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

double boundary_sym_defect(const geom::GammaPoint& x) {
    double defect = 0.0;
    const int m = x.n - 1;
    for (int i = 0; i < m; ++i)
        defect = std::max(defect, std::abs(x.s[static_cast<size_t>(i)] -
                                           std::conj(x.s[static_cast<size_t>(m - 1 - i)]) * x.p));
    return defect;
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

PencilReport validate_pencil(const PencilFamily& pf, const GridSpec& grid, double tol,
                             uint64_t seed) {
    PencilReport rep;
    const int m = pf.n - 1;

    // (i) both commutator families.
    rep.plain_commutators = spec::verify_commuting(spec::make_matrix_tuple(pf.F));
    double fnorm = 1.0;
    for (const CMatrix& f : pf.F) fnorm = std::max(fnorm, f.frobenius_norm());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const CMatrix lhs = pf.F[static_cast<size_t>(i)].adjoint() * pf.F[static_cast<size_t>(m - 1 - j)] -
                                pf.F[static_cast<size_t>(m - 1 - j)] * pf.F[static_cast<size_t>(i)].adjoint();
            const CMatrix rhs = pf.F[static_cast<size_t>(j)].adjoint() * pf.F[static_cast<size_t>(m - 1 - i)] -
                                pf.F[static_cast<size_t>(m - 1 - i)] * pf.F[static_cast<size_t>(j)].adjoint();
            rep.starred_commutator_defect =
                std::max(rep.starred_commutator_defect, (lhs - rhs).frobenius_norm());
        }
    rep.condition_i = rep.plain_commutators.pass &&
                      rep.starred_commutator_defect <= 1e-10 * fnorm * fnorm;
    if (!rep.condition_i) {
        rep.verdict = Verdict::Invalid;
        rep.witness = "commutator conditions fail";
        return rep;
    }

    // (iii) the determinants are monic of degree d in the separated variables
    // by construction (leading coefficient (-1)^d), which already forces
    // {f_1, ..., f_{n-1}} to be a regular sequence: each f_i involves only
    // (s_i, p), so no f_i is a zero divisor modulo the earlier ones.
    rep.monic = true;
    rep.monic_note =
        "each f_i = det(F_i^* + p F_{n-i} - s_i I) is monic of degree d in its own s_i "
        "(leading coefficient (-1)^d); separated variables give a regular sequence";

    // (ii) sampled interior containment.
    const std::vector<Complex> interior = grid_points(grid, false, true);
    rep.min_interior_margin = std::numeric_limits<double>::infinity();
    bool invalid = false;
    std::string witness;
    std::optional<Complex> witness_z;
    for (size_t gi = 0; gi < interior.size() && !invalid; ++gi) {
        const Complex z = interior[gi];
        std::vector<std::vector<Complex>> pts;
        try {
            pts = fiber(pf, z, seed + gi);
        } catch (const std::exception& e) {
            rep.verdict = Verdict::Inconclusive;
            rep.witness = std::string("fiber failure at z = ") + format_complex(z) + ": " + e.what();
            rep.witness_z = z;
            return rep;
        }
        for (const std::vector<Complex>& s : pts) {
            const geom::PointClass pc = geom::classify_point(geom::make_gamma_point(s, z), tol);
            if (pc.margin < rep.min_interior_margin) {
                rep.min_interior_margin = pc.margin;
                rep.min_margin_location = z;
            }
            if (pc.label == geom::Membership::Exterior) {
                invalid = true;
                witness = "fiber point classifies EXTERIOR over z = " + format_complex(z);
                witness_z = z;
                break;
            }
        }
    }
    if (invalid) {
        rep.verdict = Verdict::Invalid;
        rep.witness = witness;
        rep.witness_z = witness_z;
        return rep;
    }

    // Boundary audit: |z| = 1 fibers must land on the distinguished boundary.
    GridSpec bg = grid;
    bg.include_boundary = true;
    const std::vector<Complex> boundary = grid_points(bg, true, false);
    rep.boundary_distinguished = true;
    for (size_t gi = 0; gi < boundary.size(); ++gi) {
        const Complex z = boundary[gi];
        std::vector<std::vector<Complex>> pts;
        try {
            pts = fiber(pf, z, seed + interior.size() + gi);
        } catch (const std::exception& e) {
            rep.verdict = Verdict::Inconclusive;
            rep.witness = std::string("fiber failure at z = ") + format_complex(z) + ": " + e.what();
            rep.witness_z = z;
            return rep;
        }
        for (const std::vector<Complex>& s : pts) {
            const geom::GammaPoint x = geom::make_gamma_point(s, z);
            rep.worst_boundary_sym_defect =
                std::max(rep.worst_boundary_sym_defect, boundary_sym_defect(x));
            const geom::PointClass pc = geom::classify_point(x, tol);
            if (pc.label != geom::Membership::Distinguished) {
                rep.boundary_distinguished = false;
                if (rep.verdict != Verdict::Invalid) {
                    rep.verdict = Verdict::Invalid;
                    rep.witness = "boundary fiber point not distinguished over z = " + format_complex(z);
                    rep.witness_z = z;
                }
            }
        }
    }
    if (rep.verdict == Verdict::Invalid) return rep;

    // Interior margins shrink with the distance to the boundary circle; a
    // margin below resolution cannot be distinguished from a tangency.
    const double margin_floor = 1e-7;
    if (rep.min_interior_margin < margin_floor) {
        rep.verdict = Verdict::Inconclusive;
        rep.witness = "minimum membership margin below resolution at z = " +
                      format_complex(rep.min_margin_location);
        rep.witness_z = rep.min_margin_location;
        return rep;
    }
    rep.verdict = Verdict::Valid;
    return rep;
}

VarietySample sample_variety(const PencilFamily& pf, const GridSpec& grid, uint64_t seed) {
    VarietySample out;
    out.n = pf.n;
    out.grid = grid;
    const std::vector<Complex> interior = grid_points(grid, false, true);
    const std::vector<Complex> boundary = grid_points(grid, true, false);
    std::vector<Complex> all = interior;
    all.insert(all.end(), boundary.begin(), boundary.end());
    out.records.resize(all.size());

    double fnorm_scale = 1.0;
    for (const CMatrix& f : pf.F) fnorm_scale = std::max(fnorm_scale, num::operator_norm(f));

    parallel_for(all.size(), [&](size_t gi) {
        FiberRecord& rec = out.records[gi];
        rec.p = all[gi];
        rec.on_boundary = gi >= interior.size();
        try {
            rec.points = fiber(pf, rec.p, seed + gi);
        } catch (const std::exception& e) {
            rec.error = e.what();
            return;
        }
        rec.det_residuals.reserve(rec.points.size());
        rec.classes.reserve(rec.points.size());
        for (const std::vector<Complex>& s : rec.points) {
            const geom::GammaPoint x = geom::make_gamma_point(s, rec.p);
            std::vector<Complex> dets = pencil_determinants(pf, x);
            std::vector<double> res;
            res.reserve(dets.size());
            for (const Complex& v : dets) res.push_back(std::abs(v));
            rec.det_residuals.push_back(std::move(res));
            rec.classes.push_back(geom::classify_point(x));
        }
    });
    return out;
}

G2Result g2_variety_from_matrix(const CMatrix& a, G2Convention convention, const GridSpec& grid,
                                double tol) {
    a.check_square("g2_variety_from_matrix");
    G2Result out;
    out.pencil = make_pencil(2, {convention == G2Convention::Refined ? a : a.adjoint()});
    out.omega = num::numerical_radius(a, 128);
    out.omega_sufficient = out.omega < 1.0;
    out.sampled = validate_pencil(out.pencil, grid, tol);
    return out;
}

std::vector<PolydiscPoint> polydisc_sample(const PencilFamily& pf, const GridSpec& grid,
                                           uint64_t seed) {
    const VarietySample vs = sample_variety(pf, grid, seed);
    std::vector<PolydiscPoint> out;
    for (const FiberRecord& rec : vs.records) {
        if (!rec.error.empty()) continue;
        for (size_t j = 0; j < rec.points.size(); ++j) {
            PolydiscPoint pt;
            pt.p = rec.p;
            const geom::GammaPoint x = geom::make_gamma_point(rec.points[j], rec.p);
            pt.z = geom::desymmetrize(x);
            for (const Complex& z : pt.z) pt.max_modulus = std::max(pt.max_modulus, std::abs(z));
            const geom::GammaPoint back = geom::symmetrize(pt.z);
            double err = std::abs(back.p - x.p);
            for (int i = 0; i < x.n - 1; ++i)
                err = std::max(err, std::abs(back.s[static_cast<size_t>(i)] - x.s[static_cast<size_t>(i)]));
            pt.resym_residual = err;
            pt.source_class = rec.classes[j].label;
            out.push_back(std::move(pt));
        }
    }
    return out;
}

SeparatingResult separating_poly(const PencilFamily& pf, const geom::GammaPoint& x, double tol) {
    const std::vector<Complex> vals = pencil_determinants(pf, x);
    for (size_t i = 0; i < vals.size(); ++i) {
        if (std::abs(vals[i]) > tol) return {false, static_cast<int>(i) + 1, vals[i]};
    }
    return {true, 0, Complex(0.0)};
}

}  // namespace gammalab::var
