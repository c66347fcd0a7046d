#include "gammalab/joint_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "gammalab/numerics.hpp"
#include "gammalab/rng.hpp"

namespace gammalab::spec {

namespace {

double tuple_scale(const MatrixTuple& t) {
    double s = 0.0;
    for (const CMatrix& m : t.mats) s = std::max(s, m.frobenius_norm());
    return std::max(s, 1.0);
}

// Off-triangular Frobenius mass of q* m q.
double off_triangular_mass(const CMatrix& u) {
    double s = 0.0;
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < i; ++j) s += std::norm(u(i, j));
    return std::sqrt(s);
}

// Joint-eigenvector staircase: find a common eigenvector, rotate it into
// the first coordinate, deflate, recurse.  This is the generic-free path.
CMatrix staircase_triangularizer(const std::vector<CMatrix>& mats, double scale) {
    const int n = mats.front().rows();
    const int k = static_cast<int>(mats.size());
    if (n == 1) return CMatrix::identity(1);

    // Intersect eigenspaces matrix by matrix.  basis spans the current
    // candidate subspace; start from the best eigenspace of mats[0].
    CMatrix basis = CMatrix::identity(n);
    for (int im = 0; im < k && basis.cols() > 1; ++im) {
        const CMatrix a = basis.adjoint() * mats[static_cast<size_t>(im)] * basis;
        num::SchurResult s = num::schur(a);
        // Choose the eigenvalue whose eigenspace restricted to the subspace
        // has the smallest residual; then shrink the basis to that space.
        double best_res = -1.0;
        CMatrix best_basis;
        std::vector<Complex> seen;
        for (const Complex& lam : s.eigenvalues) {
            bool dup = false;
            for (const Complex& mu : seen)
                if (std::abs(mu - lam) <= 1e-8 * scale) dup = true;
            if (dup) continue;
            seen.push_back(lam);
            // Numerical kernel of (a - lam I) via the smallest eigenvectors
            // of its Gram matrix.
            const int m = a.rows();
            CMatrix shifted = a;
            for (int i = 0; i < m; ++i) shifted(i, i) -= lam;
            num::HermitianEig g = num::hermitian_eig(shifted.adjoint() * shifted);
            const double cutoff = std::pow(1e-7 * scale, 2);
            int dim = 0;
            while (dim < m && g.eigenvalues[static_cast<size_t>(dim)] <= cutoff) ++dim;
            if (dim == 0) continue;
            CMatrix kern(m, dim);
            for (int c = 0; c < dim; ++c)
                for (int i = 0; i < m; ++i) kern(i, c) = g.vectors(i, c);
            const double res = std::sqrt(std::max(g.eigenvalues.front(), 0.0));
            if (best_res < 0.0 || res < best_res) {
                best_res = res;
                best_basis = kern;
            }
        }
        if (best_res < 0.0) break;  // no certified eigenspace; keep current basis
        basis = basis * best_basis;
    }

    // First column of the new unitary = the joint eigenvector.
    std::vector<Complex> v(static_cast<size_t>(n));
    double vn = 0.0;
    for (int i = 0; i < n; ++i) {
        v[static_cast<size_t>(i)] = basis(i, 0);
        vn += std::norm(v[static_cast<size_t>(i)]);
    }
    vn = std::sqrt(vn);
    for (Complex& z : v) z /= vn;

    // Householder unitary W with W e_1 = v.
    CMatrix w = CMatrix::identity(n);
    std::vector<Complex> u = v;
    const Complex phase =
        (std::abs(u[0]) > 0.0) ? u[0] / std::abs(u[0]) : Complex(1.0);
    u[0] += phase;
    double un = 0.0;
    for (const Complex& z : u) un += std::norm(z);
    if (un > 1e-30) {
        un = std::sqrt(un);
        for (Complex& z : u) z /= un;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w(i, j) -= 2.0 * u[static_cast<size_t>(i)] * std::conj(u[static_cast<size_t>(j)]);
        w = w * (-phase);
    }

    // Deflate and recurse on the trailing block.
    std::vector<CMatrix> tails;
    tails.reserve(static_cast<size_t>(k));
    for (const CMatrix& m : mats) tails.push_back((w.adjoint() * m * w).block(1, 1, n - 1, n - 1));
    const CMatrix wtail = staircase_triangularizer(tails, scale);
    CMatrix ext = CMatrix::identity(n);
    ext.set_block(1, 1, wtail);
    return w * ext;
}

}  // namespace

MatrixTuple make_matrix_tuple(std::vector<CMatrix> mats, double comm_tol) {
    if (mats.empty()) throw std::invalid_argument("MatrixTuple: empty tuple");
    MatrixTuple t;
    t.order = mats.front().rows();
    for (const CMatrix& m : mats) {
        m.check_square("MatrixTuple");
        if (m.rows() != t.order) throw std::invalid_argument("MatrixTuple: mixed orders");
        if (!m.all_finite()) throw std::invalid_argument("MatrixTuple: non-finite entries");
    }
    t.mats = std::move(mats);
    t.comm_tol = comm_tol;
    return t;
}

CommReport verify_commuting(const MatrixTuple& t) {
    const size_t k = t.mats.size();
    CommReport r;
    r.norms.assign(k, std::vector<double>(k, 0.0));
    std::vector<double> norms(k);
    for (size_t i = 0; i < k; ++i) norms[i] = std::max(t.mats[i].frobenius_norm(), 1.0);
    r.pass = true;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            const double c = commutator_norm(t.mats[i], t.mats[j]);
            r.norms[i][j] = r.norms[j][i] = c;
            r.worst = std::max(r.worst, c);
            if (c > t.comm_tol * norms[i] * norms[j]) r.pass = false;
        }
    return r;
}

JointSpectrum joint_eigs(const MatrixTuple& t, uint64_t seed) {
    CommReport comm = verify_commuting(t);
    if (!comm.pass)
        throw std::invalid_argument("joint_eigs: tuple is not commuting (worst commutator " +
                                    std::to_string(comm.worst) + ")");
    const int n = t.order;
    const int k = static_cast<int>(t.mats.size());
    const double scale = tuple_scale(t);
    const double cert = 1e-8;

    JointSpectrum out;
    CMatrix q;
    bool ok = false;
    double worst_off = 0.0;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
        CMatrix g(n, n);
        for (int i = 0; i < k; ++i) {
            const Complex gamma = rng.complex_gaussian();
            g += t.mats[static_cast<size_t>(i)] * gamma;
        }
        num::SchurResult s;
        try {
            s = num::schur(g);
        } catch (const num::SchurFailure&) {
            continue;
        }
        worst_off = 0.0;
        for (const CMatrix& m : t.mats) {
            const CMatrix u = s.unitary.adjoint() * m * s.unitary;
            worst_off = std::max(worst_off, off_triangular_mass(u) / std::max(m.frobenius_norm(), 1e-300));
        }
        if (worst_off <= cert) {
            q = s.unitary;
            ok = true;
        }
    }
    if (!ok) {
        // Non-generic coupling; build the flag directly.
        q = staircase_triangularizer(t.mats, scale);
        out.used_staircase = true;
        worst_off = 0.0;
        for (const CMatrix& m : t.mats) {
            const CMatrix u = q.adjoint() * m * q;
            worst_off = std::max(worst_off, off_triangular_mass(u) / std::max(m.frobenius_norm(), 1e-300));
        }
        if (worst_off > cert)
            throw num::NumericError(
                "joint_eigs: simultaneous triangularization failed (worst off-triangular mass " +
                std::to_string(worst_off) + ")");
    }

    std::vector<CMatrix> tri;
    tri.reserve(static_cast<size_t>(k));
    for (const CMatrix& m : t.mats) tri.push_back(q.adjoint() * m * q);

    out.points.assign(static_cast<size_t>(n), std::vector<Complex>(static_cast<size_t>(k)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i)
            out.points[static_cast<size_t>(j)][static_cast<size_t>(i)] = tri[static_cast<size_t>(i)](j, j);

    // Certify each point with the best joint near-eigenvector.
    out.residuals.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<CMatrix> shifted;
        shifted.reserve(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            CMatrix a = t.mats[static_cast<size_t>(i)];
            for (int r = 0; r < n; ++r) a(r, r) -= out.points[static_cast<size_t>(j)][static_cast<size_t>(i)];
            shifted.push_back(std::move(a));
        }
        num::MinJointVector mv = num::min_joint_vector(shifted);
        double worst = 0.0;
        for (int i = 0; i < k; ++i) {
            double comp = 0.0;
            for (int r = 0; r < n; ++r) {
                Complex acc = 0.0;
                for (int c = 0; c < n; ++c) acc += shifted[static_cast<size_t>(i)](r, c) * mv.v[static_cast<size_t>(c)];
                comp += std::norm(acc);
            }
            worst = std::max(worst, std::sqrt(comp));
        }
        out.residuals[static_cast<size_t>(j)] = worst;
    }
    out.triangularizer = std::move(q);
    return out;
}

std::vector<std::vector<Complex>> joint_eigs_oracle(const MatrixTuple& t) {
    if (t.order > 8) throw std::invalid_argument("joint_eigs_oracle: order guard (<= 8) violated");
    CommReport comm = verify_commuting(t);
    if (!comm.pass) throw std::invalid_argument("joint_eigs_oracle: tuple is not commuting");
    const int n = t.order;
    const int k = static_cast<int>(t.mats.size());
    const double scale = tuple_scale(t);
    const double point_tol = 1e-8 * scale;

    // Deduplicated eigenvalue list per matrix.
    std::vector<std::vector<Complex>> eigs(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        num::SchurResult s = num::schur(t.mats[static_cast<size_t>(i)]);
        for (const Complex& lam : s.eigenvalues) {
            bool dup = false;
            for (const Complex& mu : eigs[static_cast<size_t>(i)])
                if (std::abs(mu - lam) <= point_tol) dup = true;
            if (!dup) eigs[static_cast<size_t>(i)].push_back(lam);
        }
    }

    std::vector<std::vector<Complex>> found;
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    const double kernel_tol = 1e-7 * scale;
    while (true) {
        std::vector<CMatrix> shifted;
        shifted.reserve(static_cast<size_t>(k));
        std::vector<Complex> cand(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            cand[static_cast<size_t>(i)] = eigs[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            CMatrix a = t.mats[static_cast<size_t>(i)];
            for (int r = 0; r < n; ++r) a(r, r) -= cand[static_cast<size_t>(i)];
            shifted.push_back(std::move(a));
        }
        num::MinJointVector mv = num::min_joint_vector(shifted);
        if (mv.residual <= kernel_tol) found.push_back(cand);

        // lexicographic advance
        int pos = k - 1;
        while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] < eigs[static_cast<size_t>(pos)].size()) break;
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return found;
}

}  // namespace gammalab::spec
