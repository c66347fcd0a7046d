#include "gammalab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace gammalab::num {

namespace {

// Householder reduction to upper Hessenberg form; Q accumulates the
// similarity so that Q H Q* equals the input.
void hessenberg(CMatrix& h, CMatrix& q) {
    const int n = h.rows();
    for (int k = 0; k + 2 < n; ++k) {
        // Reflector annihilating column k below the subdiagonal.
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm <= 0.0) continue;

        std::vector<Complex> v(n - k - 1);
        for (int i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
        const Complex x0 = v[0];
        const Complex phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : Complex(1.0);
        v[0] += phase * xnorm;
        double vnorm = 0.0;
        for (const Complex& z : v) vnorm += std::norm(z);
        if (vnorm <= 0.0) continue;
        vnorm = std::sqrt(vnorm);
        for (Complex& z : v) z /= vnorm;

        // h := P h P with P = I - 2 v v* acting on rows/cols k+1..n-1.
        for (int j = 0; j < n; ++j) {  // left: rows k+1..n-1
            Complex s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
            s *= 2.0;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
        }
        for (int i = 0; i < n; ++i) {  // right: cols k+1..n-1
            Complex s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j - k - 1]);
        }
        for (int i = 0; i < n; ++i) {  // accumulate: q := q P
            Complex s = 0.0;
            for (int j = k + 1; j < n; ++j) s += q(i, j) * v[j - k - 1];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(v[j - k - 1]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    Complex c;  // rotation [c, s; -conj(s), conj(c)] applied to rows (k, k+1)
    Complex s;
};

// Rotation G with G* [a; b] = [r; 0].
Givens make_givens(Complex a, Complex b) {
    const double na = std::abs(a), nb = std::abs(b);
    if (nb == 0.0) return {Complex(1.0), Complex(0.0)};
    const double r = std::hypot(na, nb);
    return {a / r, b / r};
}

// Eigenvalues of [[a, b], [c, d]].
std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 closest to the corner.
Complex wilkinson_shift(const CMatrix& h, int hi) {
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1), d = h(hi, hi);
    auto [l1, l2] = eig2x2(a, b, c, d);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

SchurResult schur(const CMatrix& m, double tol) {
    m.check_square("schur");
    if (!m.all_finite()) throw std::invalid_argument("schur: non-finite entries");
    const int n = m.rows();

    CMatrix h = m;
    CMatrix q = CMatrix::identity(n);
    if (n > 2) hessenberg(h, q);

    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double deflate = tol * scale;
    const long budget = 100L * std::max(n, 1);
    long iters = 0;

    auto apply_left = [&](int k, const Givens& g) {
        // rows k, k+1; columns k..n-1 (entries left of k are already zero)
        for (int j = std::max(0, k - 1); j < n; ++j) {
            const Complex t1 = h(k, j), t2 = h(k + 1, j);
            h(k, j) = std::conj(g.c) * t1 + std::conj(g.s) * t2;
            h(k + 1, j) = -g.s * t1 + g.c * t2;
        }
    };
    auto apply_right = [&](int k, const Givens& g) {
        const int top = std::min(n - 1, k + 2);
        for (int i = 0; i <= top; ++i) {
            const Complex t1 = h(i, k), t2 = h(i, k + 1);
            h(i, k) = t1 * g.c + t2 * g.s;
            h(i, k + 1) = -t1 * std::conj(g.s) + t2 * std::conj(g.c);
        }
        for (int i = 0; i < n; ++i) {
            const Complex t1 = q(i, k), t2 = q(i, k + 1);
            q(i, k) = t1 * g.c + t2 * g.s;
            q(i, k + 1) = -t1 * std::conj(g.s) + t2 * std::conj(g.c);
        }
    };

    int hi = n - 1;
    int stall = 0;
    while (hi > 0) {
        for (int k = 0; k < hi; ++k)
            if (std::abs(h(k + 1, k)) <= deflate) h(k + 1, k) = 0.0;

        if (h(hi, hi - 1) == Complex(0.0)) {
            --hi;
            stall = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex(0.0)) --lo;

        ++iters;
        ++stall;
        if (iters > budget) {
            SchurResult partial;
            partial.unitary = q;
            partial.triangular = h;
            for (int i = 0; i < n; ++i) partial.eigenvalues.push_back(h(i, i));
            partial.residual = (q * h * q.adjoint() - m).frobenius_norm();
            throw SchurFailure("schur: QR iteration budget exhausted", std::move(partial));
        }

        Complex mu = wilkinson_shift(h, hi);
        if (stall > 0 && stall % 12 == 0) {
            // exceptional shift to break symmetric stalls
            mu = h(hi, hi) + Complex(0.75, 0.4330127018922193) * std::abs(h(hi, hi - 1));
        }

        // Explicit shifted QR sweep on the active block [lo, hi].
        for (int k = lo; k <= hi; ++k) h(k, k) -= mu;
        std::vector<Givens> rots(static_cast<size_t>(hi - lo));
        for (int k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rots[static_cast<size_t>(k - lo)] = g;
            apply_left(k, g);
            h(k + 1, k) = 0.0;
        }
        for (int k = lo; k < hi; ++k) apply_right(k, rots[static_cast<size_t>(k - lo)]);
        for (int k = lo; k <= hi; ++k) h(k, k) += mu;

        // A converged 2x2 block is finished off exactly.
        if (hi - lo == 1 && std::abs(h(hi, hi - 1)) > deflate) {
            const Complex a = h(lo, lo), b = h(lo, hi), c = h(hi, lo), d = h(hi, hi);
            auto [l1, l2] = eig2x2(a, b, c, d);
            // eigenvector for l1: prefer the better-conditioned formula
            Complex v1 = b, v2 = l1 - a;
            if (std::abs(v1) + std::abs(v2) < std::abs(l1 - d) + std::abs(c)) {
                v1 = l1 - d;
                v2 = c;
            }
            const double vn = std::hypot(std::abs(v1), std::abs(v2));
            if (vn > 0.0) {
                const Givens g{v1 / vn, v2 / vn};
                // columns (v, w) with v the eigenvector: G* M G is upper triangular
                apply_left(lo, g);
                apply_right(lo, g);
                h(hi, lo) = 0.0;
                (void)l2;
            }
        }
    }

    SchurResult out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) h(i, j) = 0.0;
    out.eigenvalues.reserve(n);
    for (int i = 0; i < n; ++i) out.eigenvalues.push_back(h(i, i));
    out.residual = n > 0 ? (q * h * q.adjoint() - m).frobenius_norm() : 0.0;
    out.unitary = std::move(q);
    out.triangular = std::move(h);
    return out;
}

HermitianEig hermitian_eig(const CMatrix& m) {
    m.check_square("hermitian_eig");
    const int n = m.rows();
    // Symmetrize before factoring; callers pass matrices Hermitian up to
    // rounding and the QR path needs the structure exactly.
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    SchurResult s = schur(a);
    HermitianEig out;
    out.eigenvalues.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return s.eigenvalues[i].real() < s.eigenvalues[j].real();
    });
    out.vectors = CMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = s.eigenvalues[order[k]].real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = s.unitary(i, order[k]);
    }
    return out;
}

double operator_norm(const CMatrix& m) {
    if (!m.all_finite()) throw std::invalid_argument("operator_norm: non-finite entries");
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    // Hermitian path through the smaller Gram matrix.
    const CMatrix g = (m.rows() >= m.cols()) ? m.adjoint() * m : m * m.adjoint();
    HermitianEig e = hermitian_eig(g);
    const double lmax = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
    return std::sqrt(std::max(lmax, 0.0));
}

namespace {

double real_part_lambda_max(const CMatrix& m, double theta) {
    const int n = m.rows();
    const Complex w = std::polar(1.0, theta);
    CMatrix re(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) re(i, j) = 0.5 * (w * m(i, j) + std::conj(w * m(j, i)));
    HermitianEig e = hermitian_eig(re);
    return e.eigenvalues.back();
}

// Golden-section maximization of f on [a, b] down to a fixed bracket width.
double golden_max(const std::function<double(double)>& f, double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double fa_hold = 0.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 100 && (b - a) > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    fa_hold = std::max(f1, f2);
    return fa_hold;
}

}  // namespace

double numerical_radius(const CMatrix& m, int grid_size) {
    m.check_square("numerical_radius");
    if (grid_size < 8) throw std::invalid_argument("numerical_radius: grid_size must be >= 8");
    if (m.rows() == 0) return 0.0;

    std::vector<double> vals(static_cast<size_t>(grid_size));
    auto f = [&](double theta) { return real_part_lambda_max(m, theta); };
    const double step = 2.0 * M_PI / grid_size;
    for (int k = 0; k < grid_size; ++k) vals[static_cast<size_t>(k)] = f(k * step);

    // Refine around the top local maximizers of the grid (three passes
    // guard against multimodal profiles).
    std::vector<int> order(static_cast<size_t>(grid_size));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return vals[static_cast<size_t>(i)] > vals[static_cast<size_t>(j)]; });
    double best = vals[static_cast<size_t>(order[0])];
    const int passes = std::min(3, grid_size);
    for (int p = 0; p < passes; ++p) {
        const int k = order[static_cast<size_t>(p)];
        best = std::max(best, golden_max(f, (k - 1) * step, (k + 1) * step));
    }
    return best;
}

PsdSqrt hermitian_sqrt_and_pinv(const CMatrix& m, double rank_tol) {
    m.check_square("hermitian_sqrt_and_pinv");
    const int n = m.rows();
    HermitianEig e = hermitian_eig(m);
    for (double lam : e.eigenvalues) {
        if (lam < -rank_tol)
            throw NotPsdError("hermitian_sqrt_and_pinv: matrix is not PSD, eigenvalue " +
                                  std::to_string(lam),
                              lam);
    }
    PsdSqrt out;
    std::vector<Complex> droot(n), dpinv(n);
    std::vector<int> range;
    for (int i = 0; i < n; ++i) {
        const double lam = std::max(e.eigenvalues[static_cast<size_t>(i)], 0.0);
        droot[static_cast<size_t>(i)] = std::sqrt(lam);
        if (e.eigenvalues[static_cast<size_t>(i)] > rank_tol) {
            dpinv[static_cast<size_t>(i)] = 1.0 / std::sqrt(lam);
            range.push_back(i);
        }
    }
    const CMatrix v = e.vectors;
    const CMatrix vh = v.adjoint();
    out.sqrt = v * CMatrix::diagonal(droot) * vh;
    out.pinv_of_sqrt = v * CMatrix::diagonal(dpinv) * vh;
    out.rank = static_cast<int>(range.size());
    out.range_basis = CMatrix(n, out.rank);
    for (int c = 0; c < out.rank; ++c)
        for (int i = 0; i < n; ++i) out.range_basis(i, c) = v(i, range[static_cast<size_t>(c)]);
    return out;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, bool monic) {
    if (coeffs.empty()) throw std::invalid_argument("poly_roots: zero polynomial");
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[static_cast<size_t>(deg)]) == 0.0) --deg;
    if (deg == 0) {
        if (std::abs(coeffs[0]) == 0.0) throw std::invalid_argument("poly_roots: zero polynomial");
        return {};
    }
    const Complex lead = coeffs[static_cast<size_t>(deg)];
    if (monic && std::abs(lead - Complex(1.0)) > 1e-12)
        throw std::invalid_argument("poly_roots: declared monic but leading coefficient != 1");

    std::vector<Complex> roots;
    // Exact deflation of roots at the origin.
    int low = 0;
    while (low < deg && std::abs(coeffs[static_cast<size_t>(low)]) == 0.0) {
        roots.push_back(0.0);
        ++low;
    }
    const int d = deg - low;
    if (d == 0) return roots;

    CMatrix comp(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[static_cast<size_t>(low + i)] / lead;
    SchurResult s = schur(comp);
    roots.insert(roots.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    return roots;
}

Complex det(const CMatrix& m) {
    m.check_square("det");
    const int n = m.rows();
    CMatrix a = m;
    Complex result = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            result = -result;
        }
        result *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return result;
}

Complex poly_eval(const std::vector<Complex>& coeffs, Complex t) {
    Complex v = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

MinJointVector min_joint_vector(const std::vector<CMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("min_joint_vector: empty list");
    const int n = mats.front().cols();
    CMatrix gram(n, n);
    for (const CMatrix& a : mats) {
        if (a.cols() != n) throw std::invalid_argument("min_joint_vector: column mismatch");
        gram += a.adjoint() * a;
    }
    HermitianEig e = hermitian_eig(gram);
    MinJointVector out;
    out.v.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.v[static_cast<size_t>(i)] = e.vectors(i, 0);
    out.residual = std::sqrt(std::max(e.eigenvalues.front(), 0.0));
    return out;
}

}  // namespace gammalab::num
