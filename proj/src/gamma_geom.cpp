#include "gammalab/gamma_geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammalab/numerics.hpp"

namespace gammalab::geom {

const char* to_string(Membership m) {
    switch (m) {
        case Membership::Interior: return "INTERIOR";
        case Membership::TopBoundary: return "TOP_BOUNDARY";
        case Membership::Distinguished: return "DISTINGUISHED";
        case Membership::Exterior: return "EXTERIOR";
    }
    return "?";
}

GammaPoint make_gamma_point(std::vector<Complex> s, Complex p) {
    GammaPoint x;
    x.n = static_cast<int>(s.size()) + 1;
    x.s = std::move(s);
    x.p = p;
    for (const Complex& z : x.s)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("GammaPoint: non-finite coordinate");
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw std::invalid_argument("GammaPoint: non-finite coordinate");
    if (x.n < 1) throw std::invalid_argument("GammaPoint: need n >= 1");
    return x;
}

GammaPoint symmetrize(const std::vector<Complex>& z) {
    const int n = static_cast<int>(z.size());
    if (n < 2) throw std::invalid_argument("symmetrize: need at least two coordinates");
    // e_k via the product recurrence prod (t + z_i).
    std::vector<Complex> e(static_cast<size_t>(n) + 1);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k >= 1; --k) e[static_cast<size_t>(k)] += z[static_cast<size_t>(i)] * e[static_cast<size_t>(k - 1)];
    std::vector<Complex> s(e.begin() + 1, e.begin() + n);
    return make_gamma_point(std::move(s), e[static_cast<size_t>(n)]);
}

std::vector<Complex> desymmetrize(const GammaPoint& x) {
    const int n = x.n;
    // Coefficients of t^n - s_1 t^{n-1} + ... + (-1)^n p, constant term first.
    std::vector<Complex> coeffs(static_cast<size_t>(n) + 1);
    coeffs[static_cast<size_t>(n)] = 1.0;
    for (int k = 1; k < n; ++k) {
        const Complex sk = x.s[static_cast<size_t>(k - 1)];
        coeffs[static_cast<size_t>(n - k)] = (k % 2 == 0) ? sk : -sk;
    }
    coeffs[0] = (n % 2 == 0) ? x.p : -x.p;
    return num::poly_roots(coeffs, true);
}

CanonicalC canonical_c(const GammaPoint& x, double tol) {
    const double p2 = std::norm(x.p);
    if (p2 >= (1.0 - tol) * (1.0 - tol))
        throw num::NumericError(
            "canonical_c: |p| >= 1 - tol (boundary regime; use the distinguished-boundary test)");
    const int m = x.n - 1;
    CanonicalC out;
    out.c.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        out.c[static_cast<size_t>(i)] =
            (x.s[static_cast<size_t>(i)] - x.p * std::conj(x.s[static_cast<size_t>(m - 1 - i)])) / (1.0 - p2);
    for (int i = 0; i < m; ++i) {
        const Complex recon =
            out.c[static_cast<size_t>(i)] + std::conj(out.c[static_cast<size_t>(m - 1 - i)]) * x.p;
        out.residual = std::max(out.residual, std::abs(x.s[static_cast<size_t>(i)] - recon));
    }
    return out;
}

namespace {

struct LevelResult {
    Membership label;
    double margin;
    double conditioning;
};

LevelResult classify_rec(const GammaPoint& x, double tol) {
    const int n = x.n;
    double scale = 1.0;
    for (const Complex& si : x.s) scale += std::abs(si);
    const double tol_eff = tol * scale;
    const double ap = std::abs(x.p);

    if (n == 1) {
        // Gamma_1 is the closed unit disc; its distinguished boundary is the
        // whole circle, so the TopBoundary label cannot occur here.
        if (ap > 1.0 + tol_eff) return {Membership::Exterior, 1.0 - ap, 1.0};
        if (std::abs(ap - 1.0) <= tol_eff)
            return {Membership::Distinguished, tol_eff - std::abs(ap - 1.0),
                    std::numeric_limits<double>::infinity()};
        return {Membership::Interior, 1.0 - ap, 1.0 / (1.0 - ap * ap)};
    }

    if (ap > 1.0 + tol_eff) return {Membership::Exterior, 1.0 - ap, 1.0};

    if (std::abs(ap - 1.0) <= tol_eff) {
        // Distinguished-boundary test: s_i = conj(s_{n-i}) p together with
        // the scaled point ((n-1)/n s_1, ..., (1/n) s_{n-1}) in Gamma_{n-1}.
        double sym_defect = 0.0;
        for (int i = 0; i < n - 1; ++i)
            sym_defect = std::max(
                sym_defect, std::abs(x.s[static_cast<size_t>(i)] -
                                     std::conj(x.s[static_cast<size_t>(n - 2 - i)]) * x.p));
        const double sym_slack = tol_eff - sym_defect;

        std::vector<Complex> scaled(static_cast<size_t>(n - 2));
        for (int i = 0; i + 1 < n - 1; ++i)
            scaled[static_cast<size_t>(i)] =
                x.s[static_cast<size_t>(i)] * (static_cast<double>(n - 1 - i) / n);
        const Complex scaled_p = x.s[static_cast<size_t>(n - 2)] / static_cast<double>(n);
        LevelResult child = classify_rec(make_gamma_point(std::move(scaled), scaled_p), tol);

        const double margin = std::min(sym_slack, child.margin);
        if (sym_slack >= 0.0 && child.label != Membership::Exterior)
            return {Membership::Distinguished, margin, std::numeric_limits<double>::infinity()};
        return {Membership::Exterior, margin, std::numeric_limits<double>::infinity()};
    }

    // |p| < 1 - tol: test the unique witness tuple in Gamma_{n-1}.
    CanonicalC cc = canonical_c(x, tol);
    Complex child_p = cc.c.back();
    cc.c.pop_back();
    LevelResult child = classify_rec(make_gamma_point(std::move(cc.c), child_p), tol);
    const double cond = std::max(child.conditioning, 1.0 / (1.0 - ap * ap));
    const double margin = std::min(1.0 - ap, child.margin);
    Membership label = Membership::TopBoundary;  // witness on the boundary of Gamma_{n-1}
    if (child.label == Membership::Interior) label = Membership::Interior;
    if (child.label == Membership::Exterior) label = Membership::Exterior;
    return {label, margin, cond};
}

}  // namespace

PointClass classify_point(const GammaPoint& x, double tol) {
    LevelResult r = classify_rec(x, tol);
    return {r.label, r.margin, r.conditioning};
}

AyResult ay_criterion(Complex s, Complex p) {
    const double g1 = 2.0 - std::abs(s);
    const double g2 = (1.0 - std::norm(p)) - std::abs(s - std::conj(s) * p);
    return {g1 >= 0.0 && g2 >= 0.0, std::min(g1, g2)};
}

}  // namespace gammalab::geom
