#include "ginstat/kernels.hpp"

#include <cmath>

#include "ginstat/quadrature.hpp"
#include "ginstat/quatpfaff.hpp"

namespace ginstat {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

// exp of a complex exponent as a LogScaled value
inline LogScaled exp_scaled(cplx e) {
    return {cplx(std::cos(e.imag()), std::sin(e.imag())), e.real()};
}

}  // namespace

LogScaled s2n_scaled(const KernelContext& ctx, cplx z) {
    return partial_exp_sum_scaled(z, 2 * ctx.half_dim - 2, ctx.s2n_include_j0 ? 0 : 1);
}

cplx s2n(const KernelContext& ctx, cplx z) { return s2n_scaled(ctx, z).value(); }

double kernel_G_log(cplx z, cplx w) {
    double a = std::sqrt(2.0) * z.imag();
    double b = std::sqrt(2.0) * w.imag();
    return 0.5 * (log_erfc(a) + log_erfc(b));
}

double kernel_G(cplx z, cplx w) { return std::exp(kernel_G_log(z, w)); }

LogScaled S_cc_scaled(const KernelContext& ctx, cplx z, cplx w) {
    cplx wb = std::conj(w);
    cplx pref = cplx(0.0, 1.0) * kInvSqrt2Pi * (wb - z);
    cplx expo = -0.5 * (z - wb) * (z - wb);
    LogScaled r = exp_scaled(expo).scaled(kernel_G_log(z, w)) * s2n_scaled(ctx, z * wb);
    return (r * pref).normalized();
}

LogScaled D_cc_scaled(const KernelContext& ctx, cplx z, cplx w) {
    cplx pref = kInvSqrt2Pi * (w - z);
    cplx expo = -0.5 * (z - w) * (z - w);
    LogScaled r = exp_scaled(expo).scaled(kernel_G_log(z, w)) * s2n_scaled(ctx, z * w);
    return (r * pref).normalized();
}

LogScaled I_cc_scaled(const KernelContext& ctx, cplx z, cplx w) {
    cplx zb = std::conj(z), wb = std::conj(w);
    cplx pref = kInvSqrt2Pi * (zb - wb);
    cplx expo = -0.5 * (zb - wb) * (zb - wb);
    LogScaled r = exp_scaled(expo).scaled(kernel_G_log(z, w)) * s2n_scaled(ctx, zb * wb);
    return (r * pref).normalized();
}

cplx S_cc(const KernelContext& ctx, cplx z, cplx w) { return S_cc_scaled(ctx, z, w).value(); }
cplx D_cc(const KernelContext& ctx, cplx z, cplx w) { return D_cc_scaled(ctx, z, w).value(); }
cplx I_cc(const KernelContext& ctx, cplx z, cplx w) { return I_cc_scaled(ctx, z, w).value(); }

namespace {

// e^{-(x-y)^2/2} e^{-xy} sum_{m=0}^{2n-2} (xy)^m/m! / sqrt(2pi)  (log scale)
LogScaled S_rr_base(const KernelContext& ctx, double x, double y) {
    LogScaled f = partial_exp_sum_scaled(cplx(x * y, 0.0), 2 * ctx.half_dim - 2, 0);
    return f.scaled(-0.5 * (x - y) * (x - y)) * cplx(kInvSqrt2Pi);
}

// e^{-x^2/2} 2^{n-3/2}/(sqrt(2pi) (2n-2)!) |x|^{2n-1} gamma(n-1/2, y^2/2)
// (the sgn(x) x^{2n-1} factor is |x|^{2n-1}: the power is odd)
double correction_log(const KernelContext& ctx, double x, double y) {
    if (x == 0.0 || y == 0.0) return -std::numeric_limits<double>::infinity();
    int n = ctx.half_dim;
    double p = gammap(n - 0.5, 0.5 * y * y);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    return -0.5 * x * x + (n - 1.5) * std::log(2.0) - std::lgamma(2.0 * n - 1.0) +
           (2.0 * n - 1.0) * std::log(std::abs(x)) + std::log(p) + std::lgamma(n - 0.5) -
           0.5 * std::log(2.0 * kPi);
}

double S_rr_correction(const KernelContext& ctx, double x, double y) {
    double lg = correction_log(ctx, x, y);
    return std::isfinite(lg) ? std::exp(lg) : 0.0;
}

// (1/sqrt(2pi)) int_0^b exp(-a^2/2 - u^2/2) C_n(u a) du with a signed limit;
// C_n is the partial cosh sum. The integrand is bounded by e^{-(|a|-u)^2/2}.
double I_rr_term(const KernelContext& ctx, double a, double b) {
    if (b == 0.0) return 0.0;
    static thread_local Quad1D q;
    static thread_local int q_nodes = 0;
    if (q_nodes != ctx.quad.inner_nodes) {
        q = gauss_legendre(ctx.quad.inner_nodes);
        q_nodes = ctx.quad.inner_nodes;
    }
    double half = 0.5 * b;
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double u = half * (q.x[i] + 1.0);
        LogScaled c = cosh_partial_scaled(u * a, ctx.half_dim);
        double lg = c.log_scale - 0.5 * a * a - 0.5 * u * u;
        acc += q.w[i] * c.mantissa.real() * std::exp(lg);
    }
    return acc * half * kInvSqrt2Pi;
}

inline double sgn(double t) { return (t > 0.0) - (t < 0.0); }

}  // namespace

double S_rr(const KernelContext& ctx, double x, double y) {
    return S_rr_base(ctx, x, y).value().real() + S_rr_correction(ctx, x, y);
}

double D_rr(const KernelContext& ctx, double x, double y) {
    return (y - x) * S_rr_base(ctx, x, y).value().real();
}

double I_rr(const KernelContext& ctx, double x, double y) {
    return I_rr_term(ctx, x, y) - I_rr_term(ctx, y, x) + 0.5 * sgn(x - y);
}

double S_rr_correction_log(const KernelContext& ctx, double x, double y) {
    return correction_log(ctx, x, y);
}

KernelBlock kernel_block(const KernelContext& ctx, cplx x, cplx y) {
    KernelBlock b;
    if (ctx.regime == KernelRegime::complex_complex) {
        b.D = D_cc(ctx, x, y);
        b.S_xy = S_cc(ctx, x, y);
        b.S_yx = S_cc(ctx, y, x);
        b.I = I_cc(ctx, x, y);
    } else {
        double xr = x.real(), yr = y.real();
        b.D = D_rr(ctx, xr, yr);
        b.S_xy = S_rr(ctx, xr, yr);
        b.S_yx = S_rr(ctx, yr, xr);
        b.I = I_rr(ctx, xr, yr);
    }
    return b;
}

double correlation(const KernelContext& ctx, const std::vector<cplx>& points) {
    int k = int(points.size());
    if (k < 1 || k > 6) throw std::invalid_argument("correlation: need 1 <= k <= 6 points");
    ComplexMatrix m(2 * k, 2 * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            KernelBlock b = kernel_block(ctx, points[i], points[j]);
            if (i == j) {
                b.D = 0.0;  // antisymmetric factors vanish exactly on the diagonal
                b.I = 0.0;
            }
            m.at(2 * i, 2 * j) = b.D;
            m.at(2 * i, 2 * j + 1) = b.S_xy;
            m.at(2 * i + 1, 2 * j) = -b.S_yx;
            m.at(2 * i + 1, 2 * j + 1) = b.I;
        }
    cplx pf = pfaffian(m, 1e-10);
    return pf.real();
}

namespace {

double variance_complex(const KernelContext& ctx, const TestFunction& f) {
    const int n = ctx.half_dim;
    const double s = std::sqrt(2.0 * n);
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);

    // one-point term: 2n Int f^2 S(sz, sz)
    auto diag = tensor_grid(ctx.quad.diag_nodes, ctx.quad.diag_nodes, ax, bx, ay, by);
    double t1 = indexed_sum(diag.size(), ctx.exec, [&](std::size_t i) {
        const auto& nd = diag[i];
        double fv = f.eval(nd.x, nd.y);
        if (fv == 0.0) return 0.0;
        cplx zz(nd.x, nd.y);
        return nd.w * fv * fv * 2.0 * n * S_cc(ctx, s * zz, s * zz).real();
    });

    // two-point term: 4n^2 IInt f f (D I + S S')
    auto grid = tensor_grid(ctx.quad.pair_nodes, ctx.quad.pair_nodes, ax, bx, ay, by);
    struct Node {
        cplx z;
        double wf;
    };
    std::vector<Node> nodes;
    for (const auto& nd : grid) {
        double fv = f.eval(nd.x, nd.y);
        if (fv != 0.0) nodes.push_back({cplx(nd.x, nd.y), nd.w * fv});
    }
    double t2 = indexed_sum(nodes.size(), ctx.exec, [&](std::size_t i) {
        cplx zi = s * nodes[i].z;
        double acc = 0.0;
        for (const Node& nj : nodes) {
            cplx zj = s * nj.z;
            LogScaled di = D_cc_scaled(ctx, zi, zj) * I_cc_scaled(ctx, zi, zj);
            LogScaled ss = S_cc_scaled(ctx, zi, zj) * S_cc_scaled(ctx, zj, zi);
            acc += nodes[i].wf * nj.wf * (di.value() + ss.value()).real();
        }
        return acc;
    });
    return t1 - 4.0 * double(n) * n * t2;
}

double variance_real(const KernelContext& ctx, const TestFunction& f) {
    const int n = ctx.half_dim;
    const double s = std::sqrt(2.0 * n);
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);

    Quad1D qd = gauss_legendre(ctx.quad.diag_nodes, ax, bx);
    double t1 = 0.0;
    for (std::size_t i = 0; i < qd.size(); ++i) {
        double fv = f.eval1d(qd.x[i]);
        if (fv == 0.0) continue;
        t1 += qd.w[i] * fv * fv * s * S_rr(ctx, s * qd.x[i], s * qd.x[i]);
    }

    // pair term over the two triangles (the I entry jumps across x = y)
    Quad1D qo = gauss_legendre(ctx.quad.pair_nodes, ax, bx);
    Quad1D qi = gauss_legendre(ctx.quad.pair_nodes);
    double t2 = indexed_sum(qo.size(), ctx.exec, [&](std::size_t i) {
        double x = qo.x[i];
        double fx = f.eval1d(x);
        if (fx == 0.0) return 0.0;
        double sx = s * x;
        double half = 0.5 * (x - ax);
        double acc = 0.0;
        for (std::size_t j = 0; j < qi.size(); ++j) {
            double y = ax + half * (qi.x[j] + 1.0);
            double fy = f.eval1d(y);
            if (fy == 0.0) continue;
            double sy = s * y;
            double g1 = D_rr(ctx, sx, sy) * I_rr(ctx, sx, sy) + S_rr(ctx, sx, sy) * S_rr(ctx, sy, sx);
            double g2 = D_rr(ctx, sy, sx) * I_rr(ctx, sy, sx) + S_rr(ctx, sy, sx) * S_rr(ctx, sx, sy);
            acc += qo.w[i] * half * qi.w[j] * fx * fy * (g1 + g2);
        }
        return acc;
    });
    return t1 - 2.0 * double(n) * t2;
}

}  // namespace

double finite_n_variance(const KernelContext& ctx, const TestFunction& f) {
    if (ctx.regime == KernelRegime::complex_complex) {
        if (f.family != TestFunctionFamily::upper_half_bump &&
            f.family != TestFunctionFamily::disc_bump)
            throw std::invalid_argument("finite_n_variance: complex regime needs a 2D bump");
        return variance_complex(ctx, f);
    }
    if (f.family != TestFunctionFamily::interval_bump)
        throw std::invalid_argument("finite_n_variance: real regime needs an interval bump");
    return variance_real(ctx, f);
}

double expected_real_count(int n) {
    if (n < 2) throw std::invalid_argument("expected_real_count: n must be >= 2");
    KernelContext ctx(n, KernelRegime::real_real);
    double s = std::sqrt(2.0 * n);
    // window wide enough that the Gaussian tails beyond the edge are captured
    double hw = 1.0 + 0.25 + 6.0 / s;
    auto dens = [&](double x) { return s * S_rr(ctx, s * x, s * x); };
    return integrate_adaptive(dens, -hw, hw, 1e-10);
}

}  // namespace ginstat
