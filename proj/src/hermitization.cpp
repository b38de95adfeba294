#include "ginstat/hermitization.hpp"

#include <algorithm>
#include <cmath>

#include "ginstat/parallel.hpp"
#include "ginstat/quadrature.hpp"

namespace ginstat {

namespace {

HermitizedMatrix build_hermitization(const ComplexMatrix& M, cplx z, double scale) {
    if (!M.square()) throw std::invalid_argument("hermitize: matrix must be square");
    int n = M.n_rows;
    HermitizedMatrix h;
    h.base_dim = n;
    h.z = z;
    h.W = ComplexMatrix(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx v = M.at(i, j);
            if (i == j) v -= z;
            v *= scale;
            h.W.at(i, n + j) = v;
            h.W.at(n + j, i) = std::conj(v);
        }
    return h;
}

}  // namespace

HermitizedMatrix hermitize(const ComplexMatrix& M, cplx z) {
    return build_hermitization(M, z, 1.0 / std::sqrt(double(M.n_rows)));
}

HermitizedMatrix hermitize_unit_scale(const ComplexMatrix& M, cplx z) {
    return build_hermitization(M, z, 1.0);
}

cplx stieltjes_from_spectrum(const std::vector<double>& mu, int base_dim, cplx zeta,
                             bool normalize_by_2n) {
    if (zeta.imag() <= 0.0) throw std::invalid_argument("stieltjes: Im zeta must be positive");
    cplx s = 0.0;
    for (double m : mu) s += 1.0 / (cplx(m) - zeta);
    double norm = normalize_by_2n ? 2.0 * base_dim : double(base_dim);
    return s / norm;
}

cplx stieltjes(const HermitizedMatrix& H, cplx zeta, bool normalize_by_2n) {
    std::vector<double> mu = eigenvalues_hermitian(H.W);
    return stieltjes_from_spectrum(mu, H.base_dim, zeta, normalize_by_2n);
}

double girko_reconstruct(const TestFunction& f, const ComplexMatrix& M, const GirkoOptions& opt) {
    if (!M.square()) throw std::invalid_argument("girko_reconstruct: matrix must be square");
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);
    if (ay == by) throw std::invalid_argument("girko_reconstruct: need a 2D-supported test function");

    std::vector<cplx> lam;
    if (opt.path == GirkoPath::spectrum) {
        Spectrum sp = eigenvalues_complex(M);
        lam = sp.eigenvalues;
    }
    const int n = M.n_rows;
    const Quad1D base = gauss_legendre(opt.nodes_per_panel);
    const int P = opt.panels;
    const double hx = (bx - ax) / P, hy = (by - ay) / P;

    double total = indexed_sum(std::size_t(P) * P, Exec::openmp, [&](std::size_t cell) {
        int pi = int(cell) / P, pj = int(cell) % P;
        double x0 = ax + pi * hx, y0 = ay + pj * hy;
        double acc = 0.0;
        for (std::size_t a = 0; a < base.size(); ++a)
            for (std::size_t b = 0; b < base.size(); ++b) {
                double x = x0 + 0.5 * hx * (base.x[a] + 1.0);
                double y = y0 + 0.5 * hy * (base.x[b] + 1.0);
                double w = 0.25 * hx * hy * base.w[a] * base.w[b];
                double lap = f.laplacian(x, y);
                if (lap == 0.0) continue;
                double L = 0.0;
                if (opt.path == GirkoPath::spectrum) {
                    cplx zz(x, y);
                    for (const cplx& l : lam) L += std::log(std::max(std::abs(zz - l), 1e-300));
                } else {
                    ComplexMatrix A = M;
                    for (int i = 0; i < n; ++i) A.at(i, i) -= cplx(x, y);
                    L = lu_logabsdet(A);
                    if (!std::isfinite(L)) L = -700.0 * n;  // exactly singular node
                }
                acc += w * lap * L;
            }
        return acc;
    });
    return total / (2.0 * kPi);
}

namespace {

// roots of a monic cubic via its companion matrix
std::array<cplx, 3> cubic_roots(cplx c2, cplx c1, cplx c0) {
    ComplexMatrix comp(3, 3);
    comp.at(0, 2) = -c0;
    comp.at(1, 0) = 1.0;
    comp.at(1, 2) = -c1;
    comp.at(2, 1) = 1.0;
    comp.at(2, 2) = -c2;
    Spectrum sp = eigenvalues_complex(comp);
    return {sp.eigenvalues[0], sp.eigenvalues[1], sp.eigenvalues[2]};
}

}  // namespace

cplx solve_mc(cplx w, cplx z) {
    if (w.imag() <= 0.0) throw std::invalid_argument("solve_mc: Im w must be positive");
    double z2 = std::norm(z);
    // w m^3 + 2w m^2 + (w + 1 - |z|^2) m + 1 = 0
    auto roots = cubic_roots(2.0, (w + 1.0 - z2) / w, 1.0 / w);
    cplx best = roots[0];
    for (const cplx& r : roots)
        if (r.imag() > best.imag()) best = r;
    if (best.imag() <= 0.0)
        throw std::runtime_error("solve_mc: no root with positive imaginary part");
    // Newton polish on the defining equation
    for (int it = 0; it < 4; ++it) {
        cplx m = best;
        cplx fval = 1.0 / m + w * (1.0 + m) - z2 / (1.0 + m);
        cplx fder = -1.0 / (m * m) + w + z2 / ((1.0 + m) * (1.0 + m));
        cplx step = fval / fder;
        if (!is_finite(step)) break;
        best = m - step;
        if (std::abs(step) < 1e-15 * std::abs(best)) break;
    }
    return best;
}

cplx solve_mc_symmetrized(cplx w, cplx z) {
    if (w.imag() <= 0.0) throw std::invalid_argument("solve_mc_symmetrized: Im w must be positive");
    double z2 = std::norm(z);
    // m^3 + 2w m^2 + (w^2 - |z|^2 + 1) m + w = 0
    auto roots = cubic_roots(2.0 * w, w * w - z2 + 1.0, w);
    cplx best = roots[0];
    for (const cplx& r : roots)
        if (r.imag() > best.imag()) best = r;
    if (best.imag() <= 0.0)
        throw std::runtime_error("solve_mc_symmetrized: no root with positive imaginary part");
    for (int it = 0; it < 4; ++it) {
        cplx m = best;
        cplx wm = w + m;
        cplx fval = 1.0 / m + wm - z2 / wm;
        cplx fder = -1.0 / (m * m) + 1.0 + z2 / (wm * wm);
        cplx step = fval / fder;
        if (!is_finite(step)) break;
        best = m - step;
        if (std::abs(step) < 1e-15 * std::abs(best)) break;
    }
    return best;
}

double classical_density(double x, cplx z, double eta) {
    cplx m = solve_mc_symmetrized(cplx(x, eta), z);
    return std::max(0.0, m.imag() / kPi);
}

double classical_density_limit(double x, cplx z) {
    double z2 = std::norm(z);
    auto roots = cubic_roots(cplx(2.0 * x), cplx(x * x - z2 + 1.0), cplx(x));
    double im = 0.0;
    for (const cplx& r : roots) im = std::max(im, r.imag());
    return (im > 1e-12) ? im / kPi : 0.0;
}

namespace {

// Cumulative integral of the limit density over [0, inf). The support is an
// interval [lo, hi] with square-root vanishing at the edges, so the table
// integrates in the Chebyshev-type variable x = mid - half*cos(theta), where
// the integrand is smooth. Mass is renormalized to exactly 1/2.
struct CdfTable {
    cplx z{};
    double lo = 0.0, hi = 1.0;
    std::vector<double> boundary;  // cumulative mass at theta panel boundaries
    double dtheta = 0.0;
    double norm_factor = 1.0;

    double x_of(double th) const { return 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(th); }
    double th_of(double x) const {
        double c = ((lo + hi) / 2.0 - x) * 2.0 / (hi - lo);
        return std::acos(std::clamp(c, -1.0, 1.0));
    }
    double integrand(double th) const {
        return classical_density_limit(x_of(th), z) * 0.5 * (hi - lo) * std::sin(th);
    }

    double cdf(double t) const {
        if (t <= lo) return 0.0;
        if (t >= hi) return 0.5;
        static const Quad1D q = gauss_legendre(12);
        double th = th_of(t);
        int p = std::min<int>(int(th / dtheta), int(boundary.size()) - 2);
        double t0 = p * dtheta;
        double half = 0.5 * (th - t0);
        double mid = t0 + half;
        double local = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) local += q.w[i] * integrand(mid + half * q.x[i]);
        return boundary[p] + local * half * norm_factor;
    }
};

CdfTable build_cdf(cplx z) {
    CdfTable tab;
    tab.z = z;
    double upper = 2.5 + std::abs(z);
    // bracket the support edges of the limit density
    auto dens = [&](double x) { return classical_density_limit(x, z); };
    double a = 0.0, b = upper;
    while (b - a > 1e-13) {  // upper edge: density positive below, zero above
        double m = 0.5 * (a + b);
        (dens(m) > 0.0 ? a : b) = m;
    }
    tab.hi = b;
    if (dens(1e-12) > 0.0) {
        tab.lo = 0.0;
    } else {  // gapped case (|z| > 1): locate the inner edge
        a = 0.0;
        b = tab.hi;
        while (b - a > 1e-13) {
            double m = 0.5 * (a + b);
            (dens(m) > 0.0 ? b : a) = m;
        }
        tab.lo = a;
    }

    const int P = 600;
    tab.dtheta = kPi / P;
    tab.boundary.assign(P + 1, 0.0);
    static const Quad1D q = gauss_legendre(12);
    double acc = 0.0;
    for (int p = 0; p < P; ++p) {
        double half = 0.5 * tab.dtheta;
        double mid = p * tab.dtheta + half;
        double local = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) local += q.w[i] * tab.integrand(mid + half * q.x[i]);
        acc += local * half;
        tab.boundary[p + 1] = acc;
    }
    tab.norm_factor = 0.5 / acc;
    for (double& bnd : tab.boundary) bnd *= tab.norm_factor;
    return tab;
}

}  // namespace

std::vector<double> classical_positions(int N, cplx z) {
    if (N < 1) throw std::invalid_argument("classical_positions: N must be >= 1");
    CdfTable tab = build_cdf(z);
    int count = N / 2;
    std::vector<double> out;
    out.reserve(count);
    for (int j = 1; j <= count; ++j) {
        double target = double(j) / N;
        if (target > 0.5 + 1e-12)
            throw std::runtime_error("classical_positions: insufficient density mass over [0, inf)");
        double lo = tab.lo, hi = tab.hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double c = tab.cdf(mid);
            if (std::abs(c - target) <= 1e-9) {
                lo = hi = mid;
                break;
            }
            (c < target ? lo : hi) = mid;
            if (hi - lo < 1e-14) break;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

ClassicalProfile classical_profile(cplx z, int grid_points, int N) {
    ClassicalProfile prof;
    prof.z = z;
    double B = 1.5 + std::abs(z);
    for (int i = 0; i < grid_points; ++i) {
        double x = -B + 2.0 * B * i / (grid_points - 1);
        prof.grid.push_back(x);
        prof.density.push_back(classical_density(x, z));
    }
    prof.positions = classical_positions(N, z);
    return prof;
}

RigidityResult rigidity_diagnostic(const ComplexMatrix& M, cplx z) {
    if (std::abs(z) > 0.8)
        throw std::invalid_argument("rigidity_diagnostic: bulk only (|z| <= 0.8)");
    HermitizedMatrix H = hermitize_unit_scale(M, z);
    std::vector<double> mu = eigenvalues_hermitian(H.W);
    int n = M.n_rows;
    // n largest eigenvalues are the positive half (spectrum symmetric about 0)
    std::vector<double> pos(mu.end() - n, mu.end());
    std::vector<double> gam = classical_positions(2 * n, z);
    RigidityResult res;
    for (int j = 0; j < n; ++j) {
        if (pos[j] <= 0.0) {
            ++res.excluded;
            continue;
        }
        res.log_sum += std::log(pos[j]) - std::log(gam[j]);
    }
    return res;
}

}  // namespace ginstat
