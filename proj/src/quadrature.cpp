#include "ginstat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "ginstat/scalar.hpp"

namespace ginstat {

Quad1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        q.w[n - 1 - i] = q.w[i];
    }
    return q;
}

Quad1D gauss_legendre(int n, double a, double b) {
    Quad1D q = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.x[i] = mid + half * q.x[i];
        q.w[i] *= half;
    }
    return q;
}

std::vector<QuadNode2D> tensor_grid(int nx, int ny, double ax, double bx, double ay, double by) {
    Quad1D qx = gauss_legendre(nx, ax, bx);
    Quad1D qy = gauss_legendre(ny, ay, by);
    std::vector<QuadNode2D> out;
    out.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) out.push_back({qx.x[i], qy.x[j], qx.w[i] * qy.w[j]});
    return out;
}

namespace {

double rule_apply(const Quad1D& q, const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * f(mid + half * q.x[i]);
    return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             const Quad1D& lo, const Quad1D& hi, int depth, int max_depth) {
    double c = rule_apply(lo, f, a, b);
    double fine = rule_apply(hi, f, a, b);
    double err = std::abs(fine - c);
    if (err <= tol * (1.0 + std::abs(fine)) || depth >= max_depth) return fine;
    double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, lo, hi, depth + 1, max_depth) +
           adapt(f, mid, b, 0.5 * tol, lo, hi, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_depth) {
    static const Quad1D lo = gauss_legendre(10);
    static const Quad1D hi = gauss_legendre(21);
    return adapt(f, a, b, tol, lo, hi, 0, max_depth);
}

}  // namespace ginstat
