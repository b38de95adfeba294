#include "ginstat/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ginstat {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// ---------------------------------------------------------------------------
// balancing (diagonal similarity by powers of 2, EISPACK balanc scaling pass)
// ---------------------------------------------------------------------------

template <typename Mat, typename AbsFn>
void balance_inplace(Mat& a, int n, AbsFn absval) {
    const double radix = 2.0, r2 = radix * radix;
    bool again = true;
    int guard = 0;
    while (again && guard++ < 100) {
        again = false;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += absval(a.at(j, i));
                r += absval(a.at(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) {
                f *= radix;
                c *= r2;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= r2;
            }
            if ((c + r) / f < 0.95 * s) {
                again = true;
                double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a.at(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a.at(j, i) *= f;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// complex path: Householder Hessenberg + implicit single-shift QR (comqr-like)
// ---------------------------------------------------------------------------

void hessenberg_complex(ComplexMatrix& a) {
    int n = a.n_rows;
    std::vector<cplx> v(n), work(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(a.at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        cplx x0 = a.at(k + 1, k);
        cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        cplx alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a.at(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        double beta = 2.0 / vnorm2;

        // left: A <- A - beta v (v^* A) on rows k+1..n-1
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * a.at(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) a.at(i, j) -= v[i] * s;
        }
        // right: A <- A - beta (A v) v^* on cols k+1..n-1
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a.at(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= s * std::conj(v[j]);
        }
        a.at(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) a.at(i, k) = 0.0;
    }
}

// Givens pair zeroing y against x: G = [[c, s], [-conj(s), c]], c real.
void make_givens(cplx x, cplx y, double& c, cplx& s) {
    if (y == cplx(0.0)) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (x == cplx(0.0)) {
        c = 0.0;
        s = std::conj(y) / std::abs(y);
        return;
    }
    double nr = std::sqrt(std::norm(x) + std::norm(y));
    c = std::abs(x) / nr;
    s = (x / std::abs(x)) * std::conj(y) / nr;
}

std::vector<cplx> qr_eigen_complex_hessenberg(ComplexMatrix& h) {
    int n = h.n_rows;
    std::vector<cplx> w(n);
    cplx t = 0.0;  // accumulated shift
    long long itn = 40LL * n;
    int en = n - 1;
    std::vector<double> cs(n);
    std::vector<cplx> sn(n);

    while (en >= 0) {
        int its = 0;
        while (true) {
            // find small subdiagonal element
            int l = 0;
            for (int i = en; i >= 1; --i) {
                double tst = std::abs(h.at(i - 1, i - 1)) + std::abs(h.at(i, i));
                if (tst == 0.0) tst = 1.0;
                if (std::abs(h.at(i, i - 1)) <= kEps * tst) {
                    h.at(i, i - 1) = 0.0;
                    l = i;
                    break;
                }
            }
            if (l == en) {
                w[en] = h.at(en, en) + t;
                en -= 1;
                break;
            }
            if (itn-- <= 0) throw std::runtime_error("eigenvalues_complex: QR failed to converge");

            cplx sigma;
            if (its == 10 || its == 20 || its == 30) {
                double sx = std::abs(h.at(en, en - 1));
                if (en - 1 >= 1) sx += std::abs(h.at(en - 1, en - 2));
                sigma = cplx(sx, 0.0);
            } else {
                cplx aa = h.at(en - 1, en - 1), bb = h.at(en - 1, en);
                cplx cc = h.at(en, en - 1), dd = h.at(en, en);
                cplx p = 0.5 * (aa - dd);
                cplx q = std::sqrt(p * p + bb * cc);
                cplx den1 = p + q, den2 = p - q;
                cplx den = (std::abs(den1) >= std::abs(den2)) ? den1 : den2;
                sigma = (den == cplx(0.0)) ? dd : dd - bb * cc / den;
            }
            // the accumulated shift t is global, so the subtraction must cover
            // the whole leading block, not just the active window
            for (int i = 0; i <= en; ++i) h.at(i, i) -= sigma;
            t += sigma;
            ++its;

            // one QR sweep on the active window [l, en]
            for (int i = l; i < en; ++i) {
                make_givens(h.at(i, i), h.at(i + 1, i), cs[i], sn[i]);
                // rows i, i+1 over columns i..en
                for (int j = i; j <= en; ++j) {
                    cplx u = h.at(i, j), v2 = h.at(i + 1, j);
                    h.at(i, j) = cs[i] * u + sn[i] * v2;
                    h.at(i + 1, j) = -std::conj(sn[i]) * u + cs[i] * v2;
                }
            }
            for (int i = l; i < en; ++i) {
                // columns i, i+1 over rows l..min(i+2, en)
                int rmax = std::min(i + 2, en);
                for (int r = l; r <= rmax; ++r) {
                    cplx u = h.at(r, i), v2 = h.at(r, i + 1);
                    h.at(r, i) = cs[i] * u + std::conj(sn[i]) * v2;
                    h.at(r, i + 1) = -sn[i] * u + cs[i] * v2;
                }
            }
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// real path: Householder Hessenberg + Francis double-shift QR (hqr-like)
// ---------------------------------------------------------------------------

void hessenberg_real(RealMatrix& a) {
    int n = a.n;
    std::vector<double> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += a.at(i, k) * a.at(i, k);
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        double alpha = (a.at(k + 1, k) >= 0.0) ? -xnorm : xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a.at(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        double beta = 2.0 / vnorm2;
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k + 1; i < n; ++i) s += v[i] * a.at(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) a.at(i, j) -= v[i] * s;
        }
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a.at(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= s * v[j];
        }
        a.at(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) a.at(i, k) = 0.0;
    }
}

void qr_eigen_real_hessenberg(RealMatrix& h, std::vector<cplx>& w, std::vector<bool>& flags) {
    int nn = h.n;
    w.assign(nn, cplx(0.0));
    flags.assign(nn, false);
    double anorm = 0.0;
    for (int i = 0; i < nn; ++i)
        for (int j = std::max(i - 1, 0); j < nn; ++j) anorm += std::abs(h.at(i, j));
    if (anorm == 0.0) anorm = 1.0;

    int en = nn - 1;
    double t = 0.0;
    long long itn = 40LL * nn;
    int out = 0;
    auto push = [&](cplx val, bool isreal) { w[out] = val; flags[out] = isreal; ++out; };

    while (en >= 0) {
        int its = 0;
        int l;
        while (true) {
            for (l = en; l >= 1; --l) {
                double s = std::abs(h.at(l - 1, l - 1)) + std::abs(h.at(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h.at(l, l - 1)) <= kEps * s) {
                    h.at(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = h.at(en, en);
            if (l == en) {  // one real root
                push(cplx(x + t, 0.0), true);
                en -= 1;
                break;
            }
            double y = h.at(en - 1, en - 1);
            double ww = h.at(en, en - 1) * h.at(en - 1, en);
            if (l == en - 1) {  // 2x2 block
                double p = 0.5 * (y - x);
                double q = p * p + ww;
                double zz = std::sqrt(std::abs(q));
                double xt = x + t;
                if (q >= 0.0) {  // real pair
                    zz = p + (p >= 0.0 ? zz : -zz);
                    push(cplx(xt + zz, 0.0), true);
                    if (zz != 0.0)
                        push(cplx(xt - ww / zz, 0.0), true);
                    else
                        push(cplx(xt, 0.0), true);
                } else {  // exact conjugate pair
                    push(cplx(xt + p, zz), false);
                    push(cplx(xt + p, -zz), false);
                }
                en -= 2;
                break;
            }
            if (itn-- <= 0) throw std::runtime_error("eigenvalues_real_schur: QR failed to converge");
            if (its == 10 || its == 20 || its == 30) {  // exceptional shift
                t += x;
                for (int i = 0; i <= en; ++i) h.at(i, i) -= x;
                double s = std::abs(h.at(en, en - 1)) + std::abs(h.at(en - 1, en - 2));
                x = 0.75 * s;
                y = x;
                ww = -0.4375 * s * s;
            }
            ++its;

            // Francis double shift on rows l..en
            int m;
            double p = 0, q = 0, r = 0;
            for (m = en - 2; m >= l; --m) {
                double z = h.at(m, m);
                double rr = x - z, ss = y - z;
                p = (rr * ss - ww) / h.at(m + 1, m) + h.at(m, m + 1);
                q = h.at(m + 1, m + 1) - z - rr - ss;
                r = h.at(m + 2, m + 1);
                double s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                double u = std::abs(h.at(m, m - 1)) * (std::abs(q) + std::abs(r));
                double v = std::abs(p) * (std::abs(h.at(m - 1, m - 1)) + std::abs(z) +
                                          std::abs(h.at(m + 1, m + 1)));
                if (u <= kEps * v) break;
            }
            for (int i = m + 2; i <= en; ++i) {
                h.at(i, i - 2) = 0.0;
                if (i != m + 2) h.at(i, i - 3) = 0.0;
            }
            for (int k = m; k <= en - 1; ++k) {
                if (k != m) {
                    p = h.at(k, k - 1);
                    q = h.at(k + 1, k - 1);
                    r = (k != en - 1) ? h.at(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                double s = std::sqrt(p * p + q * q + r * r);
                if (p < 0.0) s = -s;
                if (k != m)
                    h.at(k, k - 1) = -s * x;
                else if (l != m)
                    h.at(k, k - 1) = -h.at(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                double z = r / s;
                q /= p;
                r /= p;
                if (k != en - 1) {
                    for (int j = k; j <= en; ++j) {  // row modification
                        p = h.at(k, j) + q * h.at(k + 1, j) + r * h.at(k + 2, j);
                        h.at(k, j) -= p * x;
                        h.at(k + 1, j) -= p * y;
                        h.at(k + 2, j) -= p * z;
                    }
                    int mmin = std::min(en, k + 3);
                    for (int i = l; i <= mmin; ++i) {  // column modification
                        p = x * h.at(i, k) + y * h.at(i, k + 1) + z * h.at(i, k + 2);
                        h.at(i, k) -= p;
                        h.at(i, k + 1) -= p * q;
                        h.at(i, k + 2) -= p * r;
                    }
                } else {
                    for (int j = k; j <= en; ++j) {
                        p = h.at(k, j) + q * h.at(k + 1, j);
                        h.at(k, j) -= p * x;
                        h.at(k + 1, j) -= p * y;
                    }
                    int mmin = std::min(en, k + 3);
                    for (int i = l; i <= mmin; ++i) {
                        p = x * h.at(i, k) + y * h.at(i, k + 1);
                        h.at(i, k) -= p;
                        h.at(i, k + 1) -= p * q;
                    }
                }
            }
        }
    }
}

}  // namespace

Spectrum eigenvalues_complex(const ComplexMatrix& M) {
    if (!M.square()) throw std::invalid_argument("eigenvalues_complex: matrix must be square");
    if (M.n_rows > 4096) throw std::invalid_argument("eigenvalues_complex: n > 4096 unsupported");
    M.check_finite();
    ComplexMatrix a = M;
    int n = a.n_rows;
    balance_inplace(a, n, [](cplx z) { return std::abs(z.real()) + std::abs(z.imag()); });
    hessenberg_complex(a);
    Spectrum sp;
    sp.eigenvalues = qr_eigen_complex_hessenberg(a);
    sp.real_flags.assign(n, false);
    sp.source_dim = n;
    cplx tr = M.trace(), sum = 0.0;
    for (cplx z : sp.eigenvalues) sum += z;
    sp.trace_residual = std::abs(sum - tr) / std::max(1.0, std::abs(tr));
    if (sp.trace_residual > 1e-8 * n)
        throw std::runtime_error("eigenvalues_complex: trace invariant violated (residual " +
                                 std::to_string(sp.trace_residual) + ")");
    return sp;
}

Spectrum eigenvalues_real_schur(const RealMatrix& M) {
    int n = M.n;
    for (double v : M.entries)
        if (!std::isfinite(v)) throw std::invalid_argument("eigenvalues_real_schur: non-finite entry");
    RealMatrix a = M;
    balance_inplace(a, n, [](double x) { return std::abs(x); });
    hessenberg_real(a);
    Spectrum sp;
    sp.source_dim = n;
    qr_eigen_real_hessenberg(a, sp.eigenvalues, sp.real_flags);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += M.at(i, i);
    cplx sum = 0.0;
    for (cplx z : sp.eigenvalues) sum += z;
    sp.trace_residual = std::abs(sum - cplx(tr)) / std::max(1.0, std::abs(tr));
    if (sp.trace_residual > 1e-8 * n)
        throw std::runtime_error("eigenvalues_real_schur: trace invariant violated");
    return sp;
}

namespace {

// in-place partial-pivot LU; returns permutation sign, 0 if singular
int lu_decompose(ComplexMatrix& a) {
    int n = a.n_rows, sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        cplx inv = 1.0 / a.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            cplx f = a.at(i, k) * inv;
            a.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return sign;
}

}  // namespace

double lu_logabsdet(const ComplexMatrix& M) {
    if (!M.square()) throw std::invalid_argument("lu_logabsdet: matrix must be square");
    ComplexMatrix a = M;
    int sign = lu_decompose(a);
    if (sign == 0) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (int i = 0; i < a.n_rows; ++i) s += std::log(std::abs(a.at(i, i)));
    return s;
}

cplx lu_det(const ComplexMatrix& M) {
    if (!M.square()) throw std::invalid_argument("lu_det: matrix must be square");
    ComplexMatrix a = M;
    int sign = lu_decompose(a);
    if (sign == 0) return 0.0;
    cplx d = static_cast<double>(sign);
    for (int i = 0; i < a.n_rows; ++i) d *= a.at(i, i);
    return d;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& H, double tol) {
    if (!H.square()) throw std::invalid_argument("eigenvalues_hermitian: matrix must be square");
    int n = H.n_rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (std::abs(H.at(i, j) - std::conj(H.at(j, i))) > tol)
                throw std::invalid_argument("eigenvalues_hermitian: input not Hermitian within tolerance");

    ComplexMatrix a = H;
    std::vector<double> d(n), e(n, 0.0);
    std::vector<cplx> v(n);
    // Householder tridiagonalization (two-sided, Hermitian update)
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(a.at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) {
            e[k + 1] = 0.0;
            continue;
        }
        cplx x0 = a.at(k + 1, k);
        cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        cplx alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a.at(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) {
            e[k + 1] = std::abs(alpha);
            continue;
        }
        double beta = 2.0 / vnorm2;
        // p = beta A v ; q = p - (beta/2)(v^* p) v ; A <- A - v q^* - q v^*
        std::vector<cplx> p(n, cplx(0.0));
        for (int i = k + 1; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a.at(i, j) * v[j];
            p[i] = beta * s;
        }
        cplx vp = 0.0;
        for (int i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        cplx kk = 0.5 * beta * vp;
        for (int i = k + 1; i < n; ++i) p[i] -= kk * v[i];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
        a.at(k + 1, k) = alpha;
        e[k + 1] = std::abs(alpha);  // phase removed by diagonal unitary similarity
    }
    if (n >= 2) e[n - 1] = std::abs(a.at(n - 1, n - 2));
    for (int i = 0; i < n; ++i) d[i] = std::real(a.at(i, i));

    // implicit QL with Wilkinson shift on the real tridiagonal (d, e[1..n-1])
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("eigenvalues_hermitian: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace ginstat
