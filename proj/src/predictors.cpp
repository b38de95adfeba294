#include "ginstat/predictors.hpp"

#include <cmath>
#include <stdexcept>

#include "ginstat/quadrature.hpp"

namespace ginstat {

double predict_bulk_variance(const TestFunction& f) {
    if (f.family != TestFunctionFamily::upper_half_bump)
        throw std::invalid_argument("predict_bulk_variance: needs an upper-half bump");
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);
    auto grid = tensor_grid(128, 128, ax, bx, ay, by);
    double acc = 0.0;
    for (const auto& nd : grid) {
        double fx, fy;
        f.gradient(nd.x, nd.y, fx, fy);
        acc += nd.w * (fx * fx + fy * fy);
    }
    return acc / (4.0 * kPi);
}

double predict_line_variance(const TestFunction& f) {
    if (f.family != TestFunctionFamily::interval_bump)
        throw std::invalid_argument("predict_line_variance: needs an interval bump");
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);
    Quad1D q = gauss_legendre(256, ax, bx);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double v = f.eval1d(q.x[i]);
        acc += q.w[i] * v * v;
    }
    return (2.0 - std::sqrt(2.0)) / std::sqrt(kPi) * acc;
}

GinueVariance predict_ginue_variance(const TestFunction& f) {
    GinueVariance out;
    if (f.family == TestFunctionFamily::interval_bump)
        throw std::invalid_argument("predict_ginue_variance: needs a 2D family");

    if (f.family == TestFunctionFamily::harmonic_polynomial) {
        // polar tensor grid over the unit disc
        Quad1D qr = gauss_legendre(192, 0.0, 1.0);
        Quad1D qt = gauss_legendre(192, 0.0, 2.0 * kPi);
        double acc = 0.0;
        for (std::size_t i = 0; i < qr.size(); ++i)
            for (std::size_t j = 0; j < qt.size(); ++j) {
                double x = qr.x[i] * std::cos(qt.x[j]);
                double y = qr.x[i] * std::sin(qt.x[j]);
                double fx, fy;
                f.gradient(x, y, fx, fy);
                acc += qr.w[i] * qt.w[j] * qr.x[i] * (fx * fx + fy * fy);
            }
        out.sigma_a2 = acc / (4.0 * kPi);
    } else {
        double ax, bx, ay, by;
        f.support_box(ax, bx, ay, by);
        auto grid = tensor_grid(128, 128, ax, bx, ay, by);
        double acc = 0.0;
        for (const auto& nd : grid) {
            double fx, fy;
            f.gradient(nd.x, nd.y, fx, fy);
            acc += nd.w * (fx * fx + fy * fy);
        }
        out.sigma_a2 = acc / (4.0 * kPi);
    }

    // boundary component: trapezoid Fourier coefficients at 512 nodes
    const int M = 512, kmax = 64;
    std::vector<double> fb(M);
    for (int m = 0; m < M; ++m) {
        double th = 2.0 * kPi * m / M;
        fb[m] = f.eval(std::cos(th), std::sin(th));
    }
    double acc = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double re = 0.0, im = 0.0;
        for (int m = 0; m < M; ++m) {
            double th = 2.0 * kPi * m / M;
            re += fb[m] * std::cos(k * th);
            im -= fb[m] * std::sin(k * th);
        }
        re /= M;
        im /= M;
        // |k| |f_hat_k|^2 + |-k| |f_hat_{-k}|^2 = 2k |f_hat_k|^2 for real f
        acc += 2.0 * k * (re * re + im * im);
    }
    out.sigma_b2 = 0.5 * acc;
    return out;
}

bigint multinomial(int N, const std::vector<int>& parts) {
    if (N < 0 || N > 64) throw std::invalid_argument("multinomial: need 0 <= N <= 64");
    int sum = 0;
    for (int p : parts) {
        if (p <= 0) throw std::invalid_argument("multinomial: parts must be positive");
        sum += p;
    }
    if (sum != N) throw std::invalid_argument("multinomial: parts must sum to N");
    auto fact = [](int k) {
        bigint f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    bigint r = fact(N);
    for (int p : parts) r /= fact(p);
    return r;
}

namespace {

template <typename Fn>
void for_each_composition(int N, Fn&& fn) {
    // compositions of N correspond to subsets of the N-1 gaps
    std::vector<int> parts;
    for (unsigned mask = 0; mask < (1u << (N - 1)); ++mask) {
        parts.clear();
        int run = 1;
        for (int g = 0; g < N - 1; ++g) {
            if (mask & (1u << g)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        fn(parts);
    }
}

}  // namespace

bigrat identity_aN(int N) {
    if (N < 1 || N > 16) throw std::invalid_argument("identity_aN: need 1 <= N <= 16");
    bigrat acc = 0;
    for_each_composition(N, [&](const std::vector<int>& parts) {
        int m = int(parts.size());
        bigrat w = bigrat(multinomial(N, parts)) / m;
        if (m % 2 == 0) w = -w;
        acc += w;
    });
    return acc;
}

bigrat identity_bN(int N) {
    if (N < 1 || N > 16) throw std::invalid_argument("identity_bN: need 1 <= N <= 16");
    bigrat acc = 0;
    for_each_composition(N, [&](const std::vector<int>& parts) {
        int m = int(parts.size());
        long long sq = 0;
        for (int p : parts) sq += 1LL * p * p;
        long long cross = 1LL * N * N - sq;  // sum_{i != j} k_i k_j
        if (cross == 0) return;
        bigrat w = bigrat(multinomial(N, parts)) * cross / m;
        if (m % 2 == 0) w = -w;
        acc += w;
    });
    return acc;
}

double costin_lebowitz_cumulant(const KernelContext& ctx, const TestFunction& f, int k) {
    if (ctx.regime != KernelRegime::complex_complex)
        throw std::invalid_argument("costin_lebowitz_cumulant: complex regime only");
    if (k < 1 || k > 3) throw std::invalid_argument("costin_lebowitz_cumulant: k must be 1..3");

    const int n = ctx.half_dim;
    const double s = std::sqrt(2.0 * n);
    double ax, bx, ay, by;
    f.support_box(ax, bx, ay, by);
    auto grid = tensor_grid(ctx.quad.pair_nodes, ctx.quad.pair_nodes, ax, bx, ay, by);
    std::vector<cplx> zs;
    std::vector<double> wgt, fval;
    for (const auto& nd : grid) {
        double fv = f.eval(nd.x, nd.y);
        if (fv == 0.0) continue;
        zs.push_back(cplx(nd.x, nd.y));
        wgt.push_back(nd.w);
        fval.push_back(fv);
    }
    const std::size_t N = zs.size();

    // node kernel matrix K[a][b] = S(s z_a, s z_b)
    std::vector<cplx> K(N * N);
    indexed_for(N, ctx.exec, [&](std::size_t a) {
        for (std::size_t b = 0; b < N; ++b)
            K[a * N + b] = S_cc(ctx, s * zs[a], s * zs[b]);
    });

    // cyclic integral for one composition: tr(D_{k1} K D_{k2} K ... )
    auto diag = [&](int p) {
        std::vector<double> d(N);
        for (std::size_t a = 0; a < N; ++a) d[a] = 2.0 * n * wgt[a] * std::pow(fval[a], p);
        return d;
    };
    auto cyc1 = [&](int p1) {
        std::vector<double> d = diag(p1);
        cplx acc = 0.0;
        for (std::size_t a = 0; a < N; ++a) acc += d[a] * K[a * N + a];
        return acc;
    };
    auto cyc2 = [&](int p1, int p2) {
        std::vector<double> d1 = diag(p1), d2 = diag(p2);
        std::vector<cplx> parts(N);
        indexed_for(N, ctx.exec, [&](std::size_t a) {
            cplx acc = 0.0;
            for (std::size_t b = 0; b < N; ++b) acc += d1[a] * K[a * N + b] * d2[b] * K[b * N + a];
            parts[a] = acc;
        });
        cplx acc = 0.0;
        for (const cplx& v : parts) acc += v;
        return acc;
    };
    auto cyc3 = [&](int p1, int p2, int p3) {
        std::vector<double> d1 = diag(p1), d2 = diag(p2), d3 = diag(p3);
        // M = (D2 K); T[a][c] = sum_b K[a][b] d2[b] K[b][c]
        std::vector<cplx> T(N * N);
        indexed_for(N, ctx.exec, [&](std::size_t a) {
            for (std::size_t c = 0; c < N; ++c) {
                cplx acc = 0.0;
                for (std::size_t b = 0; b < N; ++b) acc += K[a * N + b] * d2[b] * K[b * N + c];
                T[a * N + c] = acc;
            }
        });
        std::vector<cplx> parts(N);
        indexed_for(N, ctx.exec, [&](std::size_t a) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < N; ++c) acc += d1[a] * T[a * N + c] * d3[c] * K[c * N + a];
            parts[a] = acc;
        });
        cplx acc = 0.0;
        for (const cplx& v : parts) acc += v;
        return acc;
    };

    cplx total = 0.0;
    if (k == 1) {
        total = cyc1(1);
    } else if (k == 2) {
        total = cyc1(2);            // m=1, (2), weight +1 * 2!/2! = 1
        total -= cyc2(1, 1);        // m=2, (1,1), weight (-1/2) * 2!/1!1! = -1
    } else {
        total = cyc1(3);                       // m=1, (3): +1
        total -= 1.5 * cyc2(2, 1);             // m=2, (2,1)+(1,2): (-1/2)*3 each, cyc2 symmetric
        total -= 1.5 * cyc2(1, 2);
        total += 2.0 * cyc3(1, 1, 1);          // m=3, (1,1,1): (1/3)*3! = 2
    }
    return total.real();
}

}  // namespace ginstat
