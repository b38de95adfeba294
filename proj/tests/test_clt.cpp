#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ginstat/experiments.hpp"
#include "ginstat/predictors.hpp"
#include "ginstat/quadrature.hpp"
#include "ginstat/rng.hpp"

using namespace ginstat;

TEST_CASE("test functions: analytic derivatives match finite differences") {
    std::vector<TestFunction> fams = {
        TestFunction::disc_bump(cplx(0.1, 0.2), 0.35, 1.3),
        TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.25, 0.8),
        TestFunction::interval_bump(0.1, 0.4, 1.1),
        TestFunction::harmonic(3, 0.7),
    };
    const double h = 1e-5;
    for (const TestFunction& f : fams) {
        double ax, bx, ay, by;
        f.support_box(ax, bx, ay, by);
        if (ay == by) {
            ay = -0.1;
            by = 0.1;
        }
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                double x = ax + (bx - ax) * i / 12.0;
                double y = ay + (by - ay) * j / 12.0;
                double fx, fy;
                f.gradient(x, y, fx, fy);
                double fdx = (f.eval(x + h, y) - f.eval(x - h, y)) / (2 * h);
                double fdy = (f.eval(x, y + h) - f.eval(x, y - h)) / (2 * h);
                REQUIRE(std::abs(fx - fdx) < 1e-6);
                REQUIRE(std::abs(fy - fdy) < 1e-6);
                double lap = (f.eval(x + h, y) + f.eval(x - h, y) + f.eval(x, y + h) +
                              f.eval(x, y - h) - 4.0 * f.eval(x, y)) /
                             (h * h);
                REQUIRE(std::abs(f.laplacian(x, y) - lap) < 1e-4);
            }
    }
}

TEST_CASE("bump support validation at construction") {
    CHECK_THROWS(TestFunction::upper_half_bump(cplx(0.0, 0.2), 0.25));  // touches the real line
    CHECK_THROWS(TestFunction::disc_bump(cplx(0.8, 0.0), 0.3));         // leaves the unit disc
    CHECK_THROWS(TestFunction::interval_bump(0.8, 0.3));                // leaves (-1, 1)
    CHECK_THROWS(TestFunction::harmonic(0));
    // support is exactly the closed disc: zero outside, positive inside
    TestFunction f = TestFunction::disc_bump(cplx(0.0, 0.0), 0.5);
    CHECK(f.eval(0.51, 0.0) == 0.0);
    CHECK(f.eval(0.49, 0.0) > 0.0);
    CHECK(f.eval(0.0, 0.0) == doctest::Approx(1.0));  // peak value is the amplitude
}

TEST_CASE("linear statistic: trivial cases and the trace identity") {
    TestFunction f = TestFunction::disc_bump(cplx(0.2, 0.1), 0.3, 0.0);
    EnsembleSpec spec{AtomKind::complex_gaussian, 32, 17};
    Spectrum sp = sample_spectrum(spec, 0);
    CHECK(linear_statistic(f, sp) == 0.0);

    // one eigenvalue at the bump center scores the amplitude
    Spectrum single;
    single.eigenvalues = {cplx(0.2, 0.1)};
    single.real_flags = {false};
    single.source_dim = 1;
    TestFunction peak = TestFunction::disc_bump(cplx(0.2, 0.1), 0.3, 1.0);
    CHECK(linear_statistic(peak, single) == doctest::Approx(1.0));

    // f = Re z equals Re tr M through the spectrum
    ComplexMatrix m = sample_matrix(spec, 4);
    Spectrum full = eigenvalues_complex(m);
    CHECK(linear_statistic(TestFunction::harmonic(1), full) ==
          doctest::Approx(m.trace().real()).epsilon(1e-9));
}

TEST_CASE("interval bumps see only the flagged real eigenvalues") {
    Spectrum sp;
    sp.eigenvalues = {cplx(0.1, 0.0), cplx(0.1, 0.5), cplx(0.1, -0.5)};
    sp.real_flags = {true, false, false};
    sp.source_dim = 3;
    TestFunction f = TestFunction::interval_bump(0.1, 0.3);
    CHECK(linear_statistic(f, sp) == doctest::Approx(1.0));  // only the real one counts
}

TEST_CASE("n_quarter normalization uses the half-dimension convention") {
    Spectrum sp;
    sp.eigenvalues = {cplx(0.0, 0.0)};
    sp.real_flags = {true};
    sp.source_dim = 32;
    TestFunction f = TestFunction::interval_bump(0.0, 0.3);
    double raw = linear_statistic(f, sp);
    CHECK(linear_statistic(f, sp, Normalization::n_quarter) ==
          doctest::Approx(raw / std::pow(16.0, 0.25)));
    CHECK(linear_statistic(f, sp, Normalization::n_quarter, false) ==
          doctest::Approx(raw / std::pow(32.0, 0.25)));
}

TEST_CASE("k-statistics: hand-checked examples") {
    CumulantReport r = k_statistics({1.0, 2.0, 3.0}, 1);
    // max_order only caps what is meaningful; orders up to 6 need more samples
    CHECK(r.k1 == doctest::Approx(2.0));
    CumulantReport r3 = k_statistics({1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0}, 3);
    CHECK(r3.k1 == doctest::Approx(2.0));
    CHECK(r3.k3 == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> v = {1.0, 2.0, 3.0};
    CumulantReport small = k_statistics(v, 1);
    CHECK(small.k2 == doctest::Approx(1.0));  // n/(n-1) * 2/3

    std::vector<double> constant(50, 3.7);
    CumulantReport c = k_statistics(constant, 4);
    CHECK(c.k2 == doctest::Approx(0.0));
    CHECK(c.k3 == doctest::Approx(0.0));
    CHECK(c.k4 == doctest::Approx(0.0));

    CHECK_THROWS(k_statistics({1.0, 2.0}, 4));
}

TEST_CASE("k-statistics on synthetic normals stay within 4 standard errors") {
    std::vector<double> x(100000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a, b;
        counter_gaussian_pair(2718, i, a, b);
        x[i] = a;
    }
    CumulantReport r = k_statistics(x);
    CHECK(std::abs(r.k2 - 1.0) < 4.0 * r.se2);
    CHECK(std::abs(r.k3) < 4.0 * r.se3);
    CHECK(std::abs(r.k4) < 4.0 * r.se4);
    // jackknife SEs agree with the asymptotic ones for the normal
    CHECK(r.se2 == doctest::Approx(std::sqrt(2.0 / x.size())).epsilon(0.1));
}

TEST_CASE("normality report: pass on normals, fail on exponentials, error when thin") {
    std::vector<double> normals(2000), expos(2000);
    for (std::size_t i = 0; i < normals.size(); ++i) {
        double a, b;
        counter_gaussian_pair(99, i, a, b);
        normals[i] = 2.0 * a;
        expos[i] = -std::log(counter_uniform(98, i));
    }
    NormalityCheck ok = normality_report(k_statistics(normals), 4.0, 0.15);
    CHECK(ok.pass());
    NormalityCheck bad = normality_report(k_statistics(expos), 1.0, 0.15);
    CHECK_FALSE(bad.pass_k3);  // k3(exp) = 2
    CHECK_THROWS(normality_report(k_statistics(std::vector<double>(100, 1.0), 2), 1.0));
}

TEST_CASE("predictors: zero function, quadratic scaling") {
    TestFunction f0 = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.25, 0.0);
    CHECK(predict_bulk_variance(f0) == 0.0);
    TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.25, 1.0);
    TestFunction f2 = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.25, 2.0);
    CHECK(predict_bulk_variance(f2) == doctest::Approx(4.0 * predict_bulk_variance(f)).epsilon(1e-12));

    TestFunction l = TestFunction::interval_bump(0.0, 0.4);
    TestFunction l2 = TestFunction::interval_bump(0.0, 0.4, 2.0);
    CHECK(predict_line_variance(l2) == doctest::Approx(4.0 * predict_line_variance(l)).epsilon(1e-12));

    TestFunction g = TestFunction::harmonic(1);
    TestFunction g2 = TestFunction::harmonic(1, 2.0);
    CHECK(predict_ginue_variance(g2).total() ==
          doctest::Approx(4.0 * predict_ginue_variance(g).total()).epsilon(1e-12));
    CHECK_THROWS(predict_bulk_variance(l));
    CHECK_THROWS(predict_line_variance(g));
}

TEST_CASE("bulk variance against an independent adaptive quadrature") {
    TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.25);
    double want = integrate_adaptive(
        [&](double x) {
            return integrate_adaptive(
                [&](double y) {
                    double fx, fy;
                    f.gradient(x, y, fx, fy);
                    return fx * fx + fy * fy;
                },
                0.25, 0.75, 1e-11);
        },
        -0.25, 0.25, 1e-10);
    want /= 4.0 * kPi;
    CHECK(predict_bulk_variance(f) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("line variance constant") {
    TestFunction f = TestFunction::interval_bump(0.05, 0.35);
    Quad1D q = gauss_legendre(200, -0.3, 0.4);
    double intf2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) intf2 += q.w[i] * f.eval1d(q.x[i]) * f.eval1d(q.x[i]);
    double c = (2.0 - std::sqrt(2.0)) / std::sqrt(kPi);
    CHECK(c == doctest::Approx(0.330495).epsilon(1e-5));
    CHECK(predict_line_variance(f) == doctest::Approx(c * intf2).epsilon(1e-9));
}

TEST_CASE("ginue variance anchors: Re z and Re z^2") {
    GinueVariance v1 = predict_ginue_variance(TestFunction::harmonic(1));
    CHECK(v1.sigma_a2 == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(v1.sigma_b2 == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(v1.total() == doctest::Approx(0.5).epsilon(1e-8));
    GinueVariance v2 = predict_ginue_variance(TestFunction::harmonic(2));
    CHECK(v2.sigma_a2 == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(v2.sigma_b2 == doctest::Approx(0.5).epsilon(1e-8));
    // compactly supported bump inside the open disc: no boundary component
    GinueVariance vb = predict_ginue_variance(TestFunction::disc_bump(cplx(0.1, 0.0), 0.4));
    CHECK(vb.sigma_b2 == 0.0);
    CHECK(vb.sigma_a2 > 0.0);
}

TEST_CASE("multinomial and the exact composition identities") {
    CHECK(multinomial(4, {2, 1, 1}) == 12);
    CHECK(multinomial(12, {12}) == 1);
    CHECK(multinomial(10, {3, 3, 4}) == multinomial(10, {4, 3, 3}));
    CHECK_THROWS(multinomial(5, {2, 2}));
    CHECK_THROWS(multinomial(5, {6, -1}));

    CHECK(identity_aN(1) == 1);
    for (int N = 2; N <= 12; ++N) CHECK(identity_aN(N) == 0);
    CHECK(identity_bN(2) == -2);
    for (int N = 3; N <= 12; ++N) CHECK(identity_bN(N) == 0);
}

TEST_CASE("costin-lebowitz: k = 1 is the kernel mean") {
    KernelContext ctx(16, KernelRegime::complex_complex);
    ctx.quad.pair_nodes = 40;
    TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.3);
    double c1 = costin_lebowitz_cumulant(ctx, f, 1);
    // independent diagonal quadrature of 2n Int f S(sz, sz)
    double s = std::sqrt(32.0);
    auto grid = tensor_grid(72, 72, -0.3, 0.3, 0.2, 0.8);
    double want = 0.0;
    for (const auto& nd : grid) {
        double fv = f.eval(nd.x, nd.y);
        if (fv == 0.0) continue;
        want += nd.w * fv * 32.0 * S_cc(ctx, s * cplx(nd.x, nd.y), s * cplx(nd.x, nd.y)).real();
    }
    CHECK(c1 == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("costin-lebowitz: k = 2 equals the S-part of the variance") {
    KernelContext ctx(16, KernelRegime::complex_complex);
    ctx.quad.pair_nodes = 48;
    TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.3);
    double c2 = costin_lebowitz_cumulant(ctx, f, 2);

    // independent route: 2n Int f^2 S - 4n^2 IInt f f S S' on a different grid
    int n = 16;
    double s = std::sqrt(2.0 * n);
    auto grid = tensor_grid(40, 40, -0.3, 0.3, 0.2, 0.8);
    double t1 = 0.0;
    std::vector<QuadNode2D> nodes;
    for (const auto& nd : grid) {
        double fv = f.eval(nd.x, nd.y);
        if (fv == 0.0) continue;
        nodes.push_back({nd.x, nd.y, nd.w * fv});
        cplx z = s * cplx(nd.x, nd.y);
        t1 += nd.w * fv * fv * 2.0 * n * S_cc(ctx, z, z).real();
    }
    double t2 = 0.0;
    for (const auto& a : nodes)
        for (const auto& b : nodes) {
            cplx za = s * cplx(a.x, a.y), zb = s * cplx(b.x, b.y);
            t2 += a.w * b.w * (S_cc(ctx, za, zb) * S_cc(ctx, zb, za)).real();
        }
    double want = t1 - 4.0 * n * n * t2;
    CHECK(c2 == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("costin-lebowitz: third cumulant is suppressed at moderate n") {
    KernelContext ctx(16, KernelRegime::complex_complex);
    ctx.quad.pair_nodes = 36;
    TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.3);
    double c2 = costin_lebowitz_cumulant(ctx, f, 2);
    double c3 = costin_lebowitz_cumulant(ctx, f, 3);
    CHECK(std::abs(c3) <= 0.2 * std::pow(c2, 1.5));
    CHECK_THROWS(costin_lebowitz_cumulant(ctx, f, 4));
    KernelContext rr(16, KernelRegime::real_real);
    CHECK_THROWS(costin_lebowitz_cumulant(rr, f, 2));
}

TEST_CASE("universality compare: identical specs give exactly zero differences") {
    EnsembleSpec a{AtomKind::complex_gaussian, 24, 5};
    TestFunction f = TestFunction::disc_bump(cplx(0.1, 0.3), 0.3);
    UniversalityReport rep = universality_compare(a, a, f, 64);
    CHECK(rep.dk2 == 0.0);
    CHECK(rep.dk3 == 0.0);
    CHECK(rep.dk4 == 0.0);
    CHECK(rep.ks == 0.0);

    EnsembleSpec wrong{AtomKind::complex_gaussian, 16, 5};
    CHECK_THROWS(universality_compare(a, wrong, f, 16));
}

TEST_CASE("universality compare: matched ensembles agree at desk scale") {
    EnsembleSpec a{AtomKind::complex_gaussian, 48, 11};
    EnsembleSpec b{AtomKind::matched_discrete_complex, 48, 12};
    TestFunction f = TestFunction::disc_bump(cplx(0.0, 0.4), 0.3);
    UniversalityReport rep = universality_compare(a, b, f, 600);
    CHECK(std::abs(rep.dk2) <= 4.0 * rep.se_dk2);
}

TEST_CASE("the cumulant-difference detector fires on a genuine variance mismatch") {
    // mismatched second moments emulated by scaling the statistic by sqrt(2)
    EnsembleSpec spec{AtomKind::complex_gaussian, 32, 21};
    TestFunction f = TestFunction::disc_bump(cplx(0.0, 0.4), 0.3);
    TestFunction f_scaled = TestFunction::disc_bump(cplx(0.0, 0.4), 0.3, std::sqrt(2.0));
    auto sa = mc_linear_statistics(spec, f, 800);
    auto sb = mc_linear_statistics(spec, f_scaled, 800);
    CumulantReport ra = k_statistics(sa), rb = k_statistics(sb);
    double d = std::abs(ra.k2 - rb.k2);
    double se = std::hypot(ra.se2, rb.se2);
    CHECK(d > 5.0 * se);
}

TEST_CASE("two-sample KS statistic basics") {
    std::vector<double> a, b, c;
    for (int i = 0; i < 500; ++i) {
        double x, y;
        counter_gaussian_pair(7, i, x, y);
        a.push_back(x);
        b.push_back(x);
        c.push_back(x + 3.0);
    }
    CHECK(ks_two_sample(a, b) == doctest::Approx(0.0));
    CHECK(ks_two_sample(a, c) > 0.8);
}

TEST_CASE("monte carlo batches are independent of the execution policy") {
    EnsembleSpec spec{AtomKind::real_gaussian, 16, 3};
    TestFunction f = TestFunction::interval_bump(0.0, 0.4);
    auto par = mc_linear_statistics(spec, f, 40, Normalization::none, Exec::openmp);
    auto ser = mc_linear_statistics(spec, f, 40, Normalization::none, Exec::serial);
    CHECK(par == ser);
}

TEST_CASE("variance experiment wires kernel, prediction and MC together") {
    TestFunction f = TestFunction::interval_bump(0.0, 0.45);
    VarianceTable tab = variance_experiment(KernelRegime::real_real, 32, f, 400, 9);
    CHECK(tab.kernel > 0.0);
    CHECK(tab.predicted > 0.0);
    CHECK(std::abs(tab.kernel - tab.mc) <= 4.0 * tab.mc_se);
}
