#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ginstat/linalg.hpp"
#include "ginstat/rng.hpp"

using namespace ginstat;

namespace {

uint64_t g_ctr = 0;
cplx cgauss() {
    double a, b;
    counter_gaussian_pair(0xABCDEF, g_ctr++, a, b);
    return cplx(a, b);
}
double rgauss() {
    double a, b;
    counter_gaussian_pair(0xABCDEF, g_ctr++, a, b);
    return a;
}

std::vector<cplx> sorted_by_parts(std::vector<cplx> v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

}  // namespace

TEST_CASE("diagonal and companion examples") {
    ComplexMatrix d(2, 2);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 3.0;
    auto sp = eigenvalues_complex(d);
    auto ev = sorted_by_parts(sp.eigenvalues);
    CHECK(std::abs(ev[0] - cplx(2.0)) < 1e-13);
    CHECK(std::abs(ev[1] - cplx(3.0)) < 1e-13);

    ComplexMatrix c(2, 2);
    c.at(0, 1) = -2.0;
    c.at(1, 0) = 1.0;
    c.at(1, 1) = 3.0;
    ev = sorted_by_parts(eigenvalues_complex(c).eigenvalues);
    CHECK(std::abs(ev[0] - cplx(1.0)) < 1e-10);
    CHECK(std::abs(ev[1] - cplx(2.0)) < 1e-10);
}

TEST_CASE("non-square input is rejected") {
    ComplexMatrix r(2, 3);
    CHECK_THROWS(eigenvalues_complex(r));
    CHECK_THROWS(lu_logabsdet(r));
}

TEST_CASE("non-finite entries are rejected") {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS(eigenvalues_complex(m));
}

TEST_CASE("random 8x8: trace and determinant invariants against LU") {
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix m(8, 8);
        for (auto& z : m.entries) z = cgauss();
        auto sp = eigenvalues_complex(m);
        cplx sum = 0.0, prod = 1.0;
        for (cplx l : sp.eigenvalues) {
            sum += l;
            prod *= l;
        }
        CHECK(std::abs(sum - m.trace()) < 1e-9);
        cplx det = lu_det(m);
        CHECK(std::abs(prod - det) < 1e-8 * std::abs(det));
    }
}

TEST_CASE("rotation matrix gives an exact conjugate pair, no real flags") {
    RealMatrix r(2);
    r.at(0, 1) = 1.0;
    r.at(1, 0) = -1.0;
    auto sp = eigenvalues_real_schur(r);
    CHECK(sp.real_count() == 0);
    auto ev = sorted_by_parts(sp.eigenvalues);
    CHECK(ev[0] == std::conj(ev[1]));
    CHECK(std::abs(ev[1] - cplx(0.0, 1.0)) < 1e-14);
}

TEST_CASE("real diagonal gives flagged real eigenvalues") {
    RealMatrix r(2);
    r.at(0, 0) = 1.0;
    r.at(1, 1) = 2.0;
    auto sp = eigenvalues_real_schur(r);
    CHECK(sp.real_count() == 2);
    for (cplx z : sp.eigenvalues) CHECK(z.imag() == 0.0);
}

TEST_CASE("sampled 64-dim real matrix: exact conjugation closure and parity") {
    RealMatrix m(64);
    for (auto& v : m.entries) v = rgauss() / 8.0;
    auto sp = eigenvalues_real_schur(m);
    CHECK(sp.real_count() % 2 == 0);
    std::vector<cplx> up, down;
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
        if (sp.real_flags[i]) {
            CHECK(sp.eigenvalues[i].imag() == 0.0);  // exactly real, no round-off
        } else {
            (sp.eigenvalues[i].imag() > 0 ? up : down).push_back(sp.eigenvalues[i]);
        }
    }
    REQUIRE(up.size() == down.size());
    auto u = sorted_by_parts(up), d = sorted_by_parts(down);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == std::conj(d[i]));  // exact pairs
}

TEST_CASE("log|det| via LU") {
    CHECK(lu_logabsdet(ComplexMatrix::identity(7)) == 0.0);
    ComplexMatrix d(2, 2);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 3.0;
    CHECK(lu_logabsdet(d) == doctest::Approx(std::log(6.0)).epsilon(1e-14));

    ComplexMatrix m(6, 6);
    for (auto& z : m.entries) z = cgauss();
    double via_eig = 0.0;
    for (cplx l : eigenvalues_complex(m).eigenvalues) via_eig += std::log(std::abs(l));
    CHECK(lu_logabsdet(m) == doctest::Approx(via_eig).epsilon(1e-8));

    ComplexMatrix sing(3, 3);
    sing.at(0, 1) = 1.0;  // nilpotent
    CHECK(lu_logabsdet(sing) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("hermitian eigenvalues: examples, sorting, SVD oracle") {
    ComplexMatrix d(2, 2);
    d.at(0, 0) = -1.0;
    d.at(1, 1) = 5.0;
    auto ev = eigenvalues_hermitian(d);
    CHECK(ev[0] == -1.0);
    CHECK(ev[1] == 5.0);

    ComplexMatrix x(2, 2);
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    ev = eigenvalues_hermitian(x);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix bad(2, 2);
    bad.at(0, 1) = 1.0;
    bad.at(1, 0) = 2.0;
    CHECK_THROWS(eigenvalues_hermitian(bad));

    // hermitization of a GinUE sample at z = 0: spectrum = {+-sigma_i(M/sqrt(n))}
    int n = 8;
    ComplexMatrix m(n, n);
    for (auto& z : m.entries) z = cgauss() / std::sqrt(2.0 * n);
    ComplexMatrix w(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            w.at(i, n + j) = m.at(i, j);
            w.at(n + j, i) = std::conj(m.at(i, j));
        }
    auto mu = eigenvalues_hermitian(w);
    CHECK(std::is_sorted(mu.begin(), mu.end()));
    // oracle: singular values from the Hermitian eigenvalues of M^* M
    ComplexMatrix mm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) acc += std::conj(m.at(k, i)) * m.at(k, j);
            mm.at(i, j) = acc;
        }
    auto s2 = eigenvalues_hermitian(mm);
    for (int i = 0; i < n; ++i) {
        double sv = std::sqrt(std::max(0.0, s2[i]));
        CHECK(mu[n + i] == doctest::Approx(sv).epsilon(1e-9));
        CHECK(mu[n - 1 - i] == doctest::Approx(-sv).epsilon(1e-9));
    }
}

TEST_CASE("spectrum records the trace residual") {
    ComplexMatrix m(16, 16);
    for (auto& z : m.entries) z = cgauss();
    auto sp = eigenvalues_complex(m);
    CHECK(sp.trace_residual < 1e-12);
    CHECK(sp.source_dim == 16);
}

TEST_CASE("larger randoms keep the invariants") {
    ComplexMatrix m(48, 48);
    for (auto& z : m.entries) z = cgauss() / 7.0;
    auto sp = eigenvalues_complex(m);
    cplx prod = 1.0;
    for (cplx l : sp.eigenvalues) prod *= l;
    cplx det = lu_det(m);
    CHECK(std::abs(prod - det) < 1e-7 * std::abs(det));
}
