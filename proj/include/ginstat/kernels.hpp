#pragma once

#include <vector>

#include "ginstat/parallel.hpp"
#include "ginstat/scalar.hpp"
#include "ginstat/special.hpp"
#include "ginstat/test_functions.hpp"

namespace ginstat {

enum class KernelRegime { complex_complex, real_real };

struct KernelQuadrature {
    int diag_nodes = 96;   // per axis, one-point term
    int pair_nodes = 48;   // per axis, two-point term
    int inner_nodes = 64;  // inner integral of the real/real I entry
};

/// Evaluation context for the 2n-dimensional real-ensemble correlation kernels.
struct KernelContext {
    int half_dim = 2;  // n; the matrix dimension is 2n
    KernelRegime regime = KernelRegime::complex_complex;
    bool s2n_include_j0 = true;  // kernel sum from j = 0; false reproduces the j >= 1 print
    KernelQuadrature quad;
    Exec exec = Exec::openmp;

    KernelContext(int n, KernelRegime r) : half_dim(n), regime(r) {
        if (n < 2) throw std::invalid_argument("KernelContext: half_dim must be >= 2");
    }
};

/// s_{2n}(z) = e^{-z} sum z^j/j! up to j = 2n-2 (log-scale evaluation).
LogScaled s2n_scaled(const KernelContext& ctx, cplx z);
cplx s2n(const KernelContext& ctx, cplx z);

/// G(z,w) = sqrt(erfc(sqrt2 Im z) erfc(sqrt2 Im w)); log form stays finite for
/// Im z up to ~1e3 where the plain value underflows.
double kernel_G(cplx z, cplx w);
double kernel_G_log(cplx z, cplx w);

// complex/complex kernel entries (arguments on the sqrt(2n) scale)
LogScaled S_cc_scaled(const KernelContext& ctx, cplx z, cplx w);
LogScaled D_cc_scaled(const KernelContext& ctx, cplx z, cplx w);
LogScaled I_cc_scaled(const KernelContext& ctx, cplx z, cplx w);
cplx S_cc(const KernelContext& ctx, cplx z, cplx w);
cplx D_cc(const KernelContext& ctx, cplx z, cplx w);
cplx I_cc(const KernelContext& ctx, cplx z, cplx w);

// real/real entries
double S_rr(const KernelContext& ctx, double x, double y);
double D_rr(const KernelContext& ctx, double x, double y);
double I_rr(const KernelContext& ctx, double x, double y);

/// log of the incomplete-gamma correction term inside S_rr (it underflows the
/// convolution part exponentially fast in the bulk; the log form stays
/// observable). -inf when the term is exactly zero.
double S_rr_correction_log(const KernelContext& ctx, double x, double y);

/// 2x2 block of the matrix kernel at a point pair.
struct KernelBlock {
    cplx D, S_xy, S_yx, I;
};
KernelBlock kernel_block(const KernelContext& ctx, cplx x, cplx y);

/// k-point correlation: Pfaffian of the assembled 2k x 2k block matrix.
/// k <= 6. Throws if the assembly is not skew beyond 1e-10.
double correlation(const KernelContext& ctx, const std::vector<cplx>& points);

/// The exact finite-n variance quadrature of the linear statistic.
/// complex: 2n Int f^2 S - 4n^2 IInt f f (D I + S S');
/// real:    sqrt(2n) Int f^2 S - 2n IInt f f (D I + S S'),
/// with arguments on the sqrt(2n) scale and f on the circular-law scale.
double finite_n_variance(const KernelContext& ctx, const TestFunction& f);

/// Int sqrt(2n) S_rr(sqrt(2n) x, sqrt(2n) x) dx over a window wide enough to
/// capture the edge tails: the expected number of real eigenvalues at dim 2n.
double expected_real_count(int n);

}  // namespace ginstat
