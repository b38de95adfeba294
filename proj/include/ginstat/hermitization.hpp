#pragma once

#include <vector>

#include "ginstat/linalg.hpp"
#include "ginstat/test_functions.hpp"

namespace ginstat {

/// 2n x 2n Hermitian block matrix [[0, (M - z)], [(M - z)^*, 0]] / sqrt(n).
/// Exactly Hermitian by construction; spectrum symmetric about 0.
struct HermitizedMatrix {
    int base_dim = 0;
    cplx z{};
    ComplexMatrix W;
};

HermitizedMatrix hermitize(const ComplexMatrix& M, cplx z);

/// Hermitization of a circular-law-normalized sample without the extra
/// 1/sqrt(n): blocks [[0, M - z], [(M - z)^*, 0]]. Its positive spectrum are
/// the singular values of (M - z), the objects the classical positions track.
HermitizedMatrix hermitize_unit_scale(const ComplexMatrix& M, cplx z);

/// (1/n) tr (W - zeta)^{-1} for Im zeta > 0, computed from the Hermitian
/// spectrum. The 1/n normalization against the 2n x 2n matrix is kept as
/// written; pass normalize_by_2n for the 1/(2n) variant.
cplx stieltjes(const HermitizedMatrix& H, cplx zeta, bool normalize_by_2n = false);
cplx stieltjes_from_spectrum(const std::vector<double>& mu, int base_dim, cplx zeta,
                             bool normalize_by_2n = false);

enum class GirkoPath { spectrum, determinant };

struct GirkoOptions {
    int panels = 48;          // composite panels per axis
    int nodes_per_panel = 8;  // Gauss-Legendre order within each panel
    GirkoPath path = GirkoPath::spectrum;
};

/// (1/2pi) Int Delta f(z) log|prod_j (z - lambda_j)| d^2 z over the support of
/// f, which reproduces sum_j f(lambda_j) exactly in the limit of the
/// quadrature. The spectrum path sums log|z - lambda_j|; the determinant path
/// evaluates log|det(M - z)| by LU at every node.
double girko_reconstruct(const TestFunction& f, const ComplexMatrix& M, const GirkoOptions& opt = {});

/// Solution of m^{-1} = -w(1+m) + |z|^2 (1+m)^{-1} with Im m > 0 (the
/// Stieltjes branch). Throws if no root with positive imaginary part exists.
cplx solve_mc(cplx w, cplx z);

/// Symmetrized-spectrum version: the root with Im m > 0 of
/// m^3 + 2w m^2 + (w^2 - |z|^2 + 1) m + w = 0, i.e. m(w) = w * m_c(w^2, z)
/// under the change of variables lambda = x^2. This is the Stieltjes
/// transform of the limiting (symmetric) spectral density of the
/// unit-scale hermitization.
cplx solve_mc_symmetrized(cplx w, cplx z);

/// Symmetric limiting density of the hermitization spectrum, recovered by
/// Stieltjes inversion of solve_mc_symmetrized at w = x + i*eta, clipped at 0.
double classical_density(double x, cplx z, double eta = 1e-6);

/// eta -> 0+ limit of the inversion. At real w the cubic has real
/// coefficients, so off-support all roots are real and the density is exactly
/// zero; this keeps the cumulative integral saturated at the spectral edge.
double classical_density_limit(double x, cplx z);

/// Classical positions gamma_j solving Int_0^{gamma_j} p_c = j/N for
/// j = 1..floor(N/2) (the positive half carries mass 1/2). Bisection on the
/// cumulative integral to 1e-8 in CDF value; strictly increasing.
std::vector<double> classical_positions(int N, cplx z);

/// Density/positions table for export.
struct ClassicalProfile {
    cplx z{};
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<double> positions;
};

ClassicalProfile classical_profile(cplx z, int grid_points, int N);

struct RigidityResult {
    double log_sum = 0.0;   // sum_j (log lambda_j - log gamma_j), rank-paired
    int excluded = 0;       // zero/negative eigenvalues skipped
};

/// Rigidity diagnostic for a circular-law-normalized sample M at bulk z
/// (|z| <= 0.8): positive spectrum of the unit-scale hermitization against
/// the classical positions.
RigidityResult rigidity_diagnostic(const ComplexMatrix& M, cplx z);

}  // namespace ginstat
