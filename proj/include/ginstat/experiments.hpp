#pragma once

#include <cstdint>
#include <vector>

#include "ginstat/cumulants.hpp"
#include "ginstat/ensembles.hpp"
#include "ginstat/kernels.hpp"
#include "ginstat/test_functions.hpp"

namespace ginstat {

enum class Normalization { none, n_quarter };

/// sum_j f(lambda_j). Interval bumps sum over the real-flagged eigenvalues
/// only (the real-line statistic); 2D families over the whole spectrum.
/// n_quarter divides by (dim/2)^{1/4}; pass half_dim_convention = false for
/// the dim^{1/4} variant.
double linear_statistic(const TestFunction& f, const Spectrum& sp,
                        Normalization norm = Normalization::none,
                        bool half_dim_convention = true);

/// Spectrum of sample `index` of the ensemble: real Schur for real atom
/// kinds (exact real flags), complex QR otherwise.
Spectrum sample_spectrum(const EnsembleSpec& spec, uint64_t index);

/// Per-sample linear statistics, parallel over sample index with the fixed
/// per-index seeds; result independent of the worker count.
std::vector<double> mc_linear_statistics(const EnsembleSpec& spec, const TestFunction& f,
                                         std::size_t count,
                                         Normalization norm = Normalization::none,
                                         Exec exec = Exec::openmp);

struct UniversalityReport {
    CumulantReport a, b;
    double dk2 = 0, dk3 = 0, dk4 = 0;
    double se_dk2 = 0, se_dk3 = 0, se_dk4 = 0;
    double ks = 0;
};

/// Runs both Monte Carlo batches (shared sample count) and compares the
/// centered statistics: cumulant differences with combined standard errors
/// plus a two-sample Kolmogorov-Smirnov statistic.
UniversalityReport universality_compare(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b,
                                        const TestFunction& f, std::size_t count,
                                        Exec exec = Exec::openmp);

/// Mean real-eigenvalue count over `count` samples (exact real-Schur flags).
double mc_mean_real_count(const EnsembleSpec& spec, std::size_t count, Exec exec = Exec::openmp);

/// sup_r |empirical radial CDF - r^2| over the pooled spectra of `count`
/// samples: the circular-law sanity statistic.
double circular_law_radial_sup(const EnsembleSpec& spec, std::size_t count,
                               Exec exec = Exec::openmp);

struct VarianceTable {
    double kernel = 0;     // finite-n quadrature
    double predicted = 0;  // limiting formula at this dimension
    double mc = 0;
    double mc_se = 0;
};

/// Finite-n kernel variance vs the limiting prediction vs Monte Carlo.
VarianceTable variance_experiment(KernelRegime regime, int dim, const TestFunction& f,
                                  std::size_t count, uint64_t seed, Exec exec = Exec::openmp);

}  // namespace ginstat
