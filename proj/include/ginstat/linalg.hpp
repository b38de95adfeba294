#pragma once

#include <stdexcept>
#include <vector>

#include "ginstat/scalar.hpp"

namespace ginstat {

/// Dense complex matrix, row-major.
struct ComplexMatrix {
    int n_rows = 0, n_cols = 0;
    std::vector<cplx> entries;

    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : n_rows(rows), n_cols(cols), entries(std::size_t(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("ComplexMatrix: dims must be positive");
    }

    cplx& at(int i, int j) { return entries[std::size_t(i) * n_cols + j]; }
    const cplx& at(int i, int j) const { return entries[std::size_t(i) * n_cols + j]; }
    bool square() const { return n_rows == n_cols; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < std::min(n_rows, n_cols); ++i) t += at(i, i);
        return t;
    }

    /// Every entry finite; call after filling in raw data.
    void check_finite() const {
        for (const cplx& z : entries)
            if (!is_finite(z)) throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
};

/// Dense real square matrix, row-major.
struct RealMatrix {
    int n = 0;
    std::vector<double> entries;

    RealMatrix() = default;
    explicit RealMatrix(int dim) : n(dim), entries(std::size_t(dim) * dim) {
        if (dim <= 0) throw std::invalid_argument("RealMatrix: dim must be positive");
    }

    double& at(int i, int j) { return entries[std::size_t(i) * n + j]; }
    const double& at(int i, int j) const { return entries[std::size_t(i) * n + j]; }

    ComplexMatrix to_complex() const {
        ComplexMatrix m(n, n);
        for (std::size_t k = 0; k < entries.size(); ++k) m.entries[k] = entries[k];
        return m;
    }
};

/// Eigenvalue multiset of a square matrix. real_flags marks eigenvalues that
/// came out of 1x1 blocks of a real Schur form (exactly real, no round-off).
struct Spectrum {
    std::vector<cplx> eigenvalues;
    std::vector<bool> real_flags;
    int source_dim = 0;
    double trace_residual = 0.0;  // |sum(eig) - trace| / max(1, |trace|), recorded at construction

    int real_count() const {
        int c = 0;
        for (bool b : real_flags) c += b ? 1 : 0;
        return c;
    }
};

/// All eigenvalues of a general complex matrix: balancing, Householder
/// Hessenberg reduction, implicitly shifted QR. Throws on non-square input or
/// convergence failure (40 sweeps per eigenvalue).
Spectrum eigenvalues_complex(const ComplexMatrix& M);

/// Real Schur form eigenvalues via Francis double-shift QR. 1x1 blocks give
/// exactly real eigenvalues (flagged), 2x2 blocks give exact conjugate pairs.
Spectrum eigenvalues_real_schur(const RealMatrix& M);

/// log|det M| from partially pivoted LU; -inf for exactly singular input.
double lu_logabsdet(const ComplexMatrix& M);

/// det M from the same LU (test oracle for Pfaffian and spectrum identities).
cplx lu_det(const ComplexMatrix& M);

/// Eigenvalues of a Hermitian matrix, ascending. Householder tridiagonalization
/// plus implicit symmetric QL. Input must be Hermitian within `tol` entrywise.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& H, double tol = 1e-12);

}  // namespace ginstat
