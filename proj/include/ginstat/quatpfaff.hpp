#pragma once

#include <array>
#include <vector>

#include "ginstat/linalg.hpp"

namespace ginstat {

/// Complexified quaternion: complex coefficients over the basis {1, e1, e2, e3},
/// e1^2 = e2^2 = e3^2 = e1 e2 e3 = -1.
struct Quaternion {
    std::array<cplx, 4> c{cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)};

    Quaternion() = default;
    Quaternion(cplx q0, cplx q1, cplx q2, cplx q3) : c{q0, q1, q2, q3} {}
    static Quaternion scalar(cplx s) { return {s, 0.0, 0.0, 0.0}; }
    static Quaternion unit(int k) {
        Quaternion q;
        q.c[k] = 1.0;
        return q;
    }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        Quaternion r;
        for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        Quaternion r;
        for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Quaternion operator*(cplx s, const Quaternion& a) {
        Quaternion r;
        for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : c) m = std::max(m, std::abs(z));
        return m;
    }
};

Quaternion quat_mul(const Quaternion& a, const Quaternion& b);

/// Matrix-form conjugate: phi(q) = [[a,b],[c,d]] maps to [[d,-b],[-c,a]].
/// In coefficients this is (q0, -q1, -q2, -q3); an involution.
Quaternion quat_dual(const Quaternion& q);

/// 2x2 complex representation of a single quaternion.
std::array<cplx, 4> phi_scalar(const Quaternion& q);  // row-major 2x2

struct QuaternionMatrix {
    int n = 0;
    std::vector<Quaternion> q;

    QuaternionMatrix() = default;
    explicit QuaternionMatrix(int dim) : n(dim), q(std::size_t(dim) * dim) {}
    Quaternion& at(int i, int j) { return q[std::size_t(i) * n + j]; }
    const Quaternion& at(int i, int j) const { return q[std::size_t(i) * n + j]; }

    /// q_ij == dual(q_ji) for all i, j within tol.
    bool is_self_dual(double tol = 1e-12) const;

    static QuaternionMatrix identity(int dim) {
        QuaternionMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = Quaternion::scalar(1.0);
        return m;
    }
};

/// Blockwise 2x2 embedding of an n x n quaternion matrix into a 2n x 2n complex one.
ComplexMatrix phi(const QuaternionMatrix& Q);

/// Pfaffian of a skew-symmetric complex matrix of even dimension.
/// Parlett-Reid tridiagonalization with pivoting; checks A^T = -A within skew_tol.
cplx pfaffian(const ComplexMatrix& A, double skew_tol = 1e-12);

/// Direct sum over perfect matchings, dims <= 6 (test/cross-check route).
cplx pfaffian_combinatorial(const ComplexMatrix& A);

/// Moore-Dyson determinant by the cycle expansion over S_n (largest entry
/// leads each cycle, cycles ordered by decreasing leaders). n <= 7.
/// Requires self-dual input; the non-scalar part of the expansion must cancel
/// below `scalar_tol`, which is asserted.
cplx moore_dyson_det(const QuaternionMatrix& Q, double scalar_tol = 1e-10);

/// Full quaternion value of the cycle expansion (no self-duality assumption).
Quaternion moore_dyson_expansion(const QuaternionMatrix& Q);

/// det(Q) = Pf(Z phi(Q)) for self-dual Q (Mehta). Polynomial cost, any n.
cplx det_via_pfaffian(const QuaternionMatrix& Q);

}  // namespace ginstat
