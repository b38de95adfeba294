#include "ginstat/quatpfaff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ginstat {

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
    // e1 e2 = e3, e2 e3 = e1, e3 e1 = e2; anti-commuting units
    Quaternion r;
    r.c[0] = a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2];
    r.c[2] = a.c[0] * b.c[2] + a.c[2] * b.c[0] + a.c[3] * b.c[1] - a.c[1] * b.c[3];
    r.c[3] = a.c[0] * b.c[3] + a.c[3] * b.c[0] + a.c[1] * b.c[2] - a.c[2] * b.c[1];
    return r;
}

Quaternion quat_dual(const Quaternion& q) { return {q.c[0], -q.c[1], -q.c[2], -q.c[3]}; }

std::array<cplx, 4> phi_scalar(const Quaternion& q) {
    const cplx i(0.0, 1.0);
    // q0*I + q1*[[0,i],[i,0]] + q2*[[0,-1],[1,0]] + q3*[[i,0],[0,-i]]
    return {q.c[0] + i * q.c[3], -q.c[2] + i * q.c[1], q.c[2] + i * q.c[1], q.c[0] - i * q.c[3]};
}

bool QuaternionMatrix::is_self_dual(double tol) const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Quaternion d = at(i, j) - quat_dual(at(j, i));
            if (d.max_abs() > tol) return false;
        }
    return true;
}

ComplexMatrix phi(const QuaternionMatrix& Q) {
    ComplexMatrix m(2 * Q.n, 2 * Q.n);
    for (int i = 0; i < Q.n; ++i)
        for (int j = 0; j < Q.n; ++j) {
            std::array<cplx, 4> b = phi_scalar(Q.at(i, j));
            m.at(2 * i, 2 * j) = b[0];
            m.at(2 * i, 2 * j + 1) = b[1];
            m.at(2 * i + 1, 2 * j) = b[2];
            m.at(2 * i + 1, 2 * j + 1) = b[3];
        }
    return m;
}

namespace {

void check_skew(const ComplexMatrix& a, double tol) {
    if (!a.square() || a.n_rows % 2 != 0)
        throw std::invalid_argument("pfaffian: need a square matrix of even dimension");
    double scale = 0.0;
    for (const cplx& z : a.entries) scale = std::max(scale, std::abs(z));
    double lim = tol * std::max(1.0, scale);
    for (int i = 0; i < a.n_rows; ++i)
        for (int j = 0; j <= i; ++j)
            if (std::abs(a.at(i, j) + a.at(j, i)) > lim)
                throw std::invalid_argument("pfaffian: matrix is not skew-symmetric within tolerance");
}

}  // namespace

cplx pfaffian(const ComplexMatrix& A, double skew_tol) {
    check_skew(A, skew_tol);
    ComplexMatrix a = A;
    int n = a.n_rows;
    cplx pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest entry in column k below the diagonal
        int kp = k + 1;
        double best = std::abs(a.at(k + 1, k));
        for (int i = k + 2; i < n; ++i) {
            double v = std::abs(a.at(i, k));
            if (v > best) {
                best = v;
                kp = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (kp != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k + 1, j), a.at(kp, j));
            for (int i = 0; i < n; ++i) std::swap(a.at(i, k + 1), a.at(i, kp));
            pf = -pf;
        }
        pf *= a.at(k, k + 1);
        if (k + 2 >= n) break;
        cplx inv = 1.0 / a.at(k + 1, k);
        for (int i = k + 2; i < n; ++i) {
            cplx mu = -a.at(i, k) * inv;
            if (mu == cplx(0.0)) continue;
            for (int j = k; j < n; ++j) a.at(i, j) += mu * a.at(k + 1, j);
            for (int r = k; r < n; ++r) a.at(r, i) += mu * a.at(r, k + 1);
        }
    }
    return pf;
}

cplx pfaffian_combinatorial(const ComplexMatrix& A) {
    check_skew(A, 1e-12);
    int n = A.n_rows;
    if (n > 6) throw std::invalid_argument("pfaffian_combinatorial: dimension must be <= 6");
    std::vector<int> live(n);
    std::iota(live.begin(), live.end(), 0);

    std::function<cplx(std::vector<int>&)> rec = [&](std::vector<int>& idx) -> cplx {
        if (idx.empty()) return 1.0;
        cplx acc = 0.0;
        int i0 = idx[0];
        double sign = 1.0;
        for (std::size_t k = 1; k < idx.size(); ++k) {
            std::vector<int> rest;
            rest.reserve(idx.size() - 2);
            for (std::size_t m = 1; m < idx.size(); ++m)
                if (m != k) rest.push_back(idx[m]);
            acc += sign * A.at(i0, idx[k]) * rec(rest);
            sign = -sign;
        }
        return acc;
    };
    return rec(live);
}

Quaternion moore_dyson_expansion(const QuaternionMatrix& Q) {
    int n = Q.n;
    if (n > 7) throw std::invalid_argument("moore_dyson: cycle expansion limited to n <= 7");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Quaternion total;
    do {
        // cycle decomposition, each cycle led by its largest element
        std::vector<bool> seen(n, false);
        std::vector<std::pair<int, std::vector<int>>> cycles;  // (leader, path from leader)
        int ncyc = 0;
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            std::vector<int> cyc;
            int cur = s;
            int leader = s;
            do {
                seen[cur] = true;
                cyc.push_back(cur);
                if (cur > leader) leader = cur;
                cur = perm[cur];
            } while (cur != s);
            // rotate so the leader comes first
            auto it = std::find(cyc.begin(), cyc.end(), leader);
            std::rotate(cyc.begin(), it, cyc.end());
            cycles.emplace_back(leader, cyc);
            ++ncyc;
        }
        std::sort(cycles.begin(), cycles.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        double sign = ((n - ncyc) % 2 == 0) ? 1.0 : -1.0;
        Quaternion prod = Quaternion::scalar(sign);
        for (const auto& [leader, cyc] : cycles) {
            for (std::size_t m = 0; m < cyc.size(); ++m) {
                int from = cyc[m];
                int to = cyc[(m + 1) % cyc.size()];
                prod = quat_mul(prod, Q.at(from, to));
            }
        }
        total = total + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

cplx moore_dyson_det(const QuaternionMatrix& Q, double scalar_tol) {
    if (!Q.is_self_dual()) throw std::invalid_argument("moore_dyson_det: matrix is not self-dual");
    Quaternion v = moore_dyson_expansion(Q);
    double resid = std::max({std::abs(v.c[1]), std::abs(v.c[2]), std::abs(v.c[3])});
    double scale = std::max(1.0, std::abs(v.c[0]));
    if (resid > scalar_tol * scale)
        throw std::runtime_error("moore_dyson_det: non-scalar part failed to cancel");
    return v.c[0];
}

cplx det_via_pfaffian(const QuaternionMatrix& Q) {
    if (!Q.is_self_dual()) throw std::invalid_argument("det_via_pfaffian: matrix is not self-dual");
    ComplexMatrix p = phi(Q);
    int n2 = p.n_rows;
    ComplexMatrix zp(n2, n2);
    // Z has blocks [[0,1],[-1,0]]: (Z p)(2i,:) = p(2i+1,:), (Z p)(2i+1,:) = -p(2i,:)
    for (int i = 0; i < n2 / 2; ++i)
        for (int j = 0; j < n2; ++j) {
            zp.at(2 * i, j) = p.at(2 * i + 1, j);
            zp.at(2 * i + 1, j) = -p.at(2 * i, j);
        }
    return pfaffian(zp, 1e-12);
}

}  // namespace ginstat
