#pragma once

#include <functional>
#include <vector>

namespace ginstat {

struct Quad1D {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre nodes/weights on (-1, 1), Newton iteration on P_n.
Quad1D gauss_legendre(int n);

/// Same rule mapped to (a, b).
Quad1D gauss_legendre(int n, double a, double b);

struct QuadNode2D {
    double x, y, w;
};

/// Tensor Gauss-Legendre grid over the rectangle [ax,bx] x [ay,by].
std::vector<QuadNode2D> tensor_grid(int nx, int ny, double ax, double bx, double ay, double by);

/// Adaptive 1D integration: nested Gauss-Legendre pair per interval,
/// bisecting until the rule difference is below tol (absolute + relative).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-9, int max_depth = 30);

}  // namespace ginstat
