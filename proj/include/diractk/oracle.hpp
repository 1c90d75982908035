#pragma once

#include <functional>
#include <vector>

#include "diractk/grid.hpp"
#include "diractk/mat2.hpp"
#include "diractk/potential.hpp"

namespace dtk {

// High-accuracy RK4 reference for B Y' + Q Y = lambda Y from Y(0) = ic,
// restricted to the grid nodes. `steps` must keep |lambda| * h below 0.1.
SampledFn<Vec2> ode_reference(const PotentialSpec& pot, double lambda, Vec2 ic, const Grid& grid,
                              int steps);

// Step count for which the RK4 global error stays near 1e-10.
int ode_reference_steps(double lambda, double b, int grid_intervals);

// Triangular mesh over the characteristic-coordinate domain
// {(xi,eta): 0 <= xi < b, 0 <= eta < b - xi} carrying a matrix field H.
// Nodes (i,j) with i + j <= L, spacing h = b / L.
struct TriMesh {
    double b;
    int L;
    std::vector<Mat2> field; // row-major over the (L+1)x(L+1) square, masked by i+j<=L

    TriMesh(double endpoint, int levels)
        : b(endpoint), L(levels),
          field(static_cast<std::size_t>((levels + 1) * (levels + 1))) {
        if (levels < 4)
            throw DomainViolation("mesh too coarse");
    }
    double h() const { return b / L; }
    Mat2& at(int i, int j) { return field[static_cast<std::size_t>(i * (L + 1) + j)]; }
    const Mat2& at(int i, int j) const { return field[static_cast<std::size_t>(i * (L + 1) + j)]; }

    // kernel value K(x,t) = H((x+t)/2, (x-t)/2), bilinear between mesh nodes
    Mat2 kernel(double x, double t) const;
    double max_norm() const;
};

struct SuccessiveStats {
    int iterations = 0;
    double last_increment = 0.0;
    std::vector<double> increment_norms; // max |H_n| per iteration
};

// Solves H = H0 + V[H] for the kernel integral equation equivalent to the
// Goursat problem with data E1 (on t=x, anticommuting with B) and E2 (on
// t=-x, commuting with B) by successive approximations; H0(xi,eta) =
// -B E1(xi)/2 - B E2(eta)/2. With E1 = -Q, E2 = 0 the sum recovers the
// transmutation kernel.
TriMesh goursat_successive(const PotentialSpec& pot, const std::function<Mat2(double)>& E1,
                           const std::function<Mat2(double)>& E2, TriMesh mesh, int iterations,
                           SuccessiveStats* stats = nullptr);

// Same machinery for the Cauchy problem with data K(b,t) = F(t).
TriMesh cauchy_successive(const PotentialSpec& pot, const std::function<Mat2(double)>& F,
                          TriMesh mesh, int iterations, SuccessiveStats* stats = nullptr);

// Closed-form diagonal kernels of the q = tanh(x) Lorentz-scalar system.
// Bessel power series plus one adaptive quadrature; valid on |t| <= x <= 2.
struct TanhKernels {
    double k_cosh;
    double k_sech;
};
TanhKernels exact_tanh_kernels(double x, double t);

double exact_k_cosh(double x, double t);
double exact_k_sech(double x, double t);

} // namespace dtk
