#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diractk/wavepoly.hpp"

namespace dtk {

// Normal equations of the trace-matching least squares: Hermitian Gram
// matrix with 2x2 blocks int conj(N_i)^T N_j dx and the two columns of
// -1/2 int conj(N_i)^T Q dx as right-hand sides.
struct NormalSystem {
    int order;
    std::vector<cplx> A;      // dense, dim x dim, row-major, dim = 2(order+1)
    std::vector<cplx> b1, b2; // interleaved (a_0,c_0,...) and (b_0,d_0,...)
    bool real_symmetric;      // imaginary parts negligible, solve can stay real

    int dim() const { return 2 * (order + 1); }
};

NormalSystem build_normal_system(const WaveBasis& wb, const PotentialSpec& pot);

// Solves (A + ridge I) x = b1, b2; throws SingularSystem when the factorization
// breaks down at the given ridge.
std::vector<Mat2> fit_coefficients(const NormalSystem& ns, double ridge);

struct KernelApprox {
    int order;
    Grid grid;
    std::vector<Mat2> C;
    std::vector<SampledFn<Mat2>> Kn; // t-polynomial coefficients on the grid
    double residual; // L2(0,b) norm of Q/2 + sum N_n C_n
    double ridge;    // regularization actually used
};

// Full fitting pipeline: normal equations, ridge ladder on failure, kernel
// coefficient assembly, residual bookkeeping.
KernelApprox fit_kernel(const WaveBasis& wb, const PotentialSpec& pot, double ridge = 0.0);

// L2(0,b) norm of Q/2 + sum N_n C_n recomputed from stored coefficients.
double fit_residual(const WaveBasis& wb, const PotentialSpec& pot, const std::vector<Mat2>& C);

// Horner evaluation of K_N(x,t); (x,t) must lie in the triangle |t| <= x <= b.
Mat2 kernel_eval(const KernelApprox& ka, double x, double t);

// Frobenius norms of the two Goursat defects per node:
// r+ = |-Q - (B K_N(x,x) - K_N(x,x) B)|, r- = |B K_N(x,-x) + K_N(x,-x) B|.
struct GoursatResidual {
    SampledFn<double> r_plus;
    SampledFn<double> r_minus;
};
GoursatResidual goursat_residual(const KernelApprox& ka, const PotentialSpec& pot);

// JSON round-trip of {order, grid, coefficients, residual, ridge}. The kernel
// tables are re-assembled from a potential when a loaded fit is used again.
std::string kernel_to_json(const KernelApprox& ka);
struct StoredKernel {
    int order;
    double b;
    int grid_intervals;
    std::vector<Mat2> C;
    double residual;
    double ridge;
};
StoredKernel kernel_from_json(const std::string& text);
KernelApprox rebuild_kernel(const StoredKernel& sk, const FormalPowers& fp);

} // namespace dtk
