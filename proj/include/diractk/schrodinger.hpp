#pragma once

#include <functional>
#include <memory>

#include "diractk/fit.hpp"

namespace dtk {

// -y'' + q1 y = w^2 y reduced to the Lorentz-scalar Dirac system with
// q = f'/f, where f solves the equation at w = 0 with f(0) = 1.
struct SchrodProblem {
    Grid grid;
    std::function<cplx(double)> q1;
    SampledFn<cplx> f;       // non-vanishing particular solution
    SampledFn<cplx> f_prime; // from the same integration, no differencing
    cplx h;                  // f'(0)
    std::shared_ptr<const FormalPowers> fp; // Dirac formal powers of (f, 1/f)
    // scalar recursions and formal powers associated with f
    std::vector<SampledFn<cplx>> Xs, Xst;
    std::vector<SampledFn<cplx>> phi, psi;
};

SchrodProblem schrod_reduce(const std::function<cplx(double)>& q1, const Grid& grid, int order);

// scalar generalized wave polynomials u_m (on phi) and v_m (on psi);
// index -1 and 0 both evaluate to phi_0 / psi_0 per the scalar convention
cplx schrod_u(const SchrodProblem& sp, int index, double x, double t);
cplx schrod_v(const SchrodProblem& sp, int index, double x, double t);

struct SchrodKernels {
    int order;
    std::vector<cplx> a, d; // fitted coefficient families
    double residual_a, residual_d;
    std::shared_ptr<const SchrodProblem> problem;
    KernelApprox dirac; // block-diagonal Dirac kernel the scalar kernels live in

    cplx k_f(double x, double t) const { return kernel_eval(dirac, x, t).a11; }
    cplx k_1_over_f(double x, double t) const { return kernel_eval(dirac, x, t).a22; }
};

SchrodKernels schrod_fit(std::shared_ptr<const SchrodProblem> sp, int N, double ridge = 0.0);

} // namespace dtk
