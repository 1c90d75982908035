#pragma once

#include <vector>

#include "diractk/grid.hpp"
#include "diractk/mat2.hpp"
#include "diractk/potential.hpp"

namespace dtk {

// Non-vanishing solution (f,g) of the homogeneous system g' + pf + qg = 0,
// -f' + qf - pg = 0, normalized so that f(0)g(0) = 1.
struct ParticularSolution {
    SampledFn<cplx> f;
    SampledFn<cplx> g;
    cplx f0g0; // recomputed product at x=0 after normalization

    // max Frobenius residual of the homogeneous system at interior nodes,
    // derivatives by central differences
    double residual(const PotentialSpec& pot) const;
};

ParticularSolution particular_solution(const PotentialSpec& pot, const Grid& grid);

// Directly builds the pair (f, 1/f) from samples of a non-vanishing f with
// f(0) = 1; p must be identically zero for this to solve the system.
ParticularSolution particular_solution_from_f(const SampledFn<cplx>& f);

// Recursive integrals X^(n), Y^(n), Z^(n), the tilde family, and the formal
// powers Phi_k, Psi_k built from them.
struct FormalPowers {
    Grid grid;
    int order; // N
    ParticularSolution sol;
    std::vector<SampledFn<cplx>> X, Y, Z;
    std::vector<SampledFn<cplx>> Xt, Yt, Zt;
    std::vector<SampledFn<Vec2>> Phi, Psi;
};

FormalPowers recursive_integrals(const ParticularSolution& sol, const PotentialSpec& pot, int N);

struct SppsSolution {
    SampledFn<Vec2> Y1;
    SampledFn<Vec2> Y2;
    bool converged;            // last term small relative to the partial sums
    double last_term_ratio;    // max node |term_N| / |partial sum|
};

// Partial sums of the power-in-lambda series solutions; Y1(0) = (f(0),0)^T,
// Y2(0) = (0,g(0))^T.
SppsSolution spps_solution(const FormalPowers& fp, cplx lambda, int truncation);

} // namespace dtk
