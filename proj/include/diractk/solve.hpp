#pragma once

#include <vector>

#include "diractk/fit.hpp"

namespace dtk {

enum class MomentKind { Cos, Sin };

// int_{-x}^{x} t^n cos(lambda t) dt and the sine analogue. Odd-n cosine and
// even-n sine moments vanish by parity.
double trig_moment(int n, double lambda, double x, MomentKind kind);

struct TrigMoments {
    std::vector<double> c, s; // index n = 0..N
};
TrigMoments trig_moments(int N, double lambda, double x);

namespace detail {
// the two evaluation branches, exposed so tests can compare them across the
// switch threshold
TrigMoments trig_moments_taylor(int N, double lambda, double x);
TrigMoments trig_moments_recurrence(int N, double lambda, double x);
constexpr double kMomentSwitch = 0.5; // threshold on |lambda| x
} // namespace detail

enum class SolutionKind { C, S };

// C_N(x,lambda) = (cos,sin)^T lambda x + sum_n Kn(x) (c_n, s_n)^T and the
// S_N companion with (-sin,cos) and swapped moment roles.
Vec2 eval_solution(const KernelApprox& ka, double x, double lambda, SolutionKind which);

// Y_N = a C_N + b S_N; exact initial value (a,b)^T at x = 0.
Vec2 ivp_eval(const KernelApprox& ka, cplx a, cplx b, double lambda, double x);
SampledFn<Vec2> solve_ivp(const KernelApprox& ka, cplx a, cplx b, double lambda);

// Boundary condition U_left Y(0) + U_right Y(b) = 0.
struct BoundaryCondition {
    Mat2 left;
    Mat2 right;
};
void validate_boundary(const BoundaryCondition& bc);

cplx characteristic_det(const KernelApprox& ka, const BoundaryCondition& bc, double lambda);

// Caches Kn(b) so scans cost O(N) per lambda.
class CharacteristicEvaluator {
public:
    CharacteristicEvaluator(const KernelApprox& ka, const BoundaryCondition& bc);
    cplx operator()(double lambda) const;

private:
    int order_;
    double b_;
    std::vector<Mat2> kn_at_b_;
    BoundaryCondition bc_;
};

struct SpectrumEntry {
    int index; // position relative to lambda = 0
    double lambda;
    double residual; // |det M_N| at the root
    double bracket_lo, bracket_hi;
    int iterations;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries; // sorted by lambda
};

Spectrum find_eigenvalues(const KernelApprox& ka, const BoundaryCondition& bc, double lambda_min,
                          double lambda_max, double scan_step);

inline double default_scan_step(double b) { return M_PI / (4.0 * b); }

} // namespace dtk
