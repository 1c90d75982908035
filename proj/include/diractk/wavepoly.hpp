#pragma once

#include <memory>
#include <vector>

#include "diractk/basis.hpp"

namespace dtk {

// Binomial coefficients by Pascal recurrence, valid through n = 60.
double binomial(int n, int k);

enum class WaveParity { Odd, Even }; // p_{2m-1} vs p_{2m}

// Wave polynomials: p_{2m-1} = sum_{even k<=m} C(m,k) x^{m-k} t^k,
// p_{2m} = sum_{odd k<=m} C(m,k) x^{m-k} t^k; p_{-1} = 0, p_0 = 1.
double wave_poly(int m, WaveParity parity, double x, double t);
// same by linear index 2m-1 / 2m, index >= -1
double wave_poly_index(int index, double x, double t);

enum class UVKind { U, V }; // built on Phi_k vs Psi_k

// Generalized wave vectors: images of the wave polynomials under the
// transmutation operator. Index is 2m-1 or 2m; x anywhere in [0,b].
Vec2 uv_eval(const FormalPowers& fp, UVKind kind, int index, double x, double t);

// Goursat-trace matrices sampled on the grid; calN[n] is the half-sum basis
// the least-squares fit runs on, calM[n] the half-difference companion with
// B calN_n = -calM_n.
struct WaveBasis {
    int order;
    std::shared_ptr<const FormalPowers> fp;
    std::vector<SampledFn<Mat2>> calN;
    std::vector<SampledFn<Mat2>> calM;
};

WaveBasis calN_table(std::shared_ptr<const FormalPowers> fp, int N);

// t-polynomial coefficients of K_N(x,t) = sum_n Kn(x) t^n for the given
// coefficient matrices C_0..C_N.
std::vector<SampledFn<Mat2>> assemble_kernel_coeffs(const std::vector<Mat2>& coeffs,
                                                    const FormalPowers& fp);

// Direct evaluation of sum_n (a O^1 + b O^2 + c O^3 + d O^4)(x,t); the slow
// route kept as an independent check of the assembled coefficients.
Mat2 kernel_direct_eval(const std::vector<Mat2>& coeffs, const FormalPowers& fp, double x,
                        double t);

} // namespace dtk
