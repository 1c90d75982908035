#include "diractk/wavepoly.hpp"

#include <cmath>

#include "diractk/error.hpp"

namespace dtk {

namespace {
constexpr int kMaxBinomial = 60;

const std::vector<std::vector<double>>& binomial_table() {
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t(kMaxBinomial + 1);
        for (int n = 0; n <= kMaxBinomial; ++n) {
            t[n].resize(n + 1);
            t[n][0] = t[n][n] = 1.0;
            for (int k = 1; k < n; ++k)
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        return t;
    }();
    return table;
}
} // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    if (n > kMaxBinomial)
        throw DomainViolation("binomial order capped at 60");
    return binomial_table()[n][k];
}

double wave_poly(int m, WaveParity parity, double x, double t) {
    if (m < 0)
        throw DomainViolation("wave polynomial order must be nonnegative");
    double sum = 0.0;
    const int start = parity == WaveParity::Odd ? 0 : 1;
    for (int k = start; k <= m; k += 2)
        sum += binomial(m, k) * std::pow(x, m - k) * std::pow(t, k);
    return sum;
}

double wave_poly_index(int index, double x, double t) {
    if (index < -1)
        throw DomainViolation("wave polynomial index starts at -1");
    if (index == -1)
        return 0.0;
    if (index == 0)
        return 1.0;
    return index % 2 == 1 ? wave_poly((index + 1) / 2, WaveParity::Odd, x, t)
                          : wave_poly(index / 2, WaveParity::Even, x, t);
}

namespace {

// node_values[k] = Phi_k or Psi_k at the evaluation point
Vec2 uv_from_samples(int index, const std::vector<Vec2>& node_values, double t) {
    if (index == 0)
        return {}; // empty odd-k sum
    const bool odd = index == -1 || index % 2 == 1;
    const int m = odd ? (index + 1) / 2 : index / 2;
    Vec2 sum{};
    double tk = odd ? 1.0 : t; // t^k for the first term of the parity class
    for (int k = odd ? 0 : 1; k <= m; k += 2) {
        sum += binomial(m, k) * tk * node_values[static_cast<std::size_t>(m - k)];
        tk *= t * t;
    }
    return sum;
}

} // namespace

Vec2 uv_eval(const FormalPowers& fp, UVKind kind, int index, double x, double t) {
    if (index < -1 || index > 2 * fp.order)
        throw DomainViolation("generalized wave vector index out of range");
    const auto& family = kind == UVKind::U ? fp.Phi : fp.Psi;
    const int m = index <= 0 ? 0 : (index + 1) / 2;
    std::vector<Vec2> at_x(static_cast<std::size_t>(m + 1));
    for (int k = 0; k <= m; ++k)
        at_x[static_cast<std::size_t>(k)] = interp(family[static_cast<std::size_t>(k)], x);
    return uv_from_samples(index, at_x, t);
}

WaveBasis calN_table(std::shared_ptr<const FormalPowers> fp, int N) {
    if (N > fp->order)
        throw DomainViolation("formal powers truncated below requested order");
    const Grid& g = fp->grid;
    const Mat2 B = matB();
    WaveBasis wb{N, fp, {}, {}};
    double worst = 0.0;
    for (int n = 0; n <= N; ++n) {
        SampledFn<Mat2> Ncal(g), Mcal(g);
        for (int i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            std::vector<Vec2> phi_at(static_cast<std::size_t>(n + 1)),
                psi_at(static_cast<std::size_t>(n + 1));
            for (int k = 0; k <= n; ++k) {
                phi_at[static_cast<std::size_t>(k)] = fp->Phi[static_cast<std::size_t>(k)][i];
                psi_at[static_cast<std::size_t>(k)] = fp->Psi[static_cast<std::size_t>(k)][i];
            }
            const Vec2 u_odd = uv_from_samples(2 * n - 1, phi_at, x);
            const Vec2 u_even = uv_from_samples(2 * n, phi_at, x);
            const Vec2 v_odd = uv_from_samples(2 * n - 1, psi_at, x);
            const Vec2 v_even = uv_from_samples(2 * n, psi_at, x);
            Ncal[i] = Mat2::from_columns(B * u_odd - v_even, u_even + B * v_odd);
            Mcal[i] = Mat2::from_columns(u_odd + B * v_even, v_odd - B * u_even);
            worst = std::max(worst, frob_norm(B * Ncal[i] + Mcal[i]));
        }
        wb.calN.push_back(std::move(Ncal));
        wb.calM.push_back(std::move(Mcal));
    }
    if (worst > 1e-10)
        throw InvariantViolation("B calN_n != -calM_n, trace assembly is broken");
    return wb;
}

std::vector<SampledFn<Mat2>> assemble_kernel_coeffs(const std::vector<Mat2>& coeffs,
                                                    const FormalPowers& fp) {
    const int N = static_cast<int>(coeffs.size()) - 1;
    if (N > fp.order)
        throw DomainViolation("coefficient count exceeds formal-power order");
    const Grid& g = fp.grid;
    const Mat2 B = matB();
    std::vector<SampledFn<Mat2>> Kn;
    for (int n = 0; n <= N; ++n) {
        SampledFn<Mat2> kn(g);
        for (int k = 0; n + k <= N; ++k) {
            const double c = binomial(n + k, n);
            const Mat2& cm = coeffs[static_cast<std::size_t>(n + k)];
            const Mat2 right = n % 2 == 0 ? cm : B * cm * B;
            for (int i = 0; i < g.size(); ++i) {
                const Mat2 pk = Mat2::from_columns(fp.Phi[static_cast<std::size_t>(k)][i],
                                                   fp.Psi[static_cast<std::size_t>(k)][i]);
                kn[i] += c * (pk * right);
            }
        }
        Kn.push_back(std::move(kn));
    }
    return Kn;
}

Mat2 kernel_direct_eval(const std::vector<Mat2>& coeffs, const FormalPowers& fp, double x,
                        double t) {
    Mat2 sum{};
    for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) {
        const Mat2& c = coeffs[static_cast<std::size_t>(n)];
        const Vec2 u_odd = uv_eval(fp, UVKind::U, 2 * n - 1, x, t);
        const Vec2 u_even = uv_eval(fp, UVKind::U, 2 * n, x, t);
        const Vec2 v_odd = uv_eval(fp, UVKind::V, 2 * n - 1, x, t);
        const Vec2 v_even = uv_eval(fp, UVKind::V, 2 * n, x, t);
        const Mat2 o1 = Mat2::from_columns(u_odd, -v_even);
        const Mat2 o2 = Mat2::from_columns(v_even, u_odd);
        const Mat2 o3 = Mat2::from_columns(v_odd, u_even);
        const Mat2 o4 = Mat2::from_columns(-u_even, v_odd);
        sum += c.a11 * o1 + c.a12 * o2 + c.a21 * o3 + c.a22 * o4;
    }
    return sum;
}

} // namespace dtk
