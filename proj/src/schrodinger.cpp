#include "diractk/schrodinger.hpp"

#include <cmath>

#include "diractk/error.hpp"

namespace dtk {

namespace {

struct ScalarIvp {
    SampledFn<cplx> y, yp;
};

// RK4 for y'' = q1(x) y from (y, y')(0) = ic
ScalarIvp integrate_schrod(const std::function<cplx(double)>& q1, const Grid& g, cplx y0,
                           cplx yp0, int substeps) {
    ScalarIvp out{SampledFn<cplx>(g), SampledFn<cplx>(g)};
    cplx y = y0, yp = yp0;
    out.y[0] = y;
    out.yp[0] = yp;
    const double h = g.step() / substeps;
    auto f2 = [&](double x, cplx yy) { return q1(x) * yy; };
    for (int i = 0; i < g.intervals(); ++i) {
        double x = g.x(i);
        for (int s = 0; s < substeps; ++s) {
            const cplx k1y = yp, k1p = f2(x, y);
            const cplx k2y = yp + 0.5 * h * k1p, k2p = f2(x + 0.5 * h, y + 0.5 * h * k1y);
            const cplx k3y = yp + 0.5 * h * k2p, k3p = f2(x + 0.5 * h, y + 0.5 * h * k2y);
            const cplx k4y = yp + h * k3p, k4p = f2(x + h, y + h * k3y);
            y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            yp += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            x += h;
        }
        out.y[i + 1] = y;
        out.yp[i + 1] = yp;
    }
    return out;
}

bool non_vanishing(const SampledFn<cplx>& fn) {
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (const cplx& v : fn.v) {
        mx = std::max(mx, std::abs(v));
        mn = std::min(mn, std::abs(v));
    }
    return mn >= 1e-10 * mx;
}

} // namespace

SchrodProblem schrod_reduce(const std::function<cplx(double)>& q1, const Grid& grid, int order) {
    const int substeps = 8;
    const ScalarIvp u1 = integrate_schrod(q1, grid, 1.0, 0.0, substeps);

    SampledFn<cplx> f(grid), fprime(grid);
    if (non_vanishing(u1.y)) {
        f = u1.y;
        fprime = u1.yp;
    } else {
        // complexify with the companion solution, f = u1 + i u2 with h = i
        const ScalarIvp u2 = integrate_schrod(q1, grid, 0.0, 1.0, substeps);
        for (int i = 0; i < grid.size(); ++i) {
            f[i] = u1.y[i] + cplx(0.0, 1.0) * u2.y[i];
            fprime[i] = u1.yp[i] + cplx(0.0, 1.0) * u2.yp[i];
        }
        if (!non_vanishing(f))
            throw NonVanishingViolation("no non-vanishing Schroedinger solution found");
    }

    SchrodProblem sp{grid, q1, f, fprime, fprime[0], nullptr, {}, {}, {}, {}};

    // Dirac side: (f, 1/f) solves the Lorentz-scalar system with q = f'/f
    const ParticularSolution dirac_sol = particular_solution_from_f(f);
    SampledFn<cplx> zero(grid), q_dirac(grid);
    for (int i = 0; i < grid.size(); ++i)
        q_dirac[i] = fprime[i] / f[i];
    const PotentialSpec dirac_pot = PotentialSpec::from_samples(zero, q_dirac);
    sp.fp = std::make_shared<FormalPowers>(recursive_integrals(dirac_sol, dirac_pot, order));

    // scalar recursions: X^(n) = n int X^(n-1) (f^2)^((-1)^n),
    // tilde family with the exponent parity flipped
    SampledFn<cplx> ones(grid, cplx{1.0, 0.0});
    sp.Xs.push_back(ones);
    sp.Xst.push_back(ones);
    SampledFn<cplx> f2(grid), inv_f2(grid);
    for (int i = 0; i < grid.size(); ++i) {
        f2[i] = f[i] * f[i];
        inv_f2[i] = 1.0 / f2[i];
    }
    for (int n = 1; n <= order; ++n) {
        const bool odd = n % 2 == 1;
        SampledFn<cplx> ix(grid), ixt(grid);
        for (int i = 0; i < grid.size(); ++i) {
            ix[i] = sp.Xs[static_cast<std::size_t>(n - 1)][i] * (odd ? inv_f2[i] : f2[i]);
            ixt[i] = sp.Xst[static_cast<std::size_t>(n - 1)][i] * (odd ? f2[i] : inv_f2[i]);
        }
        SampledFn<cplx> xn = cumint(ix), xtn = cumint(ixt);
        for (int i = 0; i < grid.size(); ++i) {
            xn[i] *= static_cast<double>(n);
            xtn[i] *= static_cast<double>(n);
        }
        sp.Xs.push_back(std::move(xn));
        sp.Xst.push_back(std::move(xtn));
    }
    for (int k = 0; k <= order; ++k) {
        SampledFn<cplx> phik(grid), psik(grid);
        const auto& xk = k % 2 == 1 ? sp.Xs[static_cast<std::size_t>(k)]
                                    : sp.Xst[static_cast<std::size_t>(k)];
        const auto& xk_dual = k % 2 == 1 ? sp.Xst[static_cast<std::size_t>(k)]
                                         : sp.Xs[static_cast<std::size_t>(k)];
        for (int i = 0; i < grid.size(); ++i) {
            phik[i] = f[i] * xk[i];
            psik[i] = xk_dual[i] / f[i];
        }
        sp.phi.push_back(std::move(phik));
        sp.psi.push_back(std::move(psik));
    }
    return sp;
}

namespace {

cplx scalar_wave(const std::vector<SampledFn<cplx>>& family, int index, double x, double t) {
    // index 2m-1 / 2m; -1 and 0 both give the constant term of the family
    if (index <= 0)
        return interp(family[0], x);
    const bool odd = index % 2 == 1;
    const int m = (index + 1) / 2;
    cplx sum{};
    double tk = odd ? 1.0 : t;
    for (int k = odd ? 0 : 1; k <= m; k += 2) {
        sum += binomial(m, k) * tk * interp(family[static_cast<std::size_t>(m - k)], x);
        tk *= t * t;
    }
    return sum;
}

} // namespace

cplx schrod_u(const SchrodProblem& sp, int index, double x, double t) {
    if (index > 2 * static_cast<int>(sp.phi.size()) - 2)
        throw DomainViolation("scalar wave polynomial index out of range");
    return scalar_wave(sp.phi, index, x, t);
}

cplx schrod_v(const SchrodProblem& sp, int index, double x, double t) {
    if (index > 2 * static_cast<int>(sp.psi.size()) - 2)
        throw DomainViolation("scalar wave polynomial index out of range");
    return scalar_wave(sp.psi, index, x, t);
}

SchrodKernels schrod_fit(std::shared_ptr<const SchrodProblem> sp, int N, double ridge) {
    if (N < 1)
        throw DomainViolation("approximation order must be at least 1");
    if (N > sp->fp->order)
        throw DomainViolation("problem was reduced with a smaller order");

    const Grid& g = sp->grid;
    SampledFn<cplx> zero(g), q_dirac(g);
    for (int i = 0; i < g.size(); ++i)
        q_dirac[i] = sp->f_prime[i] / sp->f[i];
    const PotentialSpec dirac_pot = PotentialSpec::from_samples(zero, q_dirac);

    const WaveBasis wb = calN_table(sp->fp, N);
    KernelApprox ka = fit_kernel(wb, dirac_pot, ridge);

    SchrodKernels out{N, {}, {}, 0.0, 0.0, sp, std::move(ka)};
    for (const Mat2& c : out.dirac.C) {
        out.a.push_back(c.a11);
        out.d.push_back(c.a22);
    }

    // per-family residuals: the two decoupled scalar objectives
    const std::vector<double> w = g.weights();
    double ra = 0.0, rd = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        cplx acc_a = 0.5 * q_dirac[i];
        cplx acc_d = 0.5 * q_dirac[i];
        for (int n = 0; n <= N; ++n) {
            // (2,1) channel carries the a-family, (1,2) the d-family
            acc_a += wb.calN[static_cast<std::size_t>(n)][i].a21 * out.a[static_cast<std::size_t>(n)];
            acc_d += wb.calN[static_cast<std::size_t>(n)][i].a12 * out.d[static_cast<std::size_t>(n)];
        }
        ra += w[static_cast<std::size_t>(i)] * std::norm(acc_a);
        rd += w[static_cast<std::size_t>(i)] * std::norm(acc_d);
    }
    out.residual_a = std::sqrt(std::max(0.0, ra));
    out.residual_d = std::sqrt(std::max(0.0, rd));
    return out;
}

} // namespace dtk
