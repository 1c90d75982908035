#include "diractk/basis.hpp"

#include <algorithm>
#include <cmath>

#include "diractk/error.hpp"

namespace dtk {

namespace {

// RK4 for Y' = (B Q(x) - lambda B) Y sampled on the grid nodes, `substeps`
// integrator steps per grid interval.
SampledFn<Vec2> integrate_homogeneous(const PotentialSpec& pot, const Grid& g, Vec2 ic,
                                      int substeps) {
    const Mat2 B = matB();
    auto rhs = [&](double x, const Vec2& y) { return B * (pot.Q(x) * y); };
    SampledFn<Vec2> out(g);
    Vec2 y = ic;
    out[0] = y;
    const double h = g.step() / substeps;
    for (int i = 0; i < g.intervals(); ++i) {
        double x = g.x(i);
        for (int s = 0; s < substeps; ++s) {
            const Vec2 k1 = rhs(x, y);
            const Vec2 k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
            const Vec2 k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
            const Vec2 k4 = rhs(x + h, y + h * k3);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            x += h;
        }
        out[i + 1] = y;
    }
    return out;
}

void check_non_vanishing(const SampledFn<cplx>& fn, const char* name) {
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (const cplx& v : fn.v) {
        mx = std::max(mx, std::abs(v));
        mn = std::min(mn, std::abs(v));
    }
    if (mn < 1e-10 * mx)
        throw NonVanishingViolation(std::string(name) +
                                    " vanishes (min/max modulus below 1e-10)");
}

ParticularSolution normalize(SampledFn<cplx> f, SampledFn<cplx> g) {
    check_non_vanishing(f, "f");
    check_non_vanishing(g, "g");
    const cplx prod = f[0] * g[0];
    const cplx root = std::sqrt(prod); // principal branch
    for (auto& v : f.v) v /= root;
    for (auto& v : g.v) v /= root;
    const cplx fg0 = f[0] * g[0];
    return ParticularSolution{std::move(f), std::move(g), fg0};
}

} // namespace

double ParticularSolution::residual(const PotentialSpec& pot) const {
    const Grid& g = f.grid;
    const double h = g.step();
    double worst = 0.0;
    for (int i = 1; i < g.intervals(); ++i) {
        const cplx fp = (f[i + 1] - f[i - 1]) / (2.0 * h);
        const cplx gp = (this->g[i + 1] - this->g[i - 1]) / (2.0 * h);
        const cplx pv = pot.p(g.x(i)), qv = pot.q(g.x(i));
        const cplx r1 = gp + pv * f[i] + qv * this->g[i];
        const cplx r2 = -fp + qv * f[i] - pv * this->g[i];
        worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)));
    }
    return worst;
}

ParticularSolution particular_solution_from_f(const SampledFn<cplx>& f) {
    SampledFn<cplx> g(f.grid);
    for (int i = 0; i < f.grid.size(); ++i)
        g[i] = 1.0 / f[i];
    return normalize(f, std::move(g));
}

ParticularSolution particular_solution(const PotentialSpec& pot, const Grid& grid) {
    if (pot.p_is_zero(grid)) {
        // f = exp(int q), g = exp(-int q)
        const SampledFn<cplx> q = pot.sample_q(grid);
        const SampledFn<cplx> iq = cumint(q);
        SampledFn<cplx> f(grid), g(grid);
        for (int i = 0; i < grid.size(); ++i) {
            f[i] = std::exp(iq[i]);
            g[i] = std::exp(-iq[i]);
        }
        return normalize(std::move(f), std::move(g));
    }

    const int substeps = 8;
    if (pot.is_real(grid)) {
        // two real solutions whose components cannot share zeros; f1 + i f2
        // never vanishes
        const SampledFn<Vec2> y1 = integrate_homogeneous(pot, grid, Vec2{1.0, 0.0}, substeps);
        const SampledFn<Vec2> y2 = integrate_homogeneous(pot, grid, Vec2{0.0, 1.0}, substeps);
        SampledFn<cplx> f(grid), g(grid);
        for (int i = 0; i < grid.size(); ++i) {
            f[i] = y1[i].v1 + cplx(0.0, 1.0) * y2[i].v1;
            g[i] = y1[i].v2 + cplx(0.0, 1.0) * y2[i].v2;
        }
        return normalize(std::move(f), std::move(g));
    }

    // Complex potential: no constructive recipe, try a few rotated initial
    // vectors until both components stay away from zero.
    for (int k = 0; k < 8; ++k) {
        const double theta = k * M_PI / 8.0;
        const Vec2 ic{1.0, cplx(0.0, 1.0) * std::exp(cplx(0.0, theta))};
        const SampledFn<Vec2> y = integrate_homogeneous(pot, grid, ic, substeps);
        SampledFn<cplx> f(grid), g(grid);
        for (int i = 0; i < grid.size(); ++i) {
            f[i] = y[i].v1;
            g[i] = y[i].v2;
        }
        try {
            return normalize(std::move(f), std::move(g));
        } catch (const NonVanishingViolation&) {
            // rotate and retry
        }
    }
    throw NonVanishingViolation("no non-vanishing solution found after 8 rotated starts");
}

FormalPowers recursive_integrals(const ParticularSolution& sol, const PotentialSpec& pot, int N) {
    const Grid& g = sol.f.grid;
    const int n_pts = g.size();

    SampledFn<cplx> p_over_f2(g), p_over_g2(g), f_over_g(g), g_over_f(g), f2(g), g2(g);
    for (int i = 0; i < n_pts; ++i) {
        const cplx pv = pot.p(g.x(i));
        const cplx fv = sol.f[i], gv = sol.g[i];
        p_over_f2[i] = pv / (fv * fv);
        p_over_g2[i] = pv / (gv * gv);
        f_over_g[i] = fv / gv;
        g_over_f[i] = gv / fv;
        f2[i] = fv * fv;
        g2[i] = gv * gv;
    }
    const SampledFn<cplx> int_p_f2 = cumint(p_over_f2);
    const SampledFn<cplx> int_p_g2 = cumint(p_over_g2);

    FormalPowers fp{g, N, sol, {}, {}, {}, {}, {}, {}, {}, {}};

    auto step = [&](std::vector<SampledFn<cplx>>& X, std::vector<SampledFn<cplx>>& Y,
                    std::vector<SampledFn<cplx>>& Z) {
        const int n = static_cast<int>(Z.size());
        SampledFn<cplx> zi(g);
        for (int i = 0; i < n_pts; ++i)
            zi[i] = f2[i] * X[n][i] + g2[i] * Y[n][i];
        Z.push_back(cumint(zi));

        SampledFn<cplx> xi(g), yi(g);
        for (int i = 0; i < n_pts; ++i) {
            xi[i] = p_over_f2[i] * Z[n][i] + g_over_f[i] * Y[n][i];
            yi[i] = p_over_g2[i] * Z[n][i] + f_over_g[i] * X[n][i];
        }
        SampledFn<cplx> xn = cumint(xi), yn = cumint(yi);
        const double fac = static_cast<double>(n + 1);
        for (int i = 0; i < n_pts; ++i) {
            xn[i] *= -fac;
            yn[i] *= fac;
        }
        X.push_back(std::move(xn));
        Y.push_back(std::move(yn));
    };

    // plain family: X^(0) = -int p/f^2, Y^(0) = 1 + int p/g^2
    {
        SampledFn<cplx> x0(g), y0(g);
        for (int i = 0; i < n_pts; ++i) {
            x0[i] = -int_p_f2[i];
            y0[i] = 1.0 + int_p_g2[i];
        }
        fp.X.push_back(std::move(x0));
        fp.Y.push_back(std::move(y0));
    }
    // tilde family: seeds swapped, X~(0) = 1 + int p/f^2, Y~(0) = -int p/g^2
    {
        SampledFn<cplx> x0(g), y0(g);
        for (int i = 0; i < n_pts; ++i) {
            x0[i] = 1.0 + int_p_f2[i];
            y0[i] = -int_p_g2[i];
        }
        fp.Xt.push_back(std::move(x0));
        fp.Yt.push_back(std::move(y0));
    }
    for (int n = 0; n < N; ++n) {
        step(fp.X, fp.Y, fp.Z);
        step(fp.Xt, fp.Yt, fp.Zt);
    }
    // one more Z level so diagnostics cover n = N
    {
        SampledFn<cplx> zi(g);
        for (int i = 0; i < n_pts; ++i)
            zi[i] = f2[i] * fp.X[N][i] + g2[i] * fp.Y[N][i];
        fp.Z.push_back(cumint(zi));
        for (int i = 0; i < n_pts; ++i)
            zi[i] = f2[i] * fp.Xt[N][i] + g2[i] * fp.Yt[N][i];
        fp.Zt.push_back(cumint(zi));
    }

    // formal powers with parity-dependent signs and f(0), g(0) factors
    const cplx f0 = sol.f[0], g0 = sol.g[0];
    for (int k = 0; k <= N; ++k) {
        SampledFn<Vec2> phi(g), psi(g);
        if (k % 2 == 1) {
            const double sphi = ((k + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            const double spsi = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            for (int i = 0; i < n_pts; ++i) {
                phi[i] = sphi * g0 * Vec2{sol.f[i] * fp.X[k][i], sol.g[i] * fp.Y[k][i]};
                psi[i] = spsi * g0 * Vec2{sol.f[i] * fp.Xt[k][i], sol.g[i] * fp.Yt[k][i]};
            }
        } else {
            const double s = (k / 2) % 2 == 0 ? 1.0 : -1.0;
            for (int i = 0; i < n_pts; ++i) {
                phi[i] = s * f0 * Vec2{sol.f[i] * fp.Xt[k][i], sol.g[i] * fp.Yt[k][i]};
                psi[i] = s * f0 * Vec2{sol.f[i] * fp.X[k][i], sol.g[i] * fp.Y[k][i]};
            }
        }
        fp.Phi.push_back(std::move(phi));
        fp.Psi.push_back(std::move(psi));
    }
    return fp;
}

SppsSolution spps_solution(const FormalPowers& fp, cplx lambda, int truncation) {
    if (truncation > fp.order)
        throw DomainViolation("truncation exceeds available order");
    const Grid& g = fp.grid;
    SppsSolution out{SampledFn<Vec2>(g), SampledFn<Vec2>(g), true, 0.0};

    cplx coeff = 1.0; // lambda^n / n!, updated incrementally
    double last_term = 0.0, sum_scale = 0.0;
    for (int n = 0; n <= truncation; ++n) {
        if (n > 0)
            coeff *= lambda / static_cast<double>(n);
        double term_mag = 0.0;
        for (int i = 0; i < g.size(); ++i) {
            const Vec2 t1 = coeff * Vec2{fp.sol.f[i] * fp.Xt[n][i], fp.sol.g[i] * fp.Yt[n][i]};
            const Vec2 t2 = coeff * Vec2{fp.sol.f[i] * fp.X[n][i], fp.sol.g[i] * fp.Y[n][i]};
            out.Y1[i] += t1;
            out.Y2[i] += t2;
            term_mag = std::max({term_mag, norm2(t1), norm2(t2)});
        }
        last_term = term_mag;
        if (n == truncation)
            for (int i = 0; i < g.size(); ++i)
                sum_scale = std::max({sum_scale, norm2(out.Y1[i]), norm2(out.Y2[i])});
    }
    out.last_term_ratio = sum_scale > 0.0 ? last_term / sum_scale : 0.0;
    out.converged = out.last_term_ratio <= 1e-8;
    return out;
}

} // namespace dtk
