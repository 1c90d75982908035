#include "diractk/solve.hpp"

#include <algorithm>
#include <cmath>

#include "diractk/error.hpp"

namespace dtk {

namespace detail {

TrigMoments trig_moments_taylor(int N, double lambda, double x) {
    TrigMoments out{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    for (int n = 0; n <= N; ++n) {
        // one-sided integrals over [0,x] as series in lambda
        double a = 0.0, term = std::pow(x, n + 1); // m = 0 cosine term / (n+1)
        for (int m = 0; m < 400; ++m) {
            const double contrib = term / (n + 2 * m + 1);
            a += contrib;
            term *= -lambda * lambda * x * x / ((2.0 * m + 1) * (2.0 * m + 2));
            if (std::abs(term) < 1e-17 * std::abs(a) * (n + 2 * m + 3))
                break;
        }
        double bsum = 0.0;
        term = lambda * std::pow(x, n + 2);
        for (int m = 0; m < 400; ++m) {
            const double contrib = term / (n + 2 * m + 2);
            bsum += contrib;
            term *= -lambda * lambda * x * x / ((2.0 * m + 2) * (2.0 * m + 3));
            if (std::abs(term) < 1e-17 * std::abs(bsum) * (n + 2 * m + 4))
                break;
        }
        if (n % 2 == 0)
            out.c[static_cast<std::size_t>(n)] = 2.0 * a;
        else
            out.s[static_cast<std::size_t>(n)] = 2.0 * bsum;
    }
    return out;
}

TrigMoments trig_moments_recurrence(int N, double lambda, double x) {
    // one-sided a_n = int_0^x t^n cos, b_n = int_0^x t^n sin; upward while
    // n <= |lambda| x (amplification factor n/(lambda x) <= 1), downward with a
    // zero tail start above that.
    const double u = std::abs(lambda) * x;
    const double sx = std::sin(lambda * x), cx = std::cos(lambda * x);
    std::vector<double> a(static_cast<std::size_t>(N + 1)), b(static_cast<std::size_t>(N + 1));

    const int n_up = std::min(N, static_cast<int>(std::floor(u)));
    double xn = 1.0; // x^n
    for (int n = 0; n <= n_up; ++n) {
        if (n == 0) {
            a[0] = sx / lambda;
            b[0] = (1.0 - cx) / lambda;
        } else {
            a[static_cast<std::size_t>(n)] = xn * sx / lambda - (n / lambda) * b[n - 1];
            b[static_cast<std::size_t>(n)] = -xn * cx / lambda + (n / lambda) * a[n - 1];
        }
        xn *= x;
    }
    if (n_up < N) {
        const int n_top = std::max(N, static_cast<int>(std::ceil(2.0 * u))) + 60;
        double an = 0.0, bn = 0.0; // tail start, damped away while stepping down
        double xp = std::pow(x, n_top); // x^n at n = n_top
        for (int n = n_top; n > n_up; --n) {
            const double am1 = xp * cx / n + (lambda / n) * bn;
            const double bm1 = xp * sx / n - (lambda / n) * an;
            an = am1;
            bn = bm1;
            xp /= x;
            if (n - 1 <= N && n - 1 > n_up) {
                a[static_cast<std::size_t>(n - 1)] = an;
                b[static_cast<std::size_t>(n - 1)] = bn;
            }
        }
    }

    TrigMoments out{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    for (int n = 0; n <= N; ++n) {
        if (n % 2 == 0)
            out.c[static_cast<std::size_t>(n)] = 2.0 * a[static_cast<std::size_t>(n)];
        else
            out.s[static_cast<std::size_t>(n)] = 2.0 * b[static_cast<std::size_t>(n)];
    }
    return out;
}

} // namespace detail

TrigMoments trig_moments(int N, double lambda, double x) {
    if (N < 0 || x < 0.0)
        throw DomainViolation("moment order and x must be nonnegative");
    if (lambda == 0.0) {
        TrigMoments out{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
        for (int n = 0; n <= N; n += 2)
            out.c[static_cast<std::size_t>(n)] = 2.0 * std::pow(x, n + 1) / (n + 1);
        return out;
    }
    return std::abs(lambda) * x < detail::kMomentSwitch ? detail::trig_moments_taylor(N, lambda, x)
                                                        : detail::trig_moments_recurrence(N, lambda, x);
}

double trig_moment(int n, double lambda, double x, MomentKind kind) {
    const TrigMoments m = trig_moments(n, lambda, x);
    return kind == MomentKind::Cos ? m.c[static_cast<std::size_t>(n)]
                                   : m.s[static_cast<std::size_t>(n)];
}

namespace {

Vec2 solution_from_moments(const std::vector<Mat2>& kn_at_x, double x, double lambda,
                           SolutionKind which, const TrigMoments& m) {
    const double cx = std::cos(lambda * x), sx = std::sin(lambda * x);
    Vec2 acc = which == SolutionKind::C ? Vec2{cx, sx} : Vec2{-sx, cx};
    for (std::size_t n = 0; n < kn_at_x.size(); ++n) {
        const Vec2 mv = which == SolutionKind::C ? Vec2{m.c[n], m.s[n]} : Vec2{-m.s[n], m.c[n]};
        acc += kn_at_x[n] * mv;
    }
    return acc;
}

} // namespace

Vec2 eval_solution(const KernelApprox& ka, double x, double lambda, SolutionKind which) {
    if (x < 0.0 || x > ka.grid.b() * (1.0 + 1e-12))
        throw DomainViolation("solution evaluation outside [0,b]");
    std::vector<Mat2> kn_at_x(static_cast<std::size_t>(ka.order + 1));
    for (int n = 0; n <= ka.order; ++n)
        kn_at_x[static_cast<std::size_t>(n)] = interp(ka.Kn[static_cast<std::size_t>(n)], x);
    return solution_from_moments(kn_at_x, x, lambda, which, trig_moments(ka.order, lambda, x));
}

Vec2 ivp_eval(const KernelApprox& ka, cplx a, cplx b, double lambda, double x) {
    const Vec2 c = eval_solution(ka, x, lambda, SolutionKind::C);
    const Vec2 s = eval_solution(ka, x, lambda, SolutionKind::S);
    return a * c + b * s;
}

SampledFn<Vec2> solve_ivp(const KernelApprox& ka, cplx a, cplx b, double lambda) {
    SampledFn<Vec2> out(ka.grid);
    for (int i = 0; i < ka.grid.size(); ++i)
        out[i] = ivp_eval(ka, a, b, lambda, ka.grid.x(i));
    return out;
}

void validate_boundary(const BoundaryCondition& bc) {
    // rank of the 2x4 concatenation [left | right] must be 2
    const cplx cols[4][2] = {{bc.left.a11, bc.left.a21},
                             {bc.left.a12, bc.left.a22},
                             {bc.right.a11, bc.right.a21},
                             {bc.right.a12, bc.right.a22}};
    double scale = 0.0, best = 0.0;
    for (int i = 0; i < 4; ++i)
        scale = std::max({scale, std::abs(cols[i][0]), std::abs(cols[i][1])});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            best = std::max(best, std::abs(cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0]));
    if (scale == 0.0 || best <= 1e-13 * scale * scale)
        throw ConfigError("degenerate boundary condition (rank below 2)");
}

CharacteristicEvaluator::CharacteristicEvaluator(const KernelApprox& ka,
                                                 const BoundaryCondition& bc)
    : order_(ka.order), b_(ka.grid.b()), bc_(bc) {
    validate_boundary(bc);
    for (int n = 0; n <= order_; ++n)
        kn_at_b_.push_back(ka.Kn[static_cast<std::size_t>(n)][ka.grid.intervals()]);
}

cplx CharacteristicEvaluator::operator()(double lambda) const {
    const TrigMoments m = trig_moments(order_, lambda, b_);
    const Vec2 c = solution_from_moments(kn_at_b_, b_, lambda, SolutionKind::C, m);
    const Vec2 s = solution_from_moments(kn_at_b_, b_, lambda, SolutionKind::S, m);
    return det(bc_.left + bc_.right * Mat2::from_columns(c, s));
}

cplx characteristic_det(const KernelApprox& ka, const BoundaryCondition& bc, double lambda) {
    return CharacteristicEvaluator(ka, bc)(lambda);
}

namespace {

struct RefinedRoot {
    double lambda;
    double residual;
    double lo, hi;
    int iterations;
};

template <class Fn>
RefinedRoot refine_root(const Fn& g, double lo, double hi, double target) {
    double flo = g(lo), fhi = g(hi);
    const double lo0 = lo, hi0 = hi;
    int iters = 0;
    // bisection narrows the bracket, then secant polishes inside it
    for (int k = 0; k < 60 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = g(mid);
        ++iters;
        if (std::abs(fmid) <= target) {
            return {mid, std::abs(fmid), lo0, hi0, iters};
        }
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    double x0 = lo, x1 = hi, f0 = flo, f1 = fhi;
    for (int k = 0; k < 40; ++k) {
        if (f1 == f0)
            break;
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= lo0 && x2 <= hi0))
            x2 = 0.5 * (lo + hi); // secant left the bracket, fall back
        const double f2 = g(x2);
        ++iters;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (std::abs(f2) <= target || std::abs(x1 - x0) <= 1e-16 * std::max(1.0, std::abs(x1)))
            break;
    }
    if (!(x1 >= lo0 - (hi0 - lo0) && x1 <= hi0 + (hi0 - lo0)))
        throw BracketLost("root refinement escaped its bracket");
    return {x1, std::abs(f1), lo0, hi0, iters};
}

} // namespace

Spectrum find_eigenvalues(const KernelApprox& ka, const BoundaryCondition& bc, double lambda_min,
                          double lambda_max, double scan_step) {
    if (!(lambda_min < lambda_max))
        throw DomainViolation("need lambda_min < lambda_max");
    if (!(scan_step > 0.0))
        throw DomainViolation("scan step must be positive");
    const CharacteristicEvaluator det_fn(ka, bc);

    const int count = static_cast<int>(std::floor((lambda_max - lambda_min) / scan_step)) + 1;
    std::vector<double> lam(static_cast<std::size_t>(count));
    std::vector<cplx> val(static_cast<std::size_t>(count));
    double scale = 0.0;
    for (int k = 0; k < count; ++k) {
        lam[static_cast<std::size_t>(k)] = lambda_min + k * scan_step;
        val[static_cast<std::size_t>(k)] = det_fn(lam[static_cast<std::size_t>(k)]);
        scale = std::max(scale, std::abs(val[static_cast<std::size_t>(k)]));
    }
    if (scale == 0.0)
        return {};

    // de-phase: real self-adjoint problems give a real scan after rotating by
    // the phase of the largest sample
    cplx phase{1.0, 0.0};
    for (int k = 0; k < count; ++k)
        if (std::abs(val[static_cast<std::size_t>(k)]) == scale)
            phase = std::conj(val[static_cast<std::size_t>(k)]) / scale;
    std::vector<double> re(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const cplx v = phase * val[static_cast<std::size_t>(k)];
        if (std::abs(v.imag()) > 1e-6 * std::abs(v) + 1e-12 * scale)
            throw ComplexCharacteristic("characteristic function is not real after de-phasing");
        re[static_cast<std::size_t>(k)] = v.real();
    }

    auto g = [&](double l) { return (phase * det_fn(l)).real(); };
    const double target = 1e-12 * scale;

    std::vector<RefinedRoot> roots;
    for (int k = 0; k + 1 < count; ++k) {
        const double f0 = re[static_cast<std::size_t>(k)], f1 = re[static_cast<std::size_t>(k + 1)];
        if (f0 == 0.0) {
            roots.push_back({lam[static_cast<std::size_t>(k)], 0.0,
                             lam[static_cast<std::size_t>(k)], lam[static_cast<std::size_t>(k)], 0});
        } else if ((f0 < 0.0) != (f1 < 0.0)) {
            roots.push_back(refine_root(g, lam[static_cast<std::size_t>(k)],
                                        lam[static_cast<std::size_t>(k + 1)], target));
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const RefinedRoot& a, const RefinedRoot& b2) { return a.lambda < b2.lambda; });

    // drop duplicates closer than scan_step/10, keep the smaller residual
    std::vector<RefinedRoot> kept;
    for (const RefinedRoot& r : roots) {
        if (!kept.empty() && std::abs(r.lambda - kept.back().lambda) < scan_step / 10.0) {
            if (r.residual < kept.back().residual)
                kept.back() = r;
        } else {
            kept.push_back(r);
        }
    }

    Spectrum spec;
    int first_nonneg = static_cast<int>(kept.size());
    for (int k = 0; k < static_cast<int>(kept.size()); ++k)
        if (kept[static_cast<std::size_t>(k)].lambda >= 0.0) {
            first_nonneg = k;
            break;
        }
    for (int k = 0; k < static_cast<int>(kept.size()); ++k) {
        const RefinedRoot& r = kept[static_cast<std::size_t>(k)];
        spec.entries.push_back(
            {k - first_nonneg, r.lambda, r.residual, r.lo, r.hi, r.iterations});
    }
    return spec;
}

} // namespace dtk
