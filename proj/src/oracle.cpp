#include "diractk/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "diractk/error.hpp"

namespace dtk {

int ode_reference_steps(double lambda, double b, int grid_intervals) {
    // RK4 global error ~ (|lambda| h)^4 |lambda| b / 30; keep it near 1e-11
    const double la = std::max(1.0, std::abs(lambda));
    const double steps = b * la * std::pow(la * b / 3e-11, 0.25);
    const int floor_steps = 8 * grid_intervals;
    return std::max(floor_steps, static_cast<int>(std::ceil(steps)));
}

SampledFn<Vec2> ode_reference(const PotentialSpec& pot, double lambda, Vec2 ic, const Grid& grid,
                              int steps) {
    const int m = grid.intervals();
    const int substeps = (steps + m - 1) / m;
    const double h = grid.step() / substeps;
    if (std::abs(lambda) * h >= 0.1)
        throw StepTooCoarse("RK4 step too coarse for this lambda");

    const Mat2 B = matB();
    auto rhs = [&](double x, const Vec2& y) {
        return B * (pot.Q(x) * y) - lambda * (B * y);
    };
    SampledFn<Vec2> out(grid);
    Vec2 y = ic;
    out[0] = y;
    for (int i = 0; i < m; ++i) {
        double x = grid.x(i);
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

Mat2 TriMesh::kernel(double x, double t) const {
    const double xi = 0.5 * (x + t), eta = 0.5 * (x - t);
    const double hh = h();
    if (xi < -1e-12 || eta < -1e-12 || xi + eta > b * (1.0 + 1e-12))
        throw DomainViolation("kernel point outside the characteristic triangle");
    int i = std::max(0, std::min(static_cast<int>(std::floor(xi / hh)), L - 1));
    int j = std::max(0, std::min(static_cast<int>(std::floor(eta / hh)), L - 1));
    while (i + j > L - 1) // keep the cell inside the triangle
        (i > j) ? --i : --j;
    const double fx = xi / hh - i, fy = eta / hh - j;
    const Mat2 h00 = at(i, j), h10 = at(i + 1, j), h01 = at(i, j + 1);
    // missing corner on the hypotenuse completed by bilinear consistency
    const Mat2 h11 = (i + 1 + j + 1 <= L) ? at(i + 1, j + 1) : h10 + h01 - h00;
    return (1.0 - fx) * (1.0 - fy) * h00 + fx * (1.0 - fy) * h10 + (1.0 - fx) * fy * h01 +
           fx * fy * h11;
}

double TriMesh::max_norm() const {
    double mx = 0.0;
    for (int i = 0; i <= L; ++i)
        for (int j = 0; i + j <= L; ++j)
            mx = std::max(mx, frob_norm(at(i, j)));
    return mx;
}

namespace {

// shared successive-approximation driver; `volterra` computes H_n from H_{n-1}
template <class StepFn>
TriMesh successive_sum(TriMesh h0, StepFn volterra, int iterations, SuccessiveStats* stats) {
    const int L = h0.L;
    TriMesh sum = h0;
    TriMesh prev = std::move(h0);
    double last_inc = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    for (int n = 1; n <= iterations; ++n) {
        TriMesh next(sum.b, L);
        volterra(prev, next);
        double inc = 0.0;
        for (int i = 0; i <= L; ++i)
            for (int j = 0; i + j <= L; ++j) {
                sum.at(i, j) += next.at(i, j);
                inc = std::max(inc, frob_norm(next.at(i, j)));
            }
        if (stats) {
            stats->iterations = n;
            stats->last_increment = inc;
            stats->increment_norms.push_back(inc);
        }
        if (inc > last_inc) {
            if (++growth_streak >= 3)
                throw NonConvergence("successive approximations diverge");
        } else {
            growth_streak = 0;
        }
        last_inc = inc;
        if (inc < 1e-13)
            break;
        prev = std::move(next);
    }
    return sum;
}

} // namespace

TriMesh goursat_successive(const PotentialSpec& pot, const std::function<Mat2(double)>& E1,
                           const std::function<Mat2(double)>& E2, TriMesh mesh, int iterations,
                           SuccessiveStats* stats) {
    const int L = mesh.L;
    const double h = mesh.h();
    const Mat2 B = matB();

    double scale1 = 0.0, scale2 = 0.0, bad1 = 0.0, bad2 = 0.0;
    for (int k = 0; k <= L; ++k) {
        const Mat2 e1 = E1(k * h), e2 = E2(k * h);
        scale1 = std::max(scale1, frob_norm(e1));
        scale2 = std::max(scale2, frob_norm(e2));
        bad1 = std::max(bad1, frob_norm(proj(e1, ProjSign::Minus)));
        bad2 = std::max(bad2, frob_norm(proj(e2, ProjSign::Plus)));
    }
    if (bad1 > 1e-10 * std::max(1.0, scale1) || bad2 > 1e-10 * std::max(1.0, scale2))
        throw CompatibilityViolation("E1 must anticommute and E2 commute with B");

    for (int i = 0; i <= L; ++i)
        for (int j = 0; i + j <= L; ++j)
            mesh.at(i, j) = -0.5 * (B * E1(i * h)) - 0.5 * (B * E2(j * h));

    std::vector<Mat2> bq(static_cast<std::size_t>(L + 1));
    for (int k = 0; k <= L; ++k)
        bq[static_cast<std::size_t>(k)] = B * pot.Q(k * h);

    auto volterra = [&](const TriMesh& prev, TriMesh& next) {
        // rows: int_0^xi BQ(u+eta) P+[H(u,eta)] du, cumulative trapezoid
        for (int j = 0; j <= L; ++j) {
            Mat2 acc{};
            Mat2 f_prev = bq[static_cast<std::size_t>(j)] * proj(prev.at(0, j), ProjSign::Plus);
            next.at(0, j) = Mat2{};
            for (int i = 1; i + j <= L; ++i) {
                const Mat2 f_cur =
                    bq[static_cast<std::size_t>(i + j)] * proj(prev.at(i, j), ProjSign::Plus);
                acc += (h / 2.0) * (f_prev + f_cur);
                next.at(i, j) = acc;
                f_prev = f_cur;
            }
        }
        // columns: int_0^eta BQ(xi+v) P-[H(xi,v)] dv
        for (int i = 0; i <= L; ++i) {
            Mat2 acc{};
            Mat2 f_prev = bq[static_cast<std::size_t>(i)] * proj(prev.at(i, 0), ProjSign::Minus);
            for (int j = 1; i + j <= L; ++j) {
                const Mat2 f_cur =
                    bq[static_cast<std::size_t>(i + j)] * proj(prev.at(i, j), ProjSign::Minus);
                acc += (h / 2.0) * (f_prev + f_cur);
                next.at(i, j) += acc;
                f_prev = f_cur;
            }
        }
    };
    return successive_sum(std::move(mesh), volterra, iterations, stats);
}

TriMesh cauchy_successive(const PotentialSpec& pot, const std::function<Mat2(double)>& F,
                          TriMesh mesh, int iterations, SuccessiveStats* stats) {
    const int L = mesh.L;
    const double h = mesh.h();
    const double b = mesh.b;
    const Mat2 B = matB();

    for (int i = 0; i <= L; ++i)
        for (int j = 0; i + j <= L; ++j)
            mesh.at(i, j) =
                proj(F(2.0 * i * h - b), ProjSign::Plus) + proj(F(b - 2.0 * j * h), ProjSign::Minus);

    std::vector<Mat2> bq(static_cast<std::size_t>(L + 1));
    for (int k = 0; k <= L; ++k)
        bq[static_cast<std::size_t>(k)] = B * pot.Q(k * h);

    auto volterra = [&](const TriMesh& prev, TriMesh& next) {
        // rows: -int_xi^{b-eta} BQ(u+eta) P+[H(u,eta)] du, suffix trapezoid
        for (int j = 0; j <= L; ++j) {
            const int top = L - j;
            Mat2 acc{};
            next.at(top, j) = Mat2{};
            Mat2 f_next = bq[static_cast<std::size_t>(top + j)] *
                          proj(prev.at(top, j), ProjSign::Plus);
            for (int i = top - 1; i >= 0; --i) {
                const Mat2 f_cur =
                    bq[static_cast<std::size_t>(i + j)] * proj(prev.at(i, j), ProjSign::Plus);
                acc += (h / 2.0) * (f_cur + f_next);
                next.at(i, j) = -1.0 * acc;
                f_next = f_cur;
            }
        }
        // columns: -int_eta^{b-xi} BQ(xi+v) P-[H(xi,v)] dv
        for (int i = 0; i <= L; ++i) {
            const int top = L - i;
            Mat2 acc{};
            Mat2 f_next = bq[static_cast<std::size_t>(i + top)] *
                          proj(prev.at(i, top), ProjSign::Minus);
            for (int j = top - 1; j >= 0; --j) {
                const Mat2 f_cur =
                    bq[static_cast<std::size_t>(i + j)] * proj(prev.at(i, j), ProjSign::Minus);
                acc += (h / 2.0) * (f_cur + f_next);
                next.at(i, j) += -1.0 * acc;
                f_next = f_cur;
            }
        }
    };
    return successive_sum(std::move(mesh), volterra, iterations, stats);
}

namespace {

// G(w) = sum_k (w/4)^k / (k! (k+1)!) = 2 I_1(sqrt(w)) / sqrt(w), entire in w
double bessel_G(double w) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= w / (4.0 * k * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

// G'(w) = sum_k w^k / (4^{k+1} k! (k+2)!)
double bessel_Gp(double w) {
    double term = 1.0 / 8.0, sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= w / (4.0 * k * (k + 2));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

double dx_k_cosh(double x, double tau) {
    const double w = x * x - tau * tau;
    return 0.25 * bessel_G(w) + 0.5 * x * (x + tau) * bessel_Gp(w);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double m,
                        double fm, double b2, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b2);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b2 - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b2, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b2, double tol) {
    if (a == b2)
        return 0.0;
    const double m = 0.5 * (a + b2);
    const double fa = f(a), fm = f(m), fb = f(b2);
    const double whole = (b2 - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, fa, m, fm, b2, fb, whole, tol, 48);
}

void check_tanh_domain(double x, double t) {
    if (std::abs(t) > x * (1.0 + 1e-12) + 1e-15 || x > 2.0 + 1e-12 || x < 0.0)
        throw DomainViolation("tanh kernel requested outside |t| <= x <= 2");
}

} // namespace

double exact_k_cosh(double x, double t) {
    check_tanh_domain(x, t);
    // (x+t)/4 * G(x^2 - t^2); at t = x this is the limit (x+t)/4
    return 0.25 * (x + t) * bessel_G(x * x - t * t);
}

double exact_k_sech(double x, double t) {
    check_tanh_domain(x, t);
    const double qx = std::tanh(x);
    auto integrand = [&](double tau) {
        return qx * exact_k_cosh(x, tau) - dx_k_cosh(x, tau);
    };
    return integrate(integrand, -x, t, 1e-12);
}

TanhKernels exact_tanh_kernels(double x, double t) {
    return {exact_k_cosh(x, t), exact_k_sech(x, t)};
}

} // namespace dtk
