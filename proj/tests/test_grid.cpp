#include <doctest.h>

#include <cmath>

#include "diractk/error.hpp"
#include "diractk/grid.hpp"

using namespace dtk;

namespace {
SampledFn<cplx> sample(const Grid& g, double (*f)(double)) {
    SampledFn<cplx> out(g);
    for (int i = 0; i < g.size(); ++i)
        out[i] = f(g.x(i));
    return out;
}

double max_err(const SampledFn<cplx>& got, double (*ref)(double)) {
    double worst = 0.0;
    for (int i = 0; i < got.grid.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - ref(got.grid.x(i))));
    return worst;
}
} // namespace

TEST_CASE("grid nodes") {
    const Grid g(1.0, 100);
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(100) == 1.0);
    CHECK(g.x(50) == doctest::Approx(0.5).epsilon(1e-16));
    CHECK_THROWS_AS(Grid(1.0, 3), DomainViolation);
    CHECK_THROWS_AS(Grid(-1.0, 100), DomainViolation);
}

TEST_CASE("cumint integrates constants exactly") {
    const Grid g(1.0, 100);
    const auto F = cumint(sample(g, [](double) { return 1.0; }));
    for (int i = 0; i < g.size(); ++i)
        CHECK(std::abs(F[i] - g.x(i)) <= 1e-15);
}

TEST_CASE("cumint exact on cubics") {
    const Grid g(1.0, 100);
    const auto F = cumint(sample(g, [](double s) { return s; }));
    CHECK(max_err(F, [](double x) { return x * x / 2.0; }) <= 1e-14);
    const auto F3 = cumint(sample(g, [](double s) { return s * s * s; }));
    CHECK(max_err(F3, [](double x) { return x * x * x * x / 4.0; }) <= 1e-14);
}

TEST_CASE("cumint of cos against the closed-form antiderivative") {
    const Grid g(1.0, 1000);
    const auto F = cumint(sample(g, [](double s) { return std::cos(s); }));
    CHECK(max_err(F, [](double x) { return std::sin(x); }) <= 1e-12);
}

TEST_CASE("cumint starts at zero and is linear") {
    const Grid g(2.0, 64);
    const auto f1 = sample(g, [](double s) { return std::exp(s); });
    const auto f2 = sample(g, [](double s) { return std::sin(3.0 * s); });
    SampledFn<cplx> combo(g);
    const cplx alpha(1.5, -0.25), beta(-2.0, 1.0);
    for (int i = 0; i < g.size(); ++i)
        combo[i] = alpha * f1[i] + beta * f2[i];
    const auto Fc = cumint(combo), F1 = cumint(f1), F2 = cumint(f2);
    CHECK(std::abs(Fc[0]) == 0.0);
    for (int i = 0; i < g.size(); ++i) {
        const cplx want = alpha * F1[i] + beta * F2[i];
        CHECK(std::abs(Fc[i] - want) <= 1e-13 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("cumint is fourth order") {
    auto worst = [](int m) {
        const Grid g(1.0, m);
        SampledFn<cplx> f(g);
        for (int i = 0; i < g.size(); ++i)
            f[i] = std::exp(g.x(i)) * std::sin(3.0 * g.x(i));
        const auto F = cumint(f);
        // antiderivative of e^s sin(3s): e^x (sin 3x - 3 cos 3x)/10 + 3/10
        double w = 0.0;
        for (int i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            const double ref = std::exp(x) * (std::sin(3 * x) - 3 * std::cos(3 * x)) / 10.0 + 0.3;
            w = std::max(w, std::abs(f[i].real() * 0.0 + (F[i].real() - ref)));
        }
        return w;
    };
    const double e1 = worst(200), e2 = worst(400);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("quadrature weights reproduce the full-interval cumint value") {
    const Grid g(1.3, 57);
    SampledFn<cplx> f(g);
    for (int i = 0; i < g.size(); ++i)
        f[i] = std::cos(2.0 * g.x(i)) + cplx(0, 1) * g.x(i);
    const auto F = cumint(f);
    const auto w = g.weights();
    cplx total{};
    for (int i = 0; i < g.size(); ++i)
        total += w[static_cast<std::size_t>(i)] * f[i];
    CHECK(std::abs(total - F[g.intervals()]) <= 1e-14);
}

TEST_CASE("interp reproduces nodes and low-degree polynomials") {
    const Grid g(1.0, 50);
    const auto f = sample(g, [](double s) { return s * s; });
    CHECK(std::abs(interp(f, g.x(17)) - g.x(17) * g.x(17)) == 0.0); // node hit is exact
    const auto lin = sample(g, [](double s) { return s; });
    CHECK(std::abs(interp(lin, 0.013) - 0.013) <= 1e-16);
}

TEST_CASE("interp accuracy on a smooth function") {
    const Grid g(1.0, 1000);
    const auto f = sample(g, [](double s) { return std::exp(s); });
    CHECK(std::abs(interp(f, 0.5005) - std::exp(0.5005)) <= 1e-10);
    CHECK_THROWS_AS(interp(f, 1.5), DomainViolation);
    CHECK_THROWS_AS(interp(f, -0.1), DomainViolation);
}
