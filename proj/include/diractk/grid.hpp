#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "diractk/error.hpp"
#include "diractk/mat2.hpp"

namespace dtk {

// Uniform grid x_i = i*b/M on [0,b]. Immutable after construction.
class Grid {
public:
    Grid(double endpoint, int intervals) : b_(endpoint), m_(intervals) {
        if (!(endpoint > 0.0))
            throw DomainViolation("grid endpoint must be positive");
        if (intervals < 4)
            throw DomainViolation("grid needs at least 5 points");
    }

    double b() const { return b_; }
    int intervals() const { return m_; }
    int size() const { return m_ + 1; }
    double step() const { return b_ / m_; }
    double x(int i) const { return (static_cast<double>(i) / m_) * b_; }

    bool operator==(const Grid& o) const { return b_ == o.b_ && m_ == o.m_; }

    // Weights of the full-interval quadrature consistent with cumint:
    // integral over [0,b] of samples f equals sum w_i f_i.
    std::vector<double> weights() const;

private:
    double b_;
    int m_;
};

// Samples of a function on a grid. T is cplx, Vec2 or Mat2.
template <class T>
struct SampledFn {
    Grid grid;
    std::vector<T> v;

    SampledFn(const Grid& g, T fill = T{}) : grid(g), v(static_cast<std::size_t>(g.size()), fill) {}
    SampledFn(const Grid& g, std::vector<T> values) : grid(g), v(std::move(values)) {
        if (static_cast<int>(v.size()) != g.size())
            throw DomainViolation("sample count does not match grid");
    }

    T& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    const T& operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

// Prefix integrals F_i = int_0^{x_i} f by overlapping cubic panels: each
// interval is integrated with the 4-point Newton-Cotes stencil containing it,
// so every prefix value is order-4 accurate and exact for cubics. F_0 = 0.
template <class T>
SampledFn<T> cumint(const SampledFn<T>& fn) {
    const Grid& g = fn.grid;
    const int m = g.intervals();
    const double h = g.step();
    SampledFn<T> out(g);
    out[0] = T{};
    out[1] = (h / 24.0) * (9.0 * fn[0] + 19.0 * fn[1] - 5.0 * fn[2] + 1.0 * fn[3]);
    for (int i = 1; i + 2 <= m; ++i) {
        out[i + 1] =
            out[i] + (h / 24.0) * (-1.0 * fn[i - 1] + 13.0 * fn[i] + 13.0 * fn[i + 1] - 1.0 * fn[i + 2]);
    }
    out[m] = out[m - 1] +
             (h / 24.0) * (1.0 * fn[m - 3] - 5.0 * fn[m - 2] + 19.0 * fn[m - 1] + 9.0 * fn[m]);
    return out;
}

inline std::vector<double> Grid::weights() const {
    const int m = m_;
    const double h = step();
    std::vector<double> w(static_cast<std::size_t>(m + 1), 0.0);
    auto add = [&](int i, double c) { w[static_cast<std::size_t>(i)] += c * h / 24.0; };
    add(0, 9.0), add(1, 19.0), add(2, -5.0), add(3, 1.0);
    for (int i = 1; i + 2 <= m; ++i) {
        add(i - 1, -1.0), add(i, 13.0), add(i + 1, 13.0), add(i + 2, -1.0);
    }
    add(m - 3, 1.0), add(m - 2, -5.0), add(m - 1, 19.0), add(m, 9.0);
    return w;
}

// Local cubic Lagrange interpolation, stencil clamped at the endpoints.
// Exact at the nodes and for polynomials up to degree 3.
template <class T>
T interp(const SampledFn<T>& fn, double x) {
    const Grid& g = fn.grid;
    const double h = g.step();
    if (x < -1e-12 * g.b() || x > g.b() * (1.0 + 1e-12))
        throw DomainViolation("interpolation point outside [0,b]");
    int j = static_cast<int>(std::floor(x / h)) - 1;
    if (j < 0) j = 0;
    if (j > g.intervals() - 3) j = g.intervals() - 3;
    const double x0 = g.x(j), x1 = g.x(j + 1), x2 = g.x(j + 2), x3 = g.x(j + 3);
    const double l0 = (x - x1) * (x - x2) * (x - x3) / ((x0 - x1) * (x0 - x2) * (x0 - x3));
    const double l1 = (x - x0) * (x - x2) * (x - x3) / ((x1 - x0) * (x1 - x2) * (x1 - x3));
    const double l2 = (x - x0) * (x - x1) * (x - x3) / ((x2 - x0) * (x2 - x1) * (x2 - x3));
    const double l3 = (x - x0) * (x - x1) * (x - x2) / ((x3 - x0) * (x3 - x1) * (x3 - x2));
    return l0 * fn[j] + l1 * fn[j + 1] + l2 * fn[j + 2] + l3 * fn[j + 3];
}

} // namespace dtk
