#include "diractk/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include <nlohmann/json.hpp>

#include "diractk/error.hpp"

namespace dtk {

namespace {

double max_imag(const Mat2& m) {
    return std::max({std::abs(m.a11.imag()), std::abs(m.a12.imag()), std::abs(m.a21.imag()),
                     std::abs(m.a22.imag())});
}

} // namespace

NormalSystem build_normal_system(const WaveBasis& wb, const PotentialSpec& pot) {
    const int N = wb.order;
    const Grid& g = wb.fp->grid;
    const std::vector<double> w = g.weights();
    const SampledFn<Mat2> Q = pot.sample_Q(g);

    NormalSystem ns{N, {}, {}, {}, false};
    const int dim = ns.dim();
    ns.A.assign(static_cast<std::size_t>(dim) * dim, cplx{});
    ns.b1.assign(static_cast<std::size_t>(dim), cplx{});
    ns.b2.assign(static_cast<std::size_t>(dim), cplx{});
    auto a_at = [&](int r, int c) -> cplx& { return ns.A[static_cast<std::size_t>(r) * dim + c]; };

    double scale = 0.0, imag_part = 0.0;
    for (int i = 0; i <= N; ++i) {
        for (int j = i; j <= N; ++j) {
            Mat2 block{};
            for (int k = 0; k < g.size(); ++k)
                block += w[static_cast<std::size_t>(k)] *
                         (conj_transpose(wb.calN[static_cast<std::size_t>(i)][k]) *
                          wb.calN[static_cast<std::size_t>(j)][k]);
            a_at(2 * i, 2 * j) = block.a11;
            a_at(2 * i, 2 * j + 1) = block.a12;
            a_at(2 * i + 1, 2 * j) = block.a21;
            a_at(2 * i + 1, 2 * j + 1) = block.a22;
            if (j > i) { // Hermitian mirror
                a_at(2 * j, 2 * i) = std::conj(block.a11);
                a_at(2 * j + 1, 2 * i) = std::conj(block.a12);
                a_at(2 * j, 2 * i + 1) = std::conj(block.a21);
                a_at(2 * j + 1, 2 * i + 1) = std::conj(block.a22);
            }
            scale = std::max(scale, frob_norm(block));
            imag_part = std::max(imag_part, max_imag(block));
        }
        Mat2 rhs{};
        for (int k = 0; k < g.size(); ++k)
            rhs += (-0.5 * w[static_cast<std::size_t>(k)]) *
                   (conj_transpose(wb.calN[static_cast<std::size_t>(i)][k]) * Q[k]);
        ns.b1[static_cast<std::size_t>(2 * i)] = rhs.a11;
        ns.b1[static_cast<std::size_t>(2 * i + 1)] = rhs.a21;
        ns.b2[static_cast<std::size_t>(2 * i)] = rhs.a12;
        ns.b2[static_cast<std::size_t>(2 * i + 1)] = rhs.a22;
        imag_part = std::max(imag_part, max_imag(rhs));
    }
    ns.real_symmetric = imag_part <= 1e-13 * std::max(1.0, scale);
    return ns;
}

namespace {

template <class Matrix, class Vector>
std::pair<Vector, Vector> solve_pair(const Matrix& A, const Vector& b1, const Vector& b2,
                                     double ridge) {
    Matrix M = A;
    for (int i = 0; i < M.rows(); ++i)
        M(i, i) += ridge;
    Eigen::LDLT<Matrix> ldlt(M);
    if (ldlt.info() == Eigen::Success) {
        Vector x1 = ldlt.solve(b1);
        Vector x2 = ldlt.solve(b2);
        const double r1 = (M * x1 - b1).norm();
        const double r2 = (M * x2 - b2).norm();
        const double scale = std::max({1e-300, b1.norm(), b2.norm()});
        if (x1.allFinite() && x2.allFinite() && r1 + r2 <= 1e-6 * scale)
            return {x1, x2};
    }
    // diagonal pivoting failed, retry with full pivoting
    Eigen::FullPivLU<Matrix> lu(M);
    if (!lu.isInvertible())
        throw SingularSystem("normal equations singular at ridge " + std::to_string(ridge));
    Vector x1 = lu.solve(b1);
    Vector x2 = lu.solve(b2);
    if (!x1.allFinite() || !x2.allFinite())
        throw SingularSystem("normal-equation solve produced non-finite values");
    return {x1, x2};
}

} // namespace

std::vector<Mat2> fit_coefficients(const NormalSystem& ns, double ridge) {
    const int dim = ns.dim();
    std::vector<Mat2> out(static_cast<std::size_t>(ns.order + 1));

    if (ns.real_symmetric) {
        Eigen::MatrixXd A(dim, dim);
        Eigen::VectorXd b1(dim), b2(dim);
        for (int r = 0; r < dim; ++r) {
            b1(r) = ns.b1[static_cast<std::size_t>(r)].real();
            b2(r) = ns.b2[static_cast<std::size_t>(r)].real();
            for (int c = 0; c < dim; ++c)
                A(r, c) = ns.A[static_cast<std::size_t>(r) * dim + c].real();
        }
        auto [x1, x2] = solve_pair(A, b1, b2, ridge);
        for (int n = 0; n <= ns.order; ++n)
            out[static_cast<std::size_t>(n)] =
                Mat2{x1(2 * n), x2(2 * n), x1(2 * n + 1), x2(2 * n + 1)};
        return out;
    }

    Eigen::MatrixXcd A(dim, dim);
    Eigen::VectorXcd b1(dim), b2(dim);
    for (int r = 0; r < dim; ++r) {
        b1(r) = ns.b1[static_cast<std::size_t>(r)];
        b2(r) = ns.b2[static_cast<std::size_t>(r)];
        for (int c = 0; c < dim; ++c)
            A(r, c) = ns.A[static_cast<std::size_t>(r) * dim + c];
    }
    auto [x1, x2] = solve_pair(A, b1, b2, ridge);
    for (int n = 0; n <= ns.order; ++n)
        out[static_cast<std::size_t>(n)] = Mat2{x1(2 * n), x2(2 * n), x1(2 * n + 1), x2(2 * n + 1)};
    return out;
}

double fit_residual(const WaveBasis& wb, const PotentialSpec& pot, const std::vector<Mat2>& C) {
    const Grid& g = wb.fp->grid;
    const std::vector<double> w = g.weights();
    double acc = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        Mat2 r = 0.5 * pot.Q(g.x(k));
        for (int n = 0; n <= wb.order; ++n)
            r += wb.calN[static_cast<std::size_t>(n)][k] * C[static_cast<std::size_t>(n)];
        const double f = frob_norm(r);
        acc += w[static_cast<std::size_t>(k)] * f * f;
    }
    return std::sqrt(std::max(0.0, acc));
}

KernelApprox fit_kernel(const WaveBasis& wb, const PotentialSpec& pot, double ridge) {
    const NormalSystem ns = build_normal_system(wb, pot);
    std::vector<Mat2> C;
    double used_ridge = ridge;
    try {
        C = fit_coefficients(ns, ridge);
    } catch (const SingularSystem&) {
        bool solved = false;
        for (double r = 1e-14; r <= 1.0001e-6; r *= 10.0) {
            try {
                C = fit_coefficients(ns, r);
                used_ridge = r;
                solved = true;
                break;
            } catch (const SingularSystem&) {
            }
        }
        if (!solved)
            throw;
    }
    KernelApprox ka{wb.order, wb.fp->grid, C, assemble_kernel_coeffs(C, *wb.fp),
                    fit_residual(wb, pot, C), used_ridge};
    return ka;
}

Mat2 kernel_eval(const KernelApprox& ka, double x, double t) {
    const double slack = 1e-12 * std::max(1.0, ka.grid.b());
    if (x < -slack || x > ka.grid.b() + slack || std::abs(t) > x + slack)
        throw DomainViolation("kernel evaluation outside the triangle |t| <= x <= b");
    Mat2 horner{};
    for (int n = ka.order; n >= 0; --n)
        horner = t * horner + interp(ka.Kn[static_cast<std::size_t>(n)], x);
    return horner;
}

GoursatResidual goursat_residual(const KernelApprox& ka, const PotentialSpec& pot) {
    const Grid& g = ka.grid;
    const Mat2 B = matB();
    GoursatResidual out{SampledFn<double>(g), SampledFn<double>(g)};
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        const Mat2 kp = kernel_eval(ka, x, x);
        const Mat2 km = kernel_eval(ka, x, -x);
        out.r_plus[i] = frob_norm(-1.0 * pot.Q(x) - (B * kp - kp * B));
        out.r_minus[i] = frob_norm(B * km + km * B);
    }
    return out;
}

std::string kernel_to_json(const KernelApprox& ka) {
    nlohmann::json j;
    j["order"] = ka.order;
    j["grid"] = {{"b", ka.grid.b()}, {"intervals", ka.grid.intervals()}};
    j["residual"] = ka.residual;
    j["ridge"] = ka.ridge;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Mat2& c : ka.C) {
        coeffs.push_back({{c.a11.real(), c.a11.imag()},
                          {c.a12.real(), c.a12.imag()},
                          {c.a21.real(), c.a21.imag()},
                          {c.a22.real(), c.a22.imag()}});
    }
    j["coefficients"] = std::move(coeffs);
    return j.dump(2);
}

StoredKernel kernel_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StoredKernel sk;
    sk.order = j.at("order").get<int>();
    sk.b = j.at("grid").at("b").get<double>();
    sk.grid_intervals = j.at("grid").at("intervals").get<int>();
    sk.residual = j.at("residual").get<double>();
    sk.ridge = j.at("ridge").get<double>();
    for (const auto& c : j.at("coefficients")) {
        auto entry = [&](int idx) {
            return cplx(c.at(idx).at(0).get<double>(), c.at(idx).at(1).get<double>());
        };
        sk.C.push_back(Mat2{entry(0), entry(1), entry(2), entry(3)});
    }
    if (static_cast<int>(sk.C.size()) != sk.order + 1)
        throw ConfigError("stored kernel has wrong coefficient count");
    return sk;
}

KernelApprox rebuild_kernel(const StoredKernel& sk, const FormalPowers& fp) {
    if (fp.order < sk.order)
        throw ConfigError("formal powers truncated below the stored order");
    if (fp.grid.b() != sk.b || fp.grid.intervals() != sk.grid_intervals)
        throw ConfigError("stored kernel grid does not match the formal powers");
    return KernelApprox{sk.order, fp.grid, sk.C, assemble_kernel_coeffs(sk.C, fp), sk.residual,
                        sk.ridge};
}

} // namespace dtk
