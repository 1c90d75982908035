#include "diractk/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "diractk/error.hpp"
#include "diractk/oracle.hpp"
#include "diractk/schrodinger.hpp"

namespace dtk {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

cplx json_to_cplx(const nlohmann::json& j) {
    if (j.is_number())
        return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return cplx(j.at(0).get<double>(), j.at(1).get<double>());
    throw ConfigError("expected a number or [re,im] pair");
}

Mat2 json_to_mat2(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_array() || j.at(0).size() != 2)
        throw ConfigError("expected a 2x2 matrix as [[..,..],[..,..]]");
    return Mat2{json_to_cplx(j.at(0).at(0)), json_to_cplx(j.at(0).at(1)),
                json_to_cplx(j.at(1).at(0)), json_to_cplx(j.at(1).at(1))};
}

// staged writer: everything lands in temporaries, renamed on success only
class OutputSet {
public:
    void add(const std::string& path, std::string content) {
        staged_.emplace_back(path, std::move(content));
    }
    void commit() {
        namespace fs = std::filesystem;
        for (const auto& [path, content] : staged_) {
            const std::string tmp = path + ".tmp";
            {
                std::ofstream os(tmp, std::ios::binary);
                if (!os)
                    throw IoError("cannot open " + tmp + " for writing");
                os << content;
                if (!os)
                    throw IoError("short write to " + tmp);
            }
            std::error_code ec;
            fs::rename(tmp, path, ec);
            if (ec)
                throw IoError("cannot move " + tmp + " into place: " + ec.message());
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> staged_;
};

PotentialSpec make_potential(const ProblemConfig& cfg) {
    if (cfg.samples_path) {
        std::ifstream is(*cfg.samples_path);
        if (!is)
            throw IoError("cannot open sample table " + *cfg.samples_path);
        std::vector<double> xs;
        std::vector<cplx> ps, qs;
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double x, pr, pi, qr, qi;
            if (!(ls >> x >> pr >> pi >> qr >> qi))
                throw ConfigError("sample table rows need x,re_p,im_p,re_q,im_q");
            xs.push_back(x);
            ps.emplace_back(pr, pi);
            qs.emplace_back(qr, qi);
        }
        if (xs.size() < 5 || xs.front() != 0.0)
            throw ConfigError("sample table must start at x=0 with at least 5 rows");
        const Grid g(xs.back(), static_cast<int>(xs.size()) - 1);
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::abs(xs[i] - g.x(static_cast<int>(i))) > 1e-9 * g.b())
                throw ConfigError("sample table abscissae must be uniform");
        return PotentialSpec::from_samples(SampledFn<cplx>(g, std::move(ps)),
                                           SampledFn<cplx>(g, std::move(qs)));
    }
    return PotentialSpec::from_expressions(cfg.p_expr, cfg.q_expr, cfg.b);
}

struct FitStage {
    std::shared_ptr<FormalPowers> fp;
    WaveBasis wb;
    KernelApprox ka;
};

FitStage run_fit_stage(const PotentialSpec& pot, const ProblemConfig& cfg) {
    const Grid grid(cfg.b, cfg.grid_M);
    const ParticularSolution sol = particular_solution(pot, grid);
    auto fp = std::make_shared<FormalPowers>(recursive_integrals(sol, pot, cfg.order));
    WaveBasis wb = calN_table(fp, cfg.order);
    KernelApprox ka = fit_kernel(wb, pot, cfg.ridge);
    return FitStage{std::move(fp), std::move(wb), std::move(ka)};
}

std::string residual_csv(const FitStage& st, const PotentialSpec& pot) {
    const Grid& g = st.ka.grid;
    const GoursatResidual gr = goursat_residual(st.ka, pot);
    std::string csv = "x,fit_residual,goursat_plus,goursat_minus\n";
    for (int i = 0; i < g.size(); ++i) {
        Mat2 r = 0.5 * pot.Q(g.x(i));
        for (int n = 0; n <= st.ka.order; ++n)
            r += st.wb.calN[static_cast<std::size_t>(n)][i] * st.ka.C[static_cast<std::size_t>(n)];
        csv += format_double(g.x(i)) + "," + format_double(frob_norm(r)) + "," +
               format_double(gr.r_plus[i]) + "," + format_double(gr.r_minus[i]) + "\n";
    }
    return csv;
}

std::string solution_csv(const SampledFn<Vec2>& y) {
    std::string csv = "x,re_y1,im_y1,re_y2,im_y2\n";
    for (int i = 0; i < y.grid.size(); ++i) {
        csv += format_double(y.grid.x(i)) + "," + format_double(y[i].v1.real()) + "," +
               format_double(y[i].v1.imag()) + "," + format_double(y[i].v2.real()) + "," +
               format_double(y[i].v2.imag()) + "\n";
    }
    return csv;
}

std::string spectrum_csv(const Spectrum& spec) {
    std::string csv = "index,lambda,residual,bracket_lo,bracket_hi\n";
    for (const SpectrumEntry& e : spec.entries) {
        csv += std::to_string(e.index) + "," + format_double(e.lambda) + "," +
               format_double(e.residual) + "," + format_double(e.bracket_lo) + "," +
               format_double(e.bracket_hi) + "\n";
    }
    return csv;
}

bool is_tanh_case(const PotentialSpec& pot, const Grid& g) {
    if (g.b() > 2.0 || !pot.p_is_zero(g))
        return false;
    for (int i = 0; i <= g.intervals(); i += std::max(1, g.intervals() / 64))
        if (std::abs(pot.q(g.x(i)) - std::tanh(g.x(i))) > 1e-12)
            return false;
    return true;
}

std::string kernel_error_csv(const FitStage& st, const PotentialSpec& pot, bool tanh_case) {
    const double b = st.ka.grid.b();
    TriMesh* mesh_ptr = nullptr;
    TriMesh mesh(b, 4);
    if (!tanh_case) {
        auto e1 = [&](double x) { return -1.0 * pot.Q(x); };
        auto e2 = [](double) { return Mat2{}; };
        mesh = goursat_successive(pot, e1, e2, TriMesh(b, 400), 200);
        mesh_ptr = &mesh;
    }
    const int nx = 60, nt = 40;
    std::string csv =
        "x,t,re_d11,im_d11,re_d12,im_d12,re_d21,im_d21,re_d22,im_d22,frob\n";
    for (int ix = 1; ix <= nx; ++ix) {
        const double x = b * ix / nx;
        for (int it = 0; it <= nt; ++it) {
            const double t = -x + 2.0 * x * it / nt;
            const Mat2 kn = kernel_eval(st.ka, x, t);
            Mat2 ref{};
            if (tanh_case) {
                const TanhKernels tk = exact_tanh_kernels(x, t);
                ref = Mat2{tk.k_cosh, 0.0, 0.0, tk.k_sech};
            } else {
                ref = mesh_ptr->kernel(x, t);
            }
            const Mat2 d = kn - ref;
            csv += format_double(x) + "," + format_double(t);
            for (const cplx v : {d.a11, d.a12, d.a21, d.a22})
                csv += "," + format_double(v.real()) + "," + format_double(v.imag());
            csv += "," + format_double(frob_norm(d)) + "\n";
        }
    }
    return csv;
}

std::string schrod_csv(const SchrodKernels& sk) {
    const double b = sk.problem->grid.b();
    const int nx = 60, nt = 40;
    std::string csv = "x,t,re_kf,im_kf,re_k1f,im_k1f\n";
    for (int ix = 1; ix <= nx; ++ix) {
        const double x = b * ix / nx;
        for (int it = 0; it <= nt; ++it) {
            const double t = -x + 2.0 * x * it / nt;
            const cplx kf = sk.k_f(x, t), k1f = sk.k_1_over_f(x, t);
            csv += format_double(x) + "," + format_double(t) + "," + format_double(kf.real()) +
                   "," + format_double(kf.imag()) + "," + format_double(k1f.real()) + "," +
                   format_double(k1f.imag()) + "\n";
        }
    }
    return csv;
}

} // namespace

ProblemConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ProblemConfig cfg;
    try {
        if (j.contains("p")) cfg.p_expr = j.at("p").get<std::string>();
        if (j.contains("q")) cfg.q_expr = j.at("q").get<std::string>();
        if (j.contains("samples")) cfg.samples_path = j.at("samples").get<std::string>();
        if (j.contains("q1")) cfg.q1_expr = j.at("q1").get<std::string>();
        if (j.contains("b")) cfg.b = j.at("b").get<double>();
        if (j.contains("grid_M")) cfg.grid_M = j.at("grid_M").get<int>();
        if (j.contains("order")) cfg.order = j.at("order").get<int>();
        if (j.contains("ridge")) cfg.ridge = j.at("ridge").get<double>();
        if (j.contains("boundary")) {
            cfg.boundary.left = json_to_mat2(j.at("boundary").at("left"));
            cfg.boundary.right = json_to_mat2(j.at("boundary").at("right"));
        }
        if (j.contains("lambda")) {
            const auto& l = j.at("lambda");
            if (l.contains("min")) cfg.lambda_min = l.at("min").get<double>();
            if (l.contains("max")) cfg.lambda_max = l.at("max").get<double>();
            if (l.contains("step")) cfg.lambda_step = l.at("step").get<double>();
        }
        if (j.contains("ivp")) {
            const auto& v = j.at("ivp");
            if (v.contains("a")) cfg.ivp_a = json_to_cplx(v.at("a"));
            if (v.contains("b")) cfg.ivp_b = json_to_cplx(v.at("b"));
            if (v.contains("lambda")) cfg.ivp_lambda = v.at("lambda").get<double>();
        }
        if (j.contains("out")) cfg.out_prefix = j.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    return cfg;
}

Command parse_command(const std::string& name) {
    if (name == "fit") return Command::Fit;
    if (name == "ivp") return Command::Ivp;
    if (name == "eig") return Command::Eig;
    if (name == "kernel-error") return Command::KernelError;
    if (name == "schrod") return Command::Schrod;
    throw ConfigError("unknown command " + name);
}

void run_pipeline(const ProblemConfig& cfg, Command command) {
    if (cfg.b <= 0.0 || cfg.grid_M < 4 || cfg.order < 0 || cfg.ridge < 0.0)
        throw ConfigError("b, grid size, order and ridge must be positive/nonnegative");
    OutputSet out;

    if (command == Command::Schrod) {
        if (cfg.q1_expr.empty())
            throw ConfigError("schrod needs a q1 expression");
        const Expression q1 = Expression::parse(cfg.q1_expr);
        const Grid grid(cfg.b, cfg.grid_M);
        auto sp = std::make_shared<SchrodProblem>(
            schrod_reduce([&](double x) { return cplx(q1.eval(x), 0.0); }, grid, cfg.order));
        const SchrodKernels sk = schrod_fit(sp, cfg.order, cfg.ridge);
        out.add(cfg.out_prefix + "_schrod_kernels.csv", schrod_csv(sk));
        out.commit();
        return;
    }

    const PotentialSpec pot = make_potential(cfg);
    const FitStage st = run_fit_stage(pot, cfg);

    switch (command) {
    case Command::Fit:
        out.add(cfg.out_prefix + "_kernel.json", kernel_to_json(st.ka));
        out.add(cfg.out_prefix + "_residual.csv", residual_csv(st, pot));
        break;
    case Command::Ivp: {
        const SampledFn<Vec2> y = solve_ivp(st.ka, cfg.ivp_a, cfg.ivp_b, cfg.ivp_lambda);
        out.add(cfg.out_prefix + "_solution.csv", solution_csv(y));
        break;
    }
    case Command::Eig: {
        const double step = cfg.lambda_step.value_or(default_scan_step(cfg.b));
        const Spectrum spec =
            find_eigenvalues(st.ka, cfg.boundary, cfg.lambda_min, cfg.lambda_max, step);
        out.add(cfg.out_prefix + "_spectrum.csv", spectrum_csv(spec));
        break;
    }
    case Command::KernelError:
        out.add(cfg.out_prefix + "_kernel_error.csv",
                kernel_error_csv(st, pot, is_tanh_case(pot, st.ka.grid)));
        break;
    case Command::Schrod:
        break; // handled above
    }
    out.commit();
}

std::string describe_output() {
    return "fit: <out>_kernel.json {order, grid{b,intervals}, coefficients [re,im], residual,\n"
           "     ridge}; <out>_residual.csv columns x, fit_residual (Frobenius norm of\n"
           "     Q/2 + sum_n N_n C_n at x), goursat_plus, goursat_minus (trace defects).\n"
           "ivp: <out>_solution.csv columns x, re_y1, im_y1, re_y2, im_y2.\n"
           "eig: <out>_spectrum.csv columns index (position relative to lambda=0), lambda,\n"
           "     residual (|det M_N| at the root), bracket_lo, bracket_hi.\n"
           "kernel-error: <out>_kernel_error.csv columns x, t, re/im of the four entries of\n"
           "     K_N - K_reference, frob (Frobenius norm). Reference is the closed-form\n"
           "     tanh kernel pair when recognized, else the successive-approximation solver.\n"
           "schrod: <out>_schrod_kernels.csv columns x, t, re_kf, im_kf, re_k1f, im_k1f.\n"
           "All CSV: 17 significant digits, '.' decimal separator, LF line endings.\n";
}

} // namespace dtk
