#include <CLI11.hpp>
#include <iostream>

#include "diractk/error.hpp"
#include "diractk/pipeline.hpp"

namespace {

int exit_code(dtk::ErrorKind kind) {
    using dtk::ErrorKind;
    switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Eval: return 3;
    case ErrorKind::Domain: return 4;
    case ErrorKind::NonVanishing: return 5;
    case ErrorKind::Invariant: return 6;
    case ErrorKind::SingularSystem: return 7;
    case ErrorKind::ComplexCharacteristic: return 8;
    case ErrorKind::BracketLost: return 9;
    case ErrorKind::StepTooCoarse: return 10;
    case ErrorKind::Compatibility: return 11;
    case ErrorKind::NonConvergence: return 12;
    case ErrorKind::Config: return 13;
    case ErrorKind::Io: return 14;
    }
    return 1;
}

const char* kind_name(dtk::ErrorKind kind) {
    using dtk::ErrorKind;
    switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Eval: return "EvalError";
    case ErrorKind::Domain: return "DomainViolation";
    case ErrorKind::NonVanishing: return "NonVanishingViolation";
    case ErrorKind::Invariant: return "InvariantViolation";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ComplexCharacteristic: return "ComplexCharacteristic";
    case ErrorKind::BracketLost: return "BracketLost";
    case ErrorKind::StepTooCoarse: return "StepTooCoarse";
    case ErrorKind::Compatibility: return "CompatibilityViolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transmutation-kernel solver for one-dimensional Dirac systems"};
    app.require_subcommand(1);

    std::string config_path, out_prefix, p_expr, q_expr, q1_expr;
    double b = -1.0, ridge = -1.0, lmin = 0.0, lmax = 0.0, lstep = -1.0;
    double iv_lambda = 0.0, ia_re = 0.0, ia_im = 0.0, ib_re = 0.0, ib_im = 0.0;
    int grid_m = -1, order = -1;
    bool have_lmin = false, have_lmax = false, have_ivp_lambda = false, have_ic = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON problem configuration");
        cmd->add_option("--b", b, "interval endpoint");
        cmd->add_option("--grid", grid_m, "number of grid intervals M");
        cmd->add_option("--order", order, "approximation order N");
        cmd->add_option("--ridge", ridge, "Tikhonov regularization parameter");
        cmd->add_option("--out", out_prefix, "output path prefix");
        cmd->add_option("--p", p_expr, "expression for p(x)");
        cmd->add_option("--q", q_expr, "expression for q(x)");
        cmd->add_option("--lambda-min", lmin)->each([&](const std::string&) { have_lmin = true; });
        cmd->add_option("--lambda-max", lmax)->each([&](const std::string&) { have_lmax = true; });
        cmd->add_option("--lambda-step", lstep);
        return cmd;
    };

    add_common(app.add_subcommand("fit", "fit the kernel and write it with residual curves"));
    auto* ivp = add_common(app.add_subcommand("ivp", "solve an initial value problem"));
    ivp->add_option("--lambda", iv_lambda)->each([&](const std::string&) { have_ivp_lambda = true; });
    ivp->add_option("--ic-a-re", ia_re)->each([&](const std::string&) { have_ic = true; });
    ivp->add_option("--ic-a-im", ia_im)->each([&](const std::string&) { have_ic = true; });
    ivp->add_option("--ic-b-re", ib_re)->each([&](const std::string&) { have_ic = true; });
    ivp->add_option("--ic-b-im", ib_im)->each([&](const std::string&) { have_ic = true; });
    add_common(app.add_subcommand("eig", "locate real eigenvalues on a scan interval"));
    add_common(app.add_subcommand("kernel-error", "compare the fitted kernel with an oracle"));
    auto* schrod = add_common(
        app.add_subcommand("schrod", "Schroedinger reduction and the two scalar kernels"));
    schrod->add_option("--q1", q1_expr, "expression for the Schroedinger potential");
    app.add_subcommand("describe-output", "print the output file formats");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    if (sub->get_name() == "describe-output") {
        std::cout << dtk::describe_output();
        return 0;
    }

    try {
        dtk::ProblemConfig cfg =
            config_path.empty() ? dtk::ProblemConfig{} : dtk::load_config(config_path);
        if (!p_expr.empty()) cfg.p_expr = p_expr;
        if (!q_expr.empty()) cfg.q_expr = q_expr;
        if (!q1_expr.empty()) cfg.q1_expr = q1_expr;
        if (b > 0.0) cfg.b = b;
        if (grid_m > 0) cfg.grid_M = grid_m;
        if (order >= 0) cfg.order = order;
        if (ridge >= 0.0) cfg.ridge = ridge;
        if (have_lmin) cfg.lambda_min = lmin;
        if (have_lmax) cfg.lambda_max = lmax;
        if (lstep > 0.0) cfg.lambda_step = lstep;
        if (have_ivp_lambda) cfg.ivp_lambda = iv_lambda;
        if (have_ic) {
            cfg.ivp_a = dtk::cplx(ia_re, ia_im);
            cfg.ivp_b = dtk::cplx(ib_re, ib_im);
        }
        if (!out_prefix.empty()) cfg.out_prefix = out_prefix;

        dtk::run_pipeline(cfg, dtk::parse_command(sub->get_name()));
    } catch (const dtk::Error& e) {
        std::cerr << "error: stage=" << sub->get_name() << " kind=" << kind_name(e.kind())
                  << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: stage=" << sub->get_name() << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
