#pragma once

#include <optional>
#include <string>

#include "diractk/solve.hpp"

namespace dtk {

// Everything a run needs; loaded from JSON, individual fields overridable
// from the command line.
struct ProblemConfig {
    std::string p_expr = "0";
    std::string q_expr = "0";
    std::optional<std::string> samples_path; // CSV x,re_p,im_p,re_q,im_q instead of expressions
    std::string q1_expr;                     // Schroedinger potential (schrod command)
    double b = 1.0;
    int grid_M = 2000;
    int order = 10;
    double ridge = 0.0;
    BoundaryCondition boundary{Mat2{1.0, 0.0, 0.0, 0.0}, Mat2{0.0, 0.0, 1.0, 0.0}};
    double lambda_min = 0.0;
    double lambda_max = 10.0;
    std::optional<double> lambda_step; // default pi/(4b)
    cplx ivp_a{1.0, 0.0};
    cplx ivp_b{0.0, 0.0};
    double ivp_lambda = 1.0;
    std::string out_prefix = "diractk_out";
};

ProblemConfig load_config(const std::string& path);

enum class Command { Fit, Ivp, Eig, KernelError, Schrod };
Command parse_command(const std::string& name);

// Runs the requested stage chain and writes the output files; throws
// dtk::Error on failure, leaving no partial outputs behind.
void run_pipeline(const ProblemConfig& cfg, Command command);

std::string describe_output();

// 17-significant-digit, locale-independent float formatting for CSV output
std::string format_double(double v);

} // namespace dtk
