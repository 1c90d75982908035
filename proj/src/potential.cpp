#include "diractk/potential.hpp"

#include <cmath>
#include <memory>

#include "diractk/error.hpp"

namespace dtk {

PotentialSpec PotentialSpec::from_expressions(const std::string& p_src, const std::string& q_src,
                                              double b) {
    auto pe = std::make_shared<Expression>(Expression::parse(p_src));
    auto qe = std::make_shared<Expression>(Expression::parse(q_src));
    return PotentialSpec([pe](double x) { return cplx(pe->eval(x), 0.0); },
                         [qe](double x) { return cplx(qe->eval(x), 0.0); }, b);
}

PotentialSpec PotentialSpec::from_callables(std::function<cplx(double)> p,
                                            std::function<cplx(double)> q, double b) {
    return PotentialSpec(std::move(p), std::move(q), b);
}

PotentialSpec PotentialSpec::from_samples(const SampledFn<cplx>& p, const SampledFn<cplx>& q) {
    if (!(p.grid == q.grid))
        throw ConfigError("p and q samples live on different grids");
    auto ps = std::make_shared<SampledFn<cplx>>(p);
    auto qs = std::make_shared<SampledFn<cplx>>(q);
    return PotentialSpec([ps](double x) { return interp(*ps, x); },
                         [qs](double x) { return interp(*qs, x); }, p.grid.b());
}

SampledFn<cplx> PotentialSpec::sample_p(const Grid& g) const {
    SampledFn<cplx> out(g);
    for (int i = 0; i <= g.intervals(); ++i) {
        out[i] = p_(g.x(i));
        if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
            throw EvalError("p(x) not finite at a grid node");
    }
    return out;
}

SampledFn<cplx> PotentialSpec::sample_q(const Grid& g) const {
    SampledFn<cplx> out(g);
    for (int i = 0; i <= g.intervals(); ++i) {
        out[i] = q_(g.x(i));
        if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
            throw EvalError("q(x) not finite at a grid node");
    }
    return out;
}

SampledFn<Mat2> PotentialSpec::sample_Q(const Grid& g) const {
    SampledFn<Mat2> out(g);
    for (int i = 0; i <= g.intervals(); ++i)
        out[i] = Q(g.x(i));
    return out;
}

bool PotentialSpec::p_is_zero(const Grid& g) const {
    for (int i = 0; i <= g.intervals(); ++i)
        if (std::abs(p_(g.x(i))) >= 1e-14)
            return false;
    return true;
}

bool PotentialSpec::is_real(const Grid& g) const {
    for (int i = 0; i <= g.intervals(); ++i)
        if (std::abs(p_(g.x(i)).imag()) > 0.0 || std::abs(q_(g.x(i)).imag()) > 0.0)
            return false;
    return true;
}

} // namespace dtk
