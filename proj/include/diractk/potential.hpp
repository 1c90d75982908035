#pragma once

#include <functional>
#include <optional>
#include <string>

#include "diractk/expression.hpp"
#include "diractk/grid.hpp"
#include "diractk/mat2.hpp"

namespace dtk {

// Entries p(x), q(x) of the potential matrix Q(x) = [[p,q],[q,-p]] on [0,b].
// Backed by closed-form expressions, arbitrary callables or tabulated samples.
class PotentialSpec {
public:
    static PotentialSpec from_expressions(const std::string& p_src, const std::string& q_src,
                                          double b);
    static PotentialSpec from_callables(std::function<cplx(double)> p,
                                        std::function<cplx(double)> q, double b);
    static PotentialSpec from_samples(const SampledFn<cplx>& p, const SampledFn<cplx>& q);

    cplx p(double x) const { return p_(x); }
    cplx q(double x) const { return q_(x); }
    Mat2 Q(double x) const {
        const cplx pv = p_(x), qv = q_(x);
        return {pv, qv, qv, -pv};
    }
    double b() const { return b_; }

    SampledFn<cplx> sample_p(const Grid& g) const;
    SampledFn<cplx> sample_q(const Grid& g) const;
    SampledFn<Mat2> sample_Q(const Grid& g) const;

    // max |p| over a probe grid is below 1e-14: the Lorentz-scalar shortcut applies.
    bool p_is_zero(const Grid& g) const;
    // both entries real on a probe grid
    bool is_real(const Grid& g) const;

private:
    PotentialSpec(std::function<cplx(double)> p, std::function<cplx(double)> q, double b)
        : p_(std::move(p)), q_(std::move(q)), b_(b) {}
    std::function<cplx(double)> p_, q_;
    double b_;
};

} // namespace dtk
