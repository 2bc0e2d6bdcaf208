#include "mgcn/grad_check.hpp"

#include <cmath>

#include "mgcn/error.hpp"

namespace mgcn {

double grad_check(const std::function<Var()>& closure,
                  std::span<Parameter* const> params, double eps) {
    for (Parameter* p : params)
        p->zero_grad();
    Var loss = closure();
    backward(loss);

    std::vector<Tensor> analytic;
    analytic.reserve(params.size());
    for (Parameter* p : params)
        analytic.push_back(p->grad());

    double max_rel = 0.0;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        Tensor& w = params[pi]->tensor();
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double saved = w[k];
            w[k] = saved + eps;
            const double up = closure().value()[0];
            w[k] = saved - eps;
            const double down = closure().value()[0];
            w[k] = saved;
            const double numeric = (up - down) / (2.0 * eps);
            const double a = analytic[pi][k];
            const double rel = std::fabs(a - numeric) /
                               std::max({std::fabs(a), std::fabs(numeric),
                                         1e-8});
            if (rel > max_rel)
                max_rel = rel;
        }
    }
    for (Parameter* p : params)
        p->zero_grad();
    return max_rel;
}

} // namespace mgcn
