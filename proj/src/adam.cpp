#include "mgcn/adam.hpp"

#include <cmath>

#include "mgcn/error.hpp"

namespace mgcn {

void Adam::step(std::span<Parameter* const> params) {
    if (m_.empty()) {
        for (Parameter* p : params) {
            m_.emplace_back(p->tensor().shape());
            v_.emplace_back(p->tensor().shape());
        }
    }
    if (m_.size() != params.size())
        throw InternalError("adam: parameter list changed between steps");

    ++step_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        Tensor& w = params[i]->tensor();
        Tensor& g = params[i]->grad();
        Tensor& m = m_[i];
        Tensor& v = v_[i];
        if (!m.same_shape(w))
            throw InternalError("adam: moment shape mismatch for '" +
                                params[i]->name() + "'");
        for (std::size_t k = 0; k < w.size(); ++k) {
            m[k] = beta1_ * m[k] + (1.0 - beta1_) * g[k];
            v[k] = beta2_ * v[k] + (1.0 - beta2_) * g[k] * g[k];
            const double mhat = m[k] / bc1;
            const double vhat = v[k] / bc2;
            w[k] -= lr_ * mhat / (std::sqrt(vhat) + epsilon_);
        }
        g.fill(0.0);
    }
}

} // namespace mgcn
