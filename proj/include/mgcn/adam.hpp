#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgcn/params.hpp"

namespace mgcn {

// Bias-corrected Adam. Moment tensors are kept per parameter, parallel to
// the parameter list handed to the first step() call. Gradients are zeroed
// after each update.
class Adam {
public:
    explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

    void step(std::span<Parameter* const> params);
    std::uint64_t steps() const { return step_; }
    double learning_rate() const { return lr_; }

private:
    double lr_;
    double beta1_;
    double beta2_;
    double epsilon_;
    std::uint64_t step_ = 0;
    std::vector<Tensor> m_;
    std::vector<Tensor> v_;
};

} // namespace mgcn
