#pragma once

#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgcn/autodiff.hpp"

namespace mgcn {

// A named, persistent gradient-carrying leaf. The same node participates in
// every recorded computation, so gradients from all uses (weight tying,
// shared encoders) accumulate in one place.
class Parameter {
public:
    Parameter(std::string name, Tensor t)
        : name_(std::move(name)), var_(Var::leaf(std::move(t))) {}

    const std::string& name() const { return name_; }
    Var var() const { return var_; }
    Tensor& tensor() { return var_.value(); }
    const Tensor& tensor() const { return var_.value(); }
    Tensor& grad() { return var_.grad(); }
    const Tensor& grad() const { return var_.grad(); }
    void zero_grad() { var_.grad().fill(0.0); }

private:
    std::string name_;
    Var var_;
};

// Owns all parameters of a model in creation order. Names are unique.
class ParameterStore {
public:
    // Uniform init in [-range, range] drawn from rng in creation order.
    Parameter& create(const std::string& name, std::vector<std::size_t> shape,
                      std::mt19937_64& rng, double range);
    Parameter& create_zeros(const std::string& name,
                            std::vector<std::size_t> shape);

    Parameter* find(const std::string& name);
    const std::vector<std::unique_ptr<Parameter>>& all() const {
        return params_;
    }
    std::vector<Parameter*> pointers() const;
    void zero_grads();
    std::size_t total_entries() const;

private:
    Parameter& insert(const std::string& name, Tensor t);

    std::vector<std::unique_ptr<Parameter>> params_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

} // namespace mgcn
