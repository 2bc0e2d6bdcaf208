#include "mgcn/params.hpp"

#include "mgcn/error.hpp"

namespace mgcn {

Parameter& ParameterStore::insert(const std::string& name, Tensor t) {
    if (by_name_.count(name))
        throw InternalError("parameter '" + name + "' already exists");
    params_.push_back(std::make_unique<Parameter>(name, std::move(t)));
    by_name_[name] = params_.size() - 1;
    return *params_.back();
}

Parameter& ParameterStore::create(const std::string& name,
                                  std::vector<std::size_t> shape,
                                  std::mt19937_64& rng, double range) {
    Tensor t(std::move(shape));
    std::uniform_real_distribution<double> dist(-range, range);
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = dist(rng);
    return insert(name, std::move(t));
}

Parameter& ParameterStore::create_zeros(const std::string& name,
                                        std::vector<std::size_t> shape) {
    return insert(name, Tensor(std::move(shape)));
}

Parameter* ParameterStore::find(const std::string& name) {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : params_[it->second].get();
}

std::vector<Parameter*> ParameterStore::pointers() const {
    std::vector<Parameter*> out;
    out.reserve(params_.size());
    for (const auto& p : params_)
        out.push_back(p.get());
    return out;
}

void ParameterStore::zero_grads() {
    for (auto& p : params_)
        p->zero_grad();
}

std::size_t ParameterStore::total_entries() const {
    std::size_t n = 0;
    for (const auto& p : params_)
        n += p->tensor().size();
    return n;
}

} // namespace mgcn
