#include "mgcn/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& shape) {
    if (shape.empty())
        throw InternalError("tensor: empty shape");
    std::size_t n = 1;
    for (std::size_t e : shape) {
        if (e == 0)
            throw InternalError("tensor: zero extent in shape");
        n *= e;
    }
    return n;
}

} // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), values_(checked_product(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != checked_product(shape_))
        throw InternalError("tensor: " + std::to_string(values_.size()) +
                            " values for shape " + shape_str());
}

Tensor Tensor::scalar(double v) { return Tensor({1}, std::vector<double>{v}); }

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
    return Tensor({rows, cols}, std::move(values));
}

std::size_t Tensor::rows() const {
    if (rank() != 2)
        throw InternalError("tensor: rows() on rank-" + std::to_string(rank()) +
                            " tensor");
    return shape_[0];
}

std::size_t Tensor::cols() const {
    if (rank() != 2)
        throw InternalError("tensor: cols() on rank-" + std::to_string(rank()) +
                            " tensor");
    return shape_[1];
}

double& Tensor::at(std::size_t r, std::size_t c) {
    return values_[r * cols() + c];
}

double Tensor::at(std::size_t r, std::size_t c) const {
    return values_[r * cols() + c];
}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

std::string Tensor::shape_str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < shape_.size(); ++i)
        os << (i ? "x" : "") << shape_[i];
    return os.str();
}

double stable_sum(std::vector<double>& buf) {
    std::sort(buf.begin(), buf.end());
    double s = 0.0;
    for (double v : buf)
        s += v;
    return s;
}

} // namespace mgcn
