#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mgcn {

// Dense 64-bit real array in row-major order. Shape extents are >= 1 and
// the value count always equals the product of the extents. Scalars use
// shape {1}.
class Tensor {
public:
    Tensor() : shape_{1}, values_(1, 0.0) {}
    explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
    Tensor(std::vector<std::size_t> shape, std::vector<double> values);

    static Tensor scalar(double v);
    static Tensor matrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return values_.size(); }

    // 2-D accessors; rank is checked.
    std::size_t rows() const;
    std::size_t cols() const;
    double& at(std::size_t r, std::size_t c);
    double at(std::size_t r, std::size_t c) const;

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    void fill(double v);
    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    std::string shape_str() const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> values_;
};

// Sums `buf` after sorting it ascending. The result depends only on the
// multiset of values, never on their incoming order; reductions across the
// node axis use this so that node permutations cannot perturb outputs.
double stable_sum(std::vector<double>& buf);

} // namespace mgcn
