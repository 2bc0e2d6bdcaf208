#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mgcn/tensor.hpp"

namespace mgcn {

// A directed edge between node indices; adjacency lists are vectors of these.
struct Edge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};
using EdgeList = std::vector<Edge>;

struct Node;
using NodeRef = std::shared_ptr<Node>;

// One value in the recorded computation. Gradients accumulate additively
// into `grad` until explicitly zeroed.
struct Node {
    Tensor value;
    Tensor grad;
    std::vector<NodeRef> inputs;
    std::function<void(Node&)> backprop; // adds into the inputs' grads
    bool requires_grad = false;
    const char* op = "leaf";

    explicit Node(Tensor v) : value(std::move(v)), grad(value.shape()) {}
};

// Cheap value-semantic handle to a graph node.
class Var {
public:
    Var() = default;
    explicit Var(NodeRef n) : node_(std::move(n)) {}

    // A node that never receives gradients.
    static Var constant(Tensor t);
    // A gradient-carrying leaf; parameters wrap one of these.
    static Var leaf(Tensor t);

    bool defined() const { return node_ != nullptr; }
    const Tensor& value() const { return node_->value; }
    Tensor& value() { return node_->value; }
    const Tensor& grad() const { return node_->grad; }
    Tensor& grad() { return node_->grad; }
    const NodeRef& node() const { return node_; }

private:
    NodeRef node_;
};

// Forward ops. Shapes are checked; mismatches throw InternalError naming the
// op and both shapes. All ops use fixed summation orders, except that
// softmax and weighted_row_sum reduce with stable_sum so results are
// invariant under permutations of the reduced axis.
Var add(const Var& a, const Var& b);               // same shape
Var mul(const Var& a, const Var& b);               // elementwise
Var scale(const Var& a, double factor);
Var div_scalar(const Var& a, double divisor);
Var matmul(const Var& a, const Var& b);            // (m,k) x (k,n)
Var transpose(const Var& a);                       // 2-D
Var reshape(const Var& a, std::vector<std::size_t> shape);
Var relu(const Var& a);
Var tanh_op(const Var& a);
Var sigmoid(const Var& a);
Var softmax(const Var& a, int axis = -1);          // rows of 2-D, or 1-D
Var concat(const std::vector<Var>& parts, int axis); // 2-D axis 0/1, 1-D axis 0
Var slice_cols(const Var& a, std::size_t start, std::size_t len);
Var gather_rows(const Var& table, std::vector<std::size_t> indices);
Var mean_rows(const Var& a);                       // (n,d) -> (1,d)
// For each node j: sum of H rows over sources i with an edge (i, j).
Var sparse_adj_matmul(const EdgeList& edges, const Var& h);
// weights (1,n) or (n); rows (n,k) -> (1,k). Permutation-stable reduction.
Var weighted_row_sum(const Var& weights, const Var& rows);
// weights (g,d), one stacked (n,d) input per graph, bias (d) -> (n,d):
// out[r][c] = sum_g w[g][c] * h_g[r][c] + b[c], accumulated in graph order.
Var conv_stack(const Var& weights, const std::vector<Var>& stacked,
               const Var& bias);
// logits (1,v) or (v); returns scalar -log softmax(logits)[target].
Var cross_entropy(const Var& logits, std::size_t target);
Var sum_all(const Var& a);                         // -> scalar

// Reverse-mode sweep from a scalar loss. Gradients of every reachable
// gradient-carrying node accumulate; the traversal is a deterministic
// reverse topological order.
void backward(const Var& loss);

} // namespace mgcn
