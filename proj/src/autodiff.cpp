#include "mgcn/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

NodeRef make_node(Tensor value, std::vector<NodeRef> inputs, const char* op) {
    auto n = std::make_shared<Node>(std::move(value));
    n->op = op;
    n->requires_grad = false;
    for (const auto& in : inputs)
        if (in->requires_grad)
            n->requires_grad = true;
    n->inputs = std::move(inputs);
    return n;
}

void check_same_shape(const Var& a, const Var& b, const char* op) {
    if (!a.value().same_shape(b.value()))
        throw InternalError(std::string(op) + ": shape mismatch " +
                            a.value().shape_str() + " vs " +
                            b.value().shape_str());
}

void check_rank2(const Var& a, const char* op) {
    if (a.value().rank() != 2)
        throw InternalError(std::string(op) + ": expected rank-2 tensor, got " +
                            a.value().shape_str());
}

// Rows/cols view of a 1-D or 2-D tensor: a 1-D vector acts as a single row.
std::pair<std::size_t, std::size_t> row_view(const Tensor& t, const char* op) {
    if (t.rank() == 1)
        return {1, t.shape()[0]};
    if (t.rank() == 2)
        return {t.shape()[0], t.shape()[1]};
    throw InternalError(std::string(op) + ": expected rank 1 or 2, got " +
                        t.shape_str());
}

} // namespace

Var Var::constant(Tensor t) {
    auto n = std::make_shared<Node>(std::move(t));
    n->op = "constant";
    n->requires_grad = false;
    return Var(n);
}

Var Var::leaf(Tensor t) {
    auto n = std::make_shared<Node>(std::move(t));
    n->op = "leaf";
    n->requires_grad = true;
    return Var(n);
}

Var add(const Var& a, const Var& b) {
    check_same_shape(a, b, "add");
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b.value()[i];
    auto n = make_node(std::move(out), {a.node(), b.node()}, "add");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            for (int k = 0; k < 2; ++k)
                if (self.inputs[k]->requires_grad)
                    for (std::size_t i = 0; i < self.grad.size(); ++i)
                        self.inputs[k]->grad[i] += self.grad[i];
        };
    return Var(n);
}

Var mul(const Var& a, const Var& b) {
    check_same_shape(a, b, "mul");
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= b.value()[i];
    auto n = make_node(std::move(out), {a.node(), b.node()}, "mul");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            const Tensor& av = self.inputs[0]->value;
            const Tensor& bv = self.inputs[1]->value;
            if (self.inputs[0]->requires_grad)
                for (std::size_t i = 0; i < self.grad.size(); ++i)
                    self.inputs[0]->grad[i] += self.grad[i] * bv[i];
            if (self.inputs[1]->requires_grad)
                for (std::size_t i = 0; i < self.grad.size(); ++i)
                    self.inputs[1]->grad[i] += self.grad[i] * av[i];
        };
    return Var(n);
}

Var scale(const Var& a, double factor) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= factor;
    auto n = make_node(std::move(out), {a.node()}, "scale");
    if (n->requires_grad)
        n->backprop = [factor](Node& self) {
            for (std::size_t i = 0; i < self.grad.size(); ++i)
                self.inputs[0]->grad[i] += self.grad[i] * factor;
        };
    return Var(n);
}

Var div_scalar(const Var& a, double divisor) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] /= divisor;
    auto n = make_node(std::move(out), {a.node()}, "div_scalar");
    if (n->requires_grad)
        n->backprop = [divisor](Node& self) {
            for (std::size_t i = 0; i < self.grad.size(); ++i)
                self.inputs[0]->grad[i] += self.grad[i] / divisor;
        };
    return Var(n);
}

Var matmul(const Var& a, const Var& b) {
    check_rank2(a, "matmul");
    check_rank2(b, "matmul");
    const Tensor& av = a.value();
    const Tensor& bv = b.value();
    if (av.cols() != bv.rows())
        throw InternalError("matmul: shape mismatch " + av.shape_str() +
                            " vs " + bv.shape_str());
    const std::size_t m = av.rows(), k = av.cols(), n_ = bv.cols();
    Tensor out({m, n_});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = av.at(i, p);
            if (aip == 0.0)
                continue;
            const double* brow = bv.data() + p * n_;
            double* orow = out.data() + i * n_;
            for (std::size_t j = 0; j < n_; ++j)
                orow[j] += aip * brow[j];
        }
    auto nd = make_node(std::move(out), {a.node(), b.node()}, "matmul");
    if (nd->requires_grad)
        nd->backprop = [m, k, n_](Node& self) {
            const Tensor& av2 = self.inputs[0]->value;
            const Tensor& bv2 = self.inputs[1]->value;
            if (self.inputs[0]->requires_grad) {
                Tensor& ga = self.inputs[0]->grad;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t p = 0; p < k; ++p) {
                        double s = 0.0;
                        const double* grow = self.grad.data() + i * n_;
                        const double* brow = bv2.data() + p * n_;
                        for (std::size_t j = 0; j < n_; ++j)
                            s += grow[j] * brow[j];
                        ga.at(i, p) += s;
                    }
            }
            if (self.inputs[1]->requires_grad) {
                Tensor& gb = self.inputs[1]->grad;
                for (std::size_t p = 0; p < k; ++p)
                    for (std::size_t i = 0; i < m; ++i) {
                        const double aip = av2.at(i, p);
                        if (aip == 0.0)
                            continue;
                        const double* grow = self.grad.data() + i * n_;
                        double* gbrow = gb.data() + p * n_;
                        for (std::size_t j = 0; j < n_; ++j)
                            gbrow[j] += aip * grow[j];
                    }
            }
        };
    return Var(nd);
}

Var transpose(const Var& a) {
    check_rank2(a, "transpose");
    const Tensor& av = a.value();
    const std::size_t r = av.rows(), c = av.cols();
    Tensor out({c, r});
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.at(j, i) = av.at(i, j);
    auto n = make_node(std::move(out), {a.node()}, "transpose");
    if (n->requires_grad)
        n->backprop = [r, c](Node& self) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    self.inputs[0]->grad.at(i, j) += self.grad.at(j, i);
        };
    return Var(n);
}

Var reshape(const Var& a, std::vector<std::size_t> shape) {
    Tensor out(std::move(shape), a.value().values());
    if (out.size() != a.value().size())
        throw InternalError("reshape: size mismatch " + a.value().shape_str() +
                            " -> " + out.shape_str());
    auto n = make_node(std::move(out), {a.node()}, "reshape");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            for (std::size_t i = 0; i < self.grad.size(); ++i)
                self.inputs[0]->grad[i] += self.grad[i];
        };
    return Var(n);
}

Var relu(const Var& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] > 0.0 ? out[i] : 0.0;
    auto n = make_node(std::move(out), {a.node()}, "relu");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            const Tensor& x = self.inputs[0]->value;
            for (std::size_t i = 0; i < self.grad.size(); ++i)
                if (x[i] > 0.0)
                    self.inputs[0]->grad[i] += self.grad[i];
        };
    return Var(n);
}

Var tanh_op(const Var& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::tanh(out[i]);
    auto n = make_node(std::move(out), {a.node()}, "tanh");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) {
                const double y = self.value[i];
                self.inputs[0]->grad[i] += self.grad[i] * (1.0 - y * y);
            }
        };
    return Var(n);
}

Var sigmoid(const Var& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 1.0 / (1.0 + std::exp(-out[i]));
    auto n = make_node(std::move(out), {a.node()}, "sigmoid");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) {
                const double y = self.value[i];
                self.inputs[0]->grad[i] += self.grad[i] * y * (1.0 - y);
            }
        };
    return Var(n);
}

Var softmax(const Var& a, int axis) {
    const Tensor& av = a.value();
    if (av.rank() == 2 && axis == 0)
        return transpose(softmax(transpose(a), 1));
    if (!(axis == -1 || (av.rank() == 1 && axis == 0) ||
          (av.rank() == 2 && axis == 1)))
        throw InternalError("softmax: unsupported axis for shape " +
                            av.shape_str());
    auto [rows, cols] = row_view(av, "softmax");
    Tensor out(av.shape());
    std::vector<double> buf(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* x = av.data() + r * cols;
        double* y = out.data() + r * cols;
        const double mx = *std::max_element(x, x + cols);
        for (std::size_t c = 0; c < cols; ++c)
            buf[c] = std::exp(x[c] - mx);
        std::vector<double> exps(buf);
        const double denom = stable_sum(exps);
        for (std::size_t c = 0; c < cols; ++c)
            y[c] = buf[c] / denom;
    }
    auto n = make_node(std::move(out), {a.node()}, "softmax");
    if (n->requires_grad)
        n->backprop = [rows, cols](Node& self) {
            for (std::size_t r = 0; r < rows; ++r) {
                const double* y = self.value.data() + r * cols;
                const double* g = self.grad.data() + r * cols;
                double dot = 0.0;
                for (std::size_t c = 0; c < cols; ++c)
                    dot += g[c] * y[c];
                double* gi = self.inputs[0]->grad.data() + r * cols;
                for (std::size_t c = 0; c < cols; ++c)
                    gi[c] += y[c] * (g[c] - dot);
            }
        };
    return Var(n);
}

Var concat(const std::vector<Var>& parts, int axis) {
    if (parts.empty())
        throw InternalError("concat: no inputs");
    const std::size_t rank = parts[0].value().rank();
    for (const auto& p : parts)
        if (p.value().rank() != rank)
            throw InternalError("concat: mixed ranks");
    std::vector<NodeRef> ins;
    ins.reserve(parts.size());
    for (const auto& p : parts)
        ins.push_back(p.node());

    if (rank == 1) {
        if (axis != 0)
            throw InternalError("concat: axis out of range for rank-1 input");
        std::size_t total = 0;
        for (const auto& p : parts)
            total += p.value().size();
        Tensor out({total});
        std::size_t off = 0;
        for (const auto& p : parts) {
            std::copy(p.value().values().begin(), p.value().values().end(),
                      out.values().begin() + static_cast<long>(off));
            off += p.value().size();
        }
        auto n = make_node(std::move(out), std::move(ins), "concat");
        if (n->requires_grad)
            n->backprop = [](Node& self) {
                std::size_t off2 = 0;
                for (auto& in : self.inputs) {
                    if (in->requires_grad)
                        for (std::size_t i = 0; i < in->grad.size(); ++i)
                            in->grad[i] += self.grad[off2 + i];
                    off2 += in->value.size();
                }
            };
        return Var(n);
    }

    if (rank != 2 || (axis != 0 && axis != 1))
        throw InternalError("concat: unsupported axis/rank");

    if (axis == 0) {
        const std::size_t cols = parts[0].value().cols();
        std::size_t rows = 0;
        for (const auto& p : parts) {
            if (p.value().cols() != cols)
                throw InternalError("concat: column mismatch " +
                                    p.value().shape_str());
            rows += p.value().rows();
        }
        Tensor out({rows, cols});
        std::size_t roff = 0;
        for (const auto& p : parts) {
            std::copy(p.value().values().begin(), p.value().values().end(),
                      out.values().begin() + static_cast<long>(roff * cols));
            roff += p.value().rows();
        }
        auto n = make_node(std::move(out), std::move(ins), "concat");
        if (n->requires_grad)
            n->backprop = [cols](Node& self) {
                std::size_t roff2 = 0;
                for (auto& in : self.inputs) {
                    if (in->requires_grad)
                        for (std::size_t i = 0; i < in->grad.size(); ++i)
                            in->grad[i] += self.grad[roff2 * cols + i];
                    roff2 += in->value.rows();
                }
            };
        return Var(n);
    }

    const std::size_t rows = parts[0].value().rows();
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.value().rows() != rows)
            throw InternalError("concat: row mismatch " + p.value().shape_str());
        cols += p.value().cols();
    }
    Tensor out({rows, cols});
    std::size_t coff = 0;
    for (const auto& p : parts) {
        const std::size_t pc = p.value().cols();
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < pc; ++c)
                out.at(r, coff + c) = p.value().at(r, c);
        coff += pc;
    }
    auto n = make_node(std::move(out), std::move(ins), "concat");
    if (n->requires_grad)
        n->backprop = [rows](Node& self) {
            std::size_t coff2 = 0;
            const std::size_t cols2 = self.value.cols();
            for (auto& in : self.inputs) {
                const std::size_t pc = in->value.cols();
                if (in->requires_grad)
                    for (std::size_t r = 0; r < rows; ++r)
                        for (std::size_t c = 0; c < pc; ++c)
                            in->grad[r * pc + c] +=
                                self.grad[r * cols2 + coff2 + c];
                coff2 += pc;
            }
        };
    return Var(n);
}

Var slice_cols(const Var& a, std::size_t start, std::size_t len) {
    check_rank2(a, "slice_cols");
    const Tensor& av = a.value();
    if (start + len > av.cols())
        throw InternalError("slice_cols: range [" + std::to_string(start) +
                            ", " + std::to_string(start + len) +
                            ") out of " + av.shape_str());
    const std::size_t rows = av.rows();
    Tensor out({rows, len});
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < len; ++c)
            out.at(r, c) = av.at(r, start + c);
    auto n = make_node(std::move(out), {a.node()}, "slice_cols");
    if (n->requires_grad)
        n->backprop = [start, len, rows](Node& self) {
            const std::size_t full = self.inputs[0]->value.cols();
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < len; ++c)
                    self.inputs[0]->grad[r * full + start + c] +=
                        self.grad[r * len + c];
        };
    return Var(n);
}

Var gather_rows(const Var& table, std::vector<std::size_t> indices) {
    check_rank2(table, "gather_rows");
    const Tensor& tv = table.value();
    const std::size_t d = tv.cols();
    for (std::size_t idx : indices)
        if (idx >= tv.rows())
            throw InternalError("gather_rows: row " + std::to_string(idx) +
                                " out of " + tv.shape_str());
    Tensor out({indices.size(), d});
    for (std::size_t r = 0; r < indices.size(); ++r)
        std::copy(tv.data() + indices[r] * d, tv.data() + (indices[r] + 1) * d,
                  out.data() + r * d);
    auto n = make_node(std::move(out), {table.node()}, "gather_rows");
    if (n->requires_grad)
        n->backprop = [idx = std::move(indices), d](Node& self) {
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < d; ++c)
                    self.inputs[0]->grad[idx[r] * d + c] +=
                        self.grad[r * d + c];
        };
    return Var(n);
}

Var mean_rows(const Var& a) {
    check_rank2(a, "mean_rows");
    const Tensor& av = a.value();
    const std::size_t rows = av.rows(), d = av.cols();
    Tensor out({1, d});
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < d; ++c)
            out[c] += av.at(r, c);
    for (std::size_t c = 0; c < d; ++c)
        out[c] /= static_cast<double>(rows);
    auto n = make_node(std::move(out), {a.node()}, "mean_rows");
    if (n->requires_grad)
        n->backprop = [rows, d](Node& self) {
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    self.inputs[0]->grad[r * d + c] +=
                        self.grad[c] / static_cast<double>(rows);
        };
    return Var(n);
}

Var sparse_adj_matmul(const EdgeList& edges, const Var& h) {
    check_rank2(h, "sparse_adj_matmul");
    const Tensor& hv = h.value();
    const std::size_t rows = hv.rows(), d = hv.cols();
    for (const Edge& e : edges)
        if (e.src >= rows || e.dst >= rows)
            throw InternalError("sparse_adj_matmul: edge (" +
                                std::to_string(e.src) + ", " +
                                std::to_string(e.dst) + ") out of " +
                                hv.shape_str());
    Tensor out({rows, d});
    // Edge-list order fixes the accumulation order per target row, so a
    // consistent relabeling of nodes and edges permutes the output exactly.
    for (const Edge& e : edges) {
        const double* src = hv.data() + e.src * d;
        double* dst = out.data() + e.dst * d;
        for (std::size_t c = 0; c < d; ++c)
            dst[c] += src[c];
    }
    auto n = make_node(std::move(out), {h.node()}, "sparse_adj_matmul");
    if (n->requires_grad)
        n->backprop = [edges, d](Node& self) {
            for (const Edge& e : edges) {
                const double* g = self.grad.data() + e.dst * d;
                double* gi = self.inputs[0]->grad.data() + e.src * d;
                for (std::size_t c = 0; c < d; ++c)
                    gi[c] += g[c];
            }
        };
    return Var(n);
}

Var weighted_row_sum(const Var& weights, const Var& rows) {
    check_rank2(rows, "weighted_row_sum");
    auto [wr, wc] = row_view(weights.value(), "weighted_row_sum");
    const Tensor& rv = rows.value();
    if (wr != 1 || wc != rv.rows())
        throw InternalError("weighted_row_sum: shape mismatch " +
                            weights.value().shape_str() + " vs " +
                            rv.shape_str());
    const std::size_t n_ = rv.rows(), d = rv.cols();
    Tensor out({1, d});
    std::vector<double> buf(n_);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < n_; ++r)
            buf[r] = weights.value()[r] * rv.at(r, c);
        out[c] = stable_sum(buf);
    }
    auto n = make_node(std::move(out), {weights.node(), rows.node()},
                       "weighted_row_sum");
    if (n->requires_grad)
        n->backprop = [n_, d](Node& self) {
            const Tensor& w = self.inputs[0]->value;
            const Tensor& r = self.inputs[1]->value;
            if (self.inputs[0]->requires_grad)
                for (std::size_t i = 0; i < n_; ++i) {
                    double s = 0.0;
                    for (std::size_t c = 0; c < d; ++c)
                        s += self.grad[c] * r.at(i, c);
                    self.inputs[0]->grad[i] += s;
                }
            if (self.inputs[1]->requires_grad)
                for (std::size_t i = 0; i < n_; ++i)
                    for (std::size_t c = 0; c < d; ++c)
                        self.inputs[1]->grad[i * d + c] +=
                            w[i] * self.grad[c];
        };
    return Var(n);
}

Var conv_stack(const Var& weights, const std::vector<Var>& stacked,
               const Var& bias) {
    if (stacked.empty())
        throw InternalError("conv_stack: no stacked inputs");
    check_rank2(weights, "conv_stack");
    const std::size_t g = stacked.size();
    const std::size_t rows = stacked[0].value().rows();
    const std::size_t d = stacked[0].value().cols();
    if (weights.value().rows() != g || weights.value().cols() != d)
        throw InternalError("conv_stack: weights " +
                            weights.value().shape_str() + " for " +
                            std::to_string(g) + " graphs of width " +
                            std::to_string(d));
    if (bias.value().size() != d)
        throw InternalError("conv_stack: bias " + bias.value().shape_str() +
                            " vs width " + std::to_string(d));
    for (const auto& s : stacked)
        if (s.value().rows() != rows || s.value().cols() != d)
            throw InternalError("conv_stack: stacked shape mismatch " +
                                s.value().shape_str());
    Tensor out({rows, d});
    for (std::size_t gi = 0; gi < g; ++gi) {
        const Tensor& hv = stacked[gi].value();
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < d; ++c)
                out.at(r, c) += weights.value().at(gi, c) * hv.at(r, c);
    }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < d; ++c)
            out.at(r, c) += bias.value()[c];
    std::vector<NodeRef> ins{weights.node()};
    for (const auto& s : stacked)
        ins.push_back(s.node());
    ins.push_back(bias.node());
    auto n = make_node(std::move(out), std::move(ins), "conv_stack");
    if (n->requires_grad)
        n->backprop = [g, rows, d](Node& self) {
            Node& w = *self.inputs[0];
            Node& b = *self.inputs[g + 1];
            for (std::size_t gi = 0; gi < g; ++gi) {
                Node& hg = *self.inputs[gi + 1];
                if (w.requires_grad)
                    for (std::size_t r = 0; r < rows; ++r)
                        for (std::size_t c = 0; c < d; ++c)
                            w.grad[gi * d + c] +=
                                self.grad[r * d + c] * hg.value[r * d + c];
                if (hg.requires_grad)
                    for (std::size_t r = 0; r < rows; ++r)
                        for (std::size_t c = 0; c < d; ++c)
                            hg.grad[r * d + c] +=
                                self.grad[r * d + c] * w.value[gi * d + c];
            }
            if (b.requires_grad)
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t c = 0; c < d; ++c)
                        b.grad[c] += self.grad[r * d + c];
        };
    return Var(n);
}

Var cross_entropy(const Var& logits, std::size_t target) {
    auto [rows, v] = row_view(logits.value(), "cross_entropy");
    if (rows != 1)
        throw InternalError("cross_entropy: expected a single row, got " +
                            logits.value().shape_str());
    if (target >= v)
        throw InternalError("cross_entropy: target " + std::to_string(target) +
                            " out of vocabulary " + std::to_string(v));
    const double* x = logits.value().data();
    const double mx = *std::max_element(x, x + v);
    double sum = 0.0;
    for (std::size_t i = 0; i < v; ++i)
        sum += std::exp(x[i] - mx);
    const double lse = mx + std::log(sum);
    Tensor out = Tensor::scalar(lse - x[target]);
    auto n = make_node(std::move(out), {logits.node()}, "cross_entropy");
    if (n->requires_grad)
        n->backprop = [target, v, lse](Node& self) {
            const double g = self.grad[0];
            const Tensor& x2 = self.inputs[0]->value;
            for (std::size_t i = 0; i < v; ++i) {
                double p = std::exp(x2[i] - lse);
                self.inputs[0]->grad[i] +=
                    g * (p - (i == target ? 1.0 : 0.0));
            }
        };
    return Var(n);
}

Var sum_all(const Var& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.value().size(); ++i)
        s += a.value()[i];
    auto n = make_node(Tensor::scalar(s), {a.node()}, "sum_all");
    if (n->requires_grad)
        n->backprop = [](Node& self) {
            for (std::size_t i = 0; i < self.inputs[0]->grad.size(); ++i)
                self.inputs[0]->grad[i] += self.grad[0];
        };
    return Var(n);
}

void backward(const Var& loss) {
    if (!loss.defined() || loss.value().size() != 1)
        throw InternalError("backward: loss must be a scalar");
    if (!loss.node()->requires_grad)
        return;

    // Iterative post-order DFS; reversing it yields a topological order with
    // every consumer processed before its producer.
    std::vector<Node*> order;
    std::unordered_set<Node*> visited;
    std::vector<std::pair<Node*, std::size_t>> stack;
    stack.emplace_back(loss.node().get(), 0);
    visited.insert(loss.node().get());
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->inputs.size()) {
            Node* in = node->inputs[next++].get();
            if (in->requires_grad && !visited.count(in)) {
                visited.insert(in);
                stack.emplace_back(in, 0);
            }
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }

    loss.node()->grad[0] += 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if ((*it)->backprop)
            (*it)->backprop(**it);
}

} // namespace mgcn
