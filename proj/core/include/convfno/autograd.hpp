#pragma once

#include <functional>
#include <vector>

#include "convfno/tensor.hpp"

namespace convfno {

/// Dynamic reverse-mode tape over a fixed primitive set. Node indices are
/// append-only, so parents always precede children and the reverse pass is a
/// single backwards sweep. One tape per (sample, forward); independent tapes
/// may run on different threads.
class Tape {
public:
    using BackwardFn = std::function<void(Tape&, const Tensor& grad_out)>;

    int leaf(Tensor value, bool requires_grad = false);

    int make_node(Tensor value, std::vector<int> parents, BackwardFn bwd);

    const Tensor& value(int id) const { return nodes_[check(id)].value; }
    bool needs_grad(int id) const { return nodes_[check(id)].requires; }

    /// Seeds the (scalar) output with 1 and sweeps the tape in reverse.
    void backward(int output_id);
    void backward(int output_id, const Tensor& seed);

    bool has_grad(int id) const { return nodes_[check(id)].grad.defined(); }
    const Tensor& grad(int id) const;

    void accum_grad(int id, const Tensor& g);

    size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        std::vector<int> parents;
        BackwardFn bwd;
        Tensor grad;
        bool requires = false;
    };

    int check(int id) const {
        if (id < 0 || id >= static_cast<int>(nodes_.size()))
            throw std::out_of_range("Tape: bad node id " + std::to_string(id));
        return id;
    }

    std::vector<Node> nodes_;
    bool swept_ = false;
};

// Elementwise / reduction primitives.
int op_add(Tape& t, int a, int b);
int op_sub(Tape& t, int a, int b);
int op_scale(Tape& t, int a, double s);
int op_mul(Tape& t, int a, int b);
int op_sum(Tape& t, int a);  // full reduction to shape {1}

}  // namespace convfno
