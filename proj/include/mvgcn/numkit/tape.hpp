#pragma once

#include <cstdint>
#include <vector>

#include "mvgcn/numkit/kernels.hpp"
#include "mvgcn/numkit/sparse.hpp"
#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

/// Reverse-mode differentiation tape. Nodes are appended in execution order,
/// so inputs of node k always have ids < k. Every primitive output is kept,
/// which makes the backward sweep a pure read of recorded activations.
/// A tape is confined to one thread; rebuild it for every forward pass.
class Tape {
 public:
  using NodeId = std::int32_t;

  /// Records an input tensor. Parameters pass requires_grad=true; data leaves
  /// keep the default and the backward sweep will not propagate into them.
  NodeId leaf(Tensor value, bool requires_grad = false);

  NodeId matmul(NodeId a, NodeId b);
  /// Sparse-dense product with a constant (non-differentiated) left factor.
  /// The matrix must outlive the tape.
  NodeId spmm(const CsrMatrix& s, NodeId x);
  NodeId add(NodeId a, NodeId b);
  NodeId hadamard(NodeId a, NodeId b);
  NodeId activation(NodeId a, Activation kind);
  NodeId concat_cols(NodeId a, NodeId b);
  NodeId reshape(NodeId a, std::vector<std::int64_t> dims);
  NodeId scale(NodeId a, double factor);
  /// Scalar node: sum of elementwise Huber losses against a constant target.
  NodeId huber_sum(NodeId pred, Tensor target, double delta);

  const Tensor& value(NodeId id) const;
  std::size_t size() const { return nodes_.size(); }

  /// Reverse sweep from a scalar node. Returns one gradient tensor per node;
  /// entries stay empty for nodes the loss does not depend on and for
  /// branches that contain no differentiable leaf.
  std::vector<Tensor> backward(NodeId loss_node) const;

  /// Recomputes every non-leaf value from the recorded leaves.
  std::vector<Tensor> replay() const;

 private:
  enum class Op : std::uint8_t {
    Leaf,
    MatMul,
    Spmm,
    Add,
    Hadamard,
    Activate,
    ConcatCols,
    Reshape,
    Scale,
    HuberSum,
  };

  struct Node {
    Op op = Op::Leaf;
    NodeId in0 = -1;
    NodeId in1 = -1;
    Tensor value;
    bool requires_grad = false;  // leaves
    bool needs_grad = false;     // any differentiable leaf upstream
    Activation act = Activation::Relu;
    double factor = 0.0;  // scale factor / huber delta
    Tensor target;        // huber
    const CsrMatrix* sparse = nullptr;
    std::vector<std::int64_t> input_dims;  // reshape
  };

  NodeId push(Node node);
  void check_id(NodeId id) const;
  Tensor eval(const Node& node, const std::vector<Tensor>& values) const;

  std::vector<Node> nodes_;
};

}  // namespace mvgcn::numkit
