#include "mvgcn/numkit/tape.hpp"

#include <cmath>
#include <stdexcept>

namespace mvgcn::numkit {

namespace {

std::int64_t dim_product(const std::vector<std::int64_t>& dims) {
  std::int64_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

}  // namespace

Tape::NodeId Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Tape::check_id(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size())
    throw std::invalid_argument("tape: unrecorded node id");
}

Tape::NodeId Tape::leaf(Tensor value, bool requires_grad) {
  Node n;
  n.op = Op::Leaf;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  n.needs_grad = requires_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
  check_id(a);
  check_id(b);
  Node n;
  n.op = Op::MatMul;
  n.in0 = a;
  n.in1 = b;
  n.value = numkit::matmul(nodes_[a].value, nodes_[b].value);
  n.needs_grad = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::spmm(const CsrMatrix& s, NodeId x) {
  check_id(x);
  Node n;
  n.op = Op::Spmm;
  n.in0 = x;
  n.sparse = &s;
  n.value = numkit::spmm(s, nodes_[x].value);
  n.needs_grad = nodes_[x].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
  check_id(a);
  check_id(b);
  Node n;
  n.op = Op::Add;
  n.in0 = a;
  n.in1 = b;
  n.value = numkit::add(nodes_[a].value, nodes_[b].value);
  n.needs_grad = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::hadamard(NodeId a, NodeId b) {
  check_id(a);
  check_id(b);
  Node n;
  n.op = Op::Hadamard;
  n.in0 = a;
  n.in1 = b;
  n.value = numkit::hadamard(nodes_[a].value, nodes_[b].value);
  n.needs_grad = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::activation(NodeId a, Activation kind) {
  check_id(a);
  Node n;
  n.op = Op::Activate;
  n.in0 = a;
  n.act = kind;
  n.value = numkit::apply_activation(nodes_[a].value, kind);
  n.needs_grad = nodes_[a].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::concat_cols(NodeId a, NodeId b) {
  check_id(a);
  check_id(b);
  const Tensor& ta = nodes_[a].value;
  const Tensor& tb = nodes_[b].value;
  if (ta.rows() != tb.rows()) throw std::invalid_argument("concat_cols: row counts differ");
  Tensor out = Tensor::zeros({ta.rows(), ta.cols() + tb.cols()});
  for (std::int64_t i = 0; i < ta.rows(); ++i) {
    for (std::int64_t j = 0; j < ta.cols(); ++j) out.at(i, j) = ta.at(i, j);
    for (std::int64_t j = 0; j < tb.cols(); ++j) out.at(i, ta.cols() + j) = tb.at(i, j);
  }
  Node n;
  n.op = Op::ConcatCols;
  n.in0 = a;
  n.in1 = b;
  n.value = std::move(out);
  n.needs_grad = nodes_[a].needs_grad || nodes_[b].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::reshape(NodeId a, std::vector<std::int64_t> dims) {
  check_id(a);
  const Tensor& ta = nodes_[a].value;
  if (dim_product(dims) != ta.numel()) throw std::invalid_argument("reshape: element count differs");
  Node n;
  n.op = Op::Reshape;
  n.in0 = a;
  n.input_dims = ta.dims;
  n.value = Tensor(std::move(dims), ta.data);
  n.needs_grad = nodes_[a].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::scale(NodeId a, double factor) {
  check_id(a);
  Node n;
  n.op = Op::Scale;
  n.in0 = a;
  n.factor = factor;
  n.value = numkit::scale(nodes_[a].value, factor);
  n.needs_grad = nodes_[a].needs_grad;
  return push(std::move(n));
}

Tape::NodeId Tape::huber_sum(NodeId pred, Tensor target, double delta) {
  check_id(pred);
  if (delta <= 0.0) throw std::invalid_argument("huber_sum: delta must be positive");
  const Tensor& p = nodes_[pred].value;
  if (!p.same_shape(target)) throw std::invalid_argument("huber_sum: target shape mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    const double e = std::fabs(p.data[i] - target.data[i]);
    total += e <= delta ? 0.5 * e * e : delta * e - 0.5 * delta * delta;
  }
  Node n;
  n.op = Op::HuberSum;
  n.in0 = pred;
  n.factor = delta;
  n.target = std::move(target);
  n.value = Tensor::scalar(total);
  n.needs_grad = nodes_[pred].needs_grad;
  return push(std::move(n));
}

const Tensor& Tape::value(NodeId id) const {
  check_id(id);
  return nodes_[id].value;
}

std::vector<Tensor> Tape::backward(NodeId loss_node) const {
  check_id(loss_node);
  if (nodes_[loss_node].value.numel() != 1)
    throw std::invalid_argument("backward: loss node is not scalar");

  std::vector<Tensor> grads(nodes_.size());
  grads[loss_node] = Tensor::full(nodes_[loss_node].value.dims, 1.0);

  auto bump = [&](NodeId id, Tensor delta) {
    if (!nodes_[id].needs_grad) return;
    if (grads[id].empty())
      grads[id] = std::move(delta);
    else
      grads[id] = numkit::add(grads[id], delta);
  };

  for (NodeId id = loss_node; id >= 0; --id) {
    if (grads[id].empty()) continue;
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    const Tensor& g = grads[id];
    switch (n.op) {
      case Op::Leaf:
        break;
      case Op::MatMul: {
        const Tensor& a = nodes_[n.in0].value;
        const Tensor& b = nodes_[n.in1].value;
        if (nodes_[n.in0].needs_grad) bump(n.in0, numkit::matmul(g, transpose(b)));
        if (nodes_[n.in1].needs_grad) bump(n.in1, numkit::matmul(transpose(a), g));
        break;
      }
      case Op::Spmm:
        bump(n.in0, spmm_transposed(*n.sparse, g));
        break;
      case Op::Add:
        bump(n.in0, g);
        bump(n.in1, g);
        break;
      case Op::Hadamard:
        if (nodes_[n.in0].needs_grad) bump(n.in0, numkit::hadamard(g, nodes_[n.in1].value));
        if (nodes_[n.in1].needs_grad) bump(n.in1, numkit::hadamard(g, nodes_[n.in0].value));
        break;
      case Op::Activate: {
        Tensor d = g;
        const Tensor& x = nodes_[n.in0].value;
        const Tensor& y = n.value;
        for (std::size_t i = 0; i < d.data.size(); ++i) {
          switch (n.act) {
            case Activation::Relu:
              d.data[i] *= x.data[i] > 0.0 ? 1.0 : 0.0;
              break;
            case Activation::Tanh:
              d.data[i] *= 1.0 - y.data[i] * y.data[i];
              break;
            case Activation::Sigmoid:
              d.data[i] *= y.data[i] * (1.0 - y.data[i]);
              break;
          }
        }
        bump(n.in0, std::move(d));
        break;
      }
      case Op::ConcatCols: {
        const Tensor& a = nodes_[n.in0].value;
        const Tensor& b = nodes_[n.in1].value;
        if (nodes_[n.in0].needs_grad) {
          Tensor da = Tensor::zeros(a.dims);
          for (std::int64_t i = 0; i < a.rows(); ++i)
            for (std::int64_t j = 0; j < a.cols(); ++j) da.at(i, j) = g.at(i, j);
          bump(n.in0, std::move(da));
        }
        if (nodes_[n.in1].needs_grad) {
          Tensor db = Tensor::zeros(b.dims);
          for (std::int64_t i = 0; i < b.rows(); ++i)
            for (std::int64_t j = 0; j < b.cols(); ++j) db.at(i, j) = g.at(i, a.cols() + j);
          bump(n.in1, std::move(db));
        }
        break;
      }
      case Op::Reshape: {
        Tensor d(n.input_dims, g.data);
        bump(n.in0, std::move(d));
        break;
      }
      case Op::Scale:
        bump(n.in0, numkit::scale(g, n.factor));
        break;
      case Op::HuberSum: {
        const Tensor& p = nodes_[n.in0].value;
        const double delta = n.factor;
        const double seed = g.data[0];
        Tensor d = Tensor::zeros(p.dims);
        for (std::size_t i = 0; i < p.data.size(); ++i) {
          const double e = p.data[i] - n.target.data[i];
          const double de = std::fabs(e) <= delta ? e : (e > 0.0 ? delta : -delta);
          d.data[i] = seed * de;
        }
        bump(n.in0, std::move(d));
        break;
      }
    }
  }
  return grads;
}

Tensor Tape::eval(const Node& n, const std::vector<Tensor>& values) const {
  switch (n.op) {
    case Op::Leaf:
      return n.value;
    case Op::MatMul:
      return numkit::matmul(values[n.in0], values[n.in1]);
    case Op::Spmm:
      return numkit::spmm(*n.sparse, values[n.in0]);
    case Op::Add:
      return numkit::add(values[n.in0], values[n.in1]);
    case Op::Hadamard:
      return numkit::hadamard(values[n.in0], values[n.in1]);
    case Op::Activate:
      return numkit::apply_activation(values[n.in0], n.act);
    case Op::ConcatCols: {
      const Tensor& a = values[n.in0];
      const Tensor& b = values[n.in1];
      Tensor out = Tensor::zeros({a.rows(), a.cols() + b.cols()});
      for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (std::int64_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
      }
      return out;
    }
    case Op::Reshape:
      return Tensor(n.value.dims, values[n.in0].data);
    case Op::Scale:
      return numkit::scale(values[n.in0], n.factor);
    case Op::HuberSum: {
      const Tensor& p = values[n.in0];
      const double delta = n.factor;
      double total = 0.0;
      for (std::size_t i = 0; i < p.data.size(); ++i) {
        const double e = std::fabs(p.data[i] - n.target.data[i]);
        total += e <= delta ? 0.5 * e * e : delta * e - 0.5 * delta * delta;
      }
      return Tensor::scalar(total);
    }
  }
  throw std::logic_error("tape: unknown op");
}

std::vector<Tensor> Tape::replay() const {
  std::vector<Tensor> values(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) values[i] = eval(nodes_[i], values);
  return values;
}

}  // namespace mvgcn::numkit
