#pragma once

#include <functional>
#include <vector>

#include "fastsearch/kernels.hpp"
#include "fastsearch/tensor.hpp"

namespace fastsearch {

/// Integer label plane (N,H,W) for segmentation losses.
struct LabelMap {
  int n = 1, h = 0, w = 0;
  std::vector<int> v;
  int at(int ni, int hi, int wi) const { return v[(static_cast<std::size_t>(ni) * h + hi) * w + wi]; }
};

struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

/// Define-by-run reverse-mode tape over dense tensors. Nodes are appended in
/// execution order, so parents always precede children and the backward sweep
/// in descending id order is a reverse topological visit, hitting each node
/// exactly once. A tape is confined to one thread; parallelism lives inside
/// the kernels.
class Tape {
 public:
  Var leaf(Tensor value, bool requires_grad = true);
  Var constant(Tensor value);
  Var scalar_const(double v);

  const Tensor& val(Var v) const { return recs_[v.id].value; }
  /// Gradient buffer of a node (zeros if backward never reached it).
  const Tensor& grad(Var v);

  // Elementwise / structural ops.
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var scale_const(Var x, double k);
  Var add_const(Var x, const Tensor& c);
  Var log(Var x);
  Var relu(Var x);
  Var mul_scalar(Var x, Var s);  // tensor times 1-element tensor
  Var concat_c(Var a, Var b);
  Var pad_c(Var x, int c_out);
  Var sum_all(Var x);

  // Gradient-flow control.
  Var detach(Var x);
  Var grad_scale(Var x, double k);
  /// Straight-through scale: forward is x unchanged (bit-exact), backward
  /// behaves like x*(1 - sg[s] + s): gx += g, gs += sum(x*g).
  Var st_scale(Var x, Var s);

  // Convolution / resize (dispatch to serial or OpenMP kernels).
  Var conv2d(Var x, Var w, kernels::Conv2dArgs args);
  Var bilinear(Var x, int out_h, int out_w);
  Var affine_channels(Var x, Var scale, Var bias);

  // Small-vector ops for architecture parameters and latency graphs.
  Var softmax_vec(Var logits);
  Var pick(Var vec, int i);
  Var vdot(Var a, Var b);
  Var dot_const(Var vec, const std::vector<double>& coeffs);
  Var smin(Var a, Var b);

  // Losses.
  Var ohem_cross_entropy(Var logits, const LabelMap& labels, double keep_fraction);
  Var kl_mean(Var student_logits, const Tensor& teacher_logits);

  void backward(Var root);

  std::size_t size() const { return recs_.size(); }

 private:
  struct Record {
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    std::vector<int> parents;
    std::function<void(Tape&, int)> backprop;  // reads grad of `self`, accumulates into parents
  };

  Var push(Tensor value, std::vector<int> parents, std::function<void(Tape&, int)> backprop);
  Tensor& grad_buf(int id);
  bool any_parent_grad(const std::vector<int>& parents) const;

  std::vector<Record> recs_;

  friend class TapeTest;
};

}  // namespace fastsearch
