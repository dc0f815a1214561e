#pragma once

#include "fastsearch/tensor.hpp"

namespace fastsearch::kernels {

// Dense-tensor kernels behind the autodiff ops. Every kernel has a serial
// reference and an OpenMP variant; both run the identical per-element body,
// and parallel loops only ever range over independently-owned output
// elements, so results are bit-identical for any thread count.

struct Conv2dArgs {
  int stride = 1;
  int pad = 1;
  int co = 0;  // active output channels (leading slice of the kernel)
  int ci = 0;  // active input channels
};

Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Conv2dArgs& a, bool parallel);
Tensor conv2d_backward_input(const Tensor& gout, const Tensor& w, Shape x_shape, const Conv2dArgs& a,
                             bool parallel);
/// Accumulates into the leading [co, ci] block of `gw` (same shape as the kernel).
void conv2d_backward_weight(const Tensor& gout, const Tensor& x, Tensor& gw, const Conv2dArgs& a,
                            bool parallel);

/// Bilinear resize with align-corners=false semantics, clamped borders.
Tensor bilinear_forward(const Tensor& x, int out_h, int out_w, bool parallel);
Tensor bilinear_backward(const Tensor& gout, Shape x_shape, bool parallel);

}  // namespace fastsearch::kernels
