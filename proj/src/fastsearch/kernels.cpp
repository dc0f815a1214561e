#include "fastsearch/kernels.hpp"

#include <algorithm>

#include "fastsearch/util.hpp"

namespace fastsearch::kernels {

namespace {

int conv_out_dim(int in, int k, int stride, int pad) { return (in + 2 * pad - k) / stride + 1; }

template <typename Body>
void for_outer(int count, bool parallel, const Body& body) {
  if (parallel && count > 1) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
}

}  // namespace

Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Conv2dArgs& a, bool parallel) {
  const int k = w.shape.h;
  const int ho = conv_out_dim(x.shape.h, k, a.stride, a.pad);
  const int wo = conv_out_dim(x.shape.w, k, a.stride, a.pad);
  if (a.ci > x.shape.c || a.ci > w.shape.c || a.co > w.shape.n)
    throw Error("conv2d: active slice exceeds tensor dims");
  if (ho < 1 || wo < 1) throw Error("conv2d: output would be empty for input " + x.shape.str());

  Tensor out(Shape{x.shape.n, a.co, ho, wo});
  const int hi = x.shape.h, wi = x.shape.w;
  const std::size_t x_cstride = static_cast<std::size_t>(hi) * wi;
  const std::size_t w_costride = static_cast<std::size_t>(w.shape.c) * k * k;

  for_outer(x.shape.n * a.co, parallel, [&](int idx) {
    const int n = idx / a.co;
    const int co = idx % a.co;
    const double* xn = x.data.data() + static_cast<std::size_t>(n) * x.shape.c * x_cstride;
    const double* wc = w.data.data() + co * w_costride;
    double* o = out.data.data() + (static_cast<std::size_t>(n) * a.co + co) * ho * wo;
    for (int yo = 0; yo < ho; ++yo) {
      for (int xo = 0; xo < wo; ++xo) {
        double acc = 0.0;
        const int ybase = yo * a.stride - a.pad;
        const int xbase = xo * a.stride - a.pad;
        for (int ci = 0; ci < a.ci; ++ci) {
          const double* xc = xn + ci * x_cstride;
          const double* wk = wc + ci * k * k;
          for (int ky = 0; ky < k; ++ky) {
            const int yi = ybase + ky;
            if (yi < 0 || yi >= hi) continue;
            const double* xrow = xc + static_cast<std::size_t>(yi) * wi;
            const double* wrow = wk + ky * k;
            for (int kx = 0; kx < k; ++kx) {
              const int xi = xbase + kx;
              if (xi < 0 || xi >= wi) continue;
              acc += wrow[kx] * xrow[xi];
            }
          }
        }
        o[yo * wo + xo] = acc;
      }
    }
  });
  return out;
}

Tensor conv2d_backward_input(const Tensor& gout, const Tensor& w, Shape x_shape, const Conv2dArgs& a,
                             bool parallel) {
  const int k = w.shape.h;
  Tensor gx(x_shape);
  const int hi = x_shape.h, wi = x_shape.w;
  const int ho = gout.shape.h, wo = gout.shape.w;
  const std::size_t g_cstride = static_cast<std::size_t>(ho) * wo;
  const std::size_t w_costride = static_cast<std::size_t>(w.shape.c) * k * k;

  // Gather form: each input pixel sums the output positions it fed, so the
  // accumulation order is fixed regardless of thread count.
  for_outer(x_shape.n * a.ci, parallel, [&](int idx) {
    const int n = idx / a.ci;
    const int ci = idx % a.ci;
    const double* gn = gout.data.data() + static_cast<std::size_t>(n) * a.co * g_cstride;
    double* g = gx.data.data() +
                (static_cast<std::size_t>(n) * x_shape.c + ci) * hi * wi;
    for (int yi = 0; yi < hi; ++yi) {
      for (int xi = 0; xi < wi; ++xi) {
        double acc = 0.0;
        for (int co = 0; co < a.co; ++co) {
          const double* gc = gn + co * g_cstride;
          const double* wk = w.data.data() + co * w_costride + ci * k * k;
          for (int ky = 0; ky < k; ++ky) {
            const int ynum = yi + a.pad - ky;
            if (ynum < 0 || ynum % a.stride) continue;
            const int yo = ynum / a.stride;
            if (yo >= ho) continue;
            for (int kx = 0; kx < k; ++kx) {
              const int xnum = xi + a.pad - kx;
              if (xnum < 0 || xnum % a.stride) continue;
              const int xo = xnum / a.stride;
              if (xo >= wo) continue;
              acc += wk[ky * k + kx] * gc[static_cast<std::size_t>(yo) * wo + xo];
            }
          }
        }
        g[static_cast<std::size_t>(yi) * wi + xi] = acc;
      }
    }
  });
  return gx;
}

void conv2d_backward_weight(const Tensor& gout, const Tensor& x, Tensor& gw, const Conv2dArgs& a,
                            bool parallel) {
  const int k = gw.shape.h;
  const int hi = x.shape.h, wi = x.shape.w;
  const int ho = gout.shape.h, wo = gout.shape.w;
  const std::size_t x_cstride = static_cast<std::size_t>(hi) * wi;
  const std::size_t g_cstride = static_cast<std::size_t>(ho) * wo;
  const std::size_t w_costride = static_cast<std::size_t>(gw.shape.c) * k * k;

  for_outer(a.co * a.ci, parallel, [&](int idx) {
    const int co = idx / a.ci;
    const int ci = idx % a.ci;
    double* gwp = gw.data.data() + co * w_costride + ci * k * k;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        double acc = 0.0;
        for (int n = 0; n < x.shape.n; ++n) {
          const double* xc = x.data.data() + (static_cast<std::size_t>(n) * x.shape.c + ci) * x_cstride;
          const double* gc = gout.data.data() + (static_cast<std::size_t>(n) * a.co + co) * g_cstride;
          for (int yo = 0; yo < ho; ++yo) {
            const int yi = yo * a.stride - a.pad + ky;
            if (yi < 0 || yi >= hi) continue;
            const double* xrow = xc + static_cast<std::size_t>(yi) * wi;
            const double* grow = gc + static_cast<std::size_t>(yo) * wo;
            for (int xo = 0; xo < wo; ++xo) {
              const int xi = xo * a.stride - a.pad + kx;
              if (xi < 0 || xi >= wi) continue;
              acc += xrow[xi] * grow[xo];
            }
          }
        }
        gwp[ky * k + kx] += acc;
      }
    }
  });
}

namespace {

struct Tap {
  int i0, i1;
  double w0, w1;
};

Tap bilinear_tap(int dst, int in_dim, double scale) {
  double src = (dst + 0.5) * scale - 0.5;
  if (src < 0.0) src = 0.0;
  const double limit = in_dim - 1;
  if (src > limit) src = limit;
  const int i0 = static_cast<int>(src);
  const int i1 = std::min(i0 + 1, in_dim - 1);
  const double w1 = src - i0;
  return Tap{i0, i1, 1.0 - w1, w1};
}

}  // namespace

Tensor bilinear_forward(const Tensor& x, int out_h, int out_w, bool parallel) {
  if (out_h < 1 || out_w < 1) throw Error("bilinear: bad output size");
  Tensor out(Shape{x.shape.n, x.shape.c, out_h, out_w});
  const double sy = static_cast<double>(x.shape.h) / out_h;
  const double sx = static_cast<double>(x.shape.w) / out_w;
  std::vector<Tap> ty(out_h), tx(out_w);
  for (int y = 0; y < out_h; ++y) ty[y] = bilinear_tap(y, x.shape.h, sy);
  for (int xo = 0; xo < out_w; ++xo) tx[xo] = bilinear_tap(xo, x.shape.w, sx);

  const std::size_t x_cstride = static_cast<std::size_t>(x.shape.h) * x.shape.w;
  const std::size_t o_cstride = static_cast<std::size_t>(out_h) * out_w;
  for_outer(x.shape.n * x.shape.c, parallel, [&](int idx) {
    const double* xc = x.data.data() + idx * x_cstride;
    double* oc = out.data.data() + idx * o_cstride;
    for (int y = 0; y < out_h; ++y) {
      const Tap& a = ty[y];
      for (int xo = 0; xo < out_w; ++xo) {
        const Tap& b = tx[xo];
        oc[static_cast<std::size_t>(y) * out_w + xo] =
            a.w0 * (b.w0 * xc[static_cast<std::size_t>(a.i0) * x.shape.w + b.i0] +
                    b.w1 * xc[static_cast<std::size_t>(a.i0) * x.shape.w + b.i1]) +
            a.w1 * (b.w0 * xc[static_cast<std::size_t>(a.i1) * x.shape.w + b.i0] +
                    b.w1 * xc[static_cast<std::size_t>(a.i1) * x.shape.w + b.i1]);
      }
    }
  });
  return out;
}

Tensor bilinear_backward(const Tensor& gout, Shape x_shape, bool parallel) {
  Tensor gx(x_shape);
  const int out_h = gout.shape.h, out_w = gout.shape.w;
  const double sy = static_cast<double>(x_shape.h) / out_h;
  const double sx = static_cast<double>(x_shape.w) / out_w;
  std::vector<Tap> ty(out_h), tx(out_w);
  for (int y = 0; y < out_h; ++y) ty[y] = bilinear_tap(y, x_shape.h, sy);
  for (int xo = 0; xo < out_w; ++xo) tx[xo] = bilinear_tap(xo, x_shape.w, sx);

  const std::size_t x_cstride = static_cast<std::size_t>(x_shape.h) * x_shape.w;
  const std::size_t o_cstride = static_cast<std::size_t>(out_h) * out_w;
  // Scatter stays inside the (n,c) plane each thread owns.
  for_outer(x_shape.n * x_shape.c, parallel, [&](int idx) {
    const double* gc = gout.data.data() + idx * o_cstride;
    double* g = gx.data.data() + idx * x_cstride;
    for (int y = 0; y < out_h; ++y) {
      const Tap& a = ty[y];
      for (int xo = 0; xo < out_w; ++xo) {
        const Tap& b = tx[xo];
        const double v = gc[static_cast<std::size_t>(y) * out_w + xo];
        g[static_cast<std::size_t>(a.i0) * x_shape.w + b.i0] += a.w0 * b.w0 * v;
        g[static_cast<std::size_t>(a.i0) * x_shape.w + b.i1] += a.w0 * b.w1 * v;
        g[static_cast<std::size_t>(a.i1) * x_shape.w + b.i0] += a.w1 * b.w0 * v;
        g[static_cast<std::size_t>(a.i1) * x_shape.w + b.i1] += a.w1 * b.w1 * v;
      }
    }
  });
  return gx;
}

}  // namespace fastsearch::kernels
