#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fastsearch {

/// NCHW shape; scalars are (1,1,1,1), vectors (1,c,1,1).
struct Shape {
  int n = 1, c = 1, h = 1, w = 1;

  std::size_t numel() const {
    return static_cast<std::size_t>(n) * c * h * w;
  }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape s, double fill = 0.0) : shape(s), data(s.numel(), fill) {}

  static Tensor scalar(double v);
  static Tensor vec(const std::vector<double>& v);
  static Tensor from(Shape s, std::vector<double> v);

  double& at(int n, int c, int h, int w) {
    return data[((static_cast<std::size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }
  double at(int n, int c, int h, int w) const {
    return data[((static_cast<std::size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }

  /// Value of a one-element tensor.
  double item() const;

  bool defined() const { return !data.empty(); }
  bool has_non_finite() const;

  Shape shape;
  std::vector<double> data;
};

}  // namespace fastsearch
