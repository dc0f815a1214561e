#include "fastsearch/tensor.hpp"

#include <cmath>
#include <sstream>

#include "fastsearch/util.hpp"

namespace fastsearch {

std::string Shape::str() const {
  std::ostringstream os;
  os << "(" << n << "," << c << "," << h << "," << w << ")";
  return os.str();
}

Tensor Tensor::scalar(double v) {
  Tensor t{Shape{}};
  t.data[0] = v;
  return t;
}

Tensor Tensor::vec(const std::vector<double>& v) {
  Tensor t;
  t.shape = Shape{1, static_cast<int>(v.size()), 1, 1};
  t.data = v;
  return t;
}

Tensor Tensor::from(Shape s, std::vector<double> v) {
  if (s.numel() != v.size())
    throw Error("tensor data size " + std::to_string(v.size()) + " does not match shape " + s.str());
  Tensor t;
  t.shape = s;
  t.data = std::move(v);
  return t;
}

double Tensor::item() const {
  if (data.size() != 1) throw Error("item() on tensor of shape " + shape.str());
  return data[0];
}

bool Tensor::has_non_finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return true;
  return false;
}

}  // namespace fastsearch
