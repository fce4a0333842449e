#ifndef ORDEPTH_TENSOR_HPP_
#define ORDEPTH_TENSOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ordepth/error.hpp"
#include "ordepth/rng.hpp"

namespace ordepth {

using Shape = std::vector<std::size_t>;

inline std::string shape_to_string(const Shape& dims) {
  std::ostringstream oss;
  oss << "[";
  for (std::size_t i = 0; i < dims.size(); ++i) oss << (i ? "x" : "") << dims[i];
  oss << "]";
  return oss.str();
}

// Dense row-major f64 array. Values are immutable by convention once a
// tensor leaves the function that built it; sharing across threads for
// reading is safe.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(Shape dims, double fill = 0.0)
      : dims_(std::move(dims)), values_(checked_size(dims_), fill) {}

  static Tensor from_values(Shape dims, std::vector<double> values) {
    Tensor t;
    if (checked_size(dims) != values.size())
      throw ShapeError("Tensor: " + shape_to_string(dims) + " needs " +
                       std::to_string(checked_size(dims)) + " values, got " +
                       std::to_string(values.size()));
    t.dims_ = std::move(dims);
    t.values_ = std::move(values);
    return t;
  }

  const Shape& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return values_.size(); }
  std::size_t extent(std::size_t axis) const {
    if (axis >= dims_.size())
      throw ShapeError("Tensor::extent: axis " + std::to_string(axis) +
                       " out of range for rank " + std::to_string(rank()));
    return dims_[axis];
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& operator[](std::size_t flat) { return values_[flat]; }
  double operator[](std::size_t flat) const { return values_[flat]; }

  template <typename... Ix>
  double& operator()(Ix... ix) {
    return values_[flat_index({static_cast<std::size_t>(ix)...})];
  }
  template <typename... Ix>
  double operator()(Ix... ix) const {
    return values_[flat_index({static_cast<std::size_t>(ix)...})];
  }

  // Row-major: stride of the last axis is 1.
  std::size_t flat_index(std::initializer_list<std::size_t> ix) const {
    std::size_t flat = 0;
    std::size_t axis = 0;
    for (std::size_t i : ix) flat = flat * dims_[axis++] + i;
    return flat;
  }

  bool same_dims(const Tensor& other) const { return dims_ == other.dims_; }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Tensor& fill(double v) {
    std::fill(values_.begin(), values_.end(), v);
    return *this;
  }

 private:
  static std::size_t checked_size(const Shape& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
  }

  Shape dims_;
  std::vector<double> values_;
};

enum class Elementwise { add, sub, mul };
enum class Reduce { sum, mean, max };

inline Tensor elementwise(Elementwise op, const Tensor& a, const Tensor& b) {
  if (!a.same_dims(b))
    throw ShapeError("elementwise: dims " + shape_to_string(a.dims()) +
                     " vs " + shape_to_string(b.dims()));
  Tensor out(a.dims());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  const std::size_t n = a.size();
  switch (op) {
    case Elementwise::add:
      for (std::size_t i = 0; i < n; ++i) po[i] = pa[i] + pb[i];
      break;
    case Elementwise::sub:
      for (std::size_t i = 0; i < n; ++i) po[i] = pa[i] - pb[i];
      break;
    case Elementwise::mul:
      for (std::size_t i = 0; i < n; ++i) po[i] = pa[i] * pb[i];
      break;
  }
  return out;
}

// Fixed-order pairwise tree sum; the one reduction used everywhere a mean
// or total feeds results that must reproduce across runs.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const Tensor& t) {
  return pairwise_sum(std::span<const double>(t.data(), t.size()));
}

inline Tensor reduce(Reduce op, const Tensor& a, std::size_t axis) {
  if (axis >= a.rank())
    throw ShapeError("reduce: axis " + std::to_string(axis) +
                     " out of range for rank " + std::to_string(a.rank()));
  Shape out_dims;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (i != axis) out_dims.push_back(a.dims()[i]);
  Tensor out(out_dims);

  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= a.dims()[i];
  for (std::size_t i = axis + 1; i < a.rank(); ++i) inner *= a.dims()[i];
  const std::size_t len = a.dims()[axis];
  const double* pa = a.data();
  double* po = out.data();

  std::vector<double> lane(len);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const double* base = pa + (o * len) * inner + in;
      switch (op) {
        case Reduce::sum:
        case Reduce::mean: {
          for (std::size_t k = 0; k < len; ++k) lane[k] = base[k * inner];
          double s = pairwise_sum(lane);
          po[o * inner + in] = (op == Reduce::mean && len > 0)
                                   ? s / static_cast<double>(len)
                                   : s;
          break;
        }
        case Reduce::max: {
          double m = -std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k < len; ++k) m = std::max(m, base[k * inner]);
          po[o * inner + in] = m;
          break;
        }
      }
    }
  }
  return out;
}

inline Tensor rng_uniform(Rng& rng, Shape dims, double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("rng_uniform: need lo < hi");
  Tensor out(std::move(dims));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform(lo, hi);
  return out;
}

inline Tensor rng_normal(Rng& rng, Shape dims, double mean, double stddev) {
  Tensor out(std::move(dims));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.normal(mean, stddev);
  return out;
}

inline Tensor scale(const Tensor& a, double s) {
  Tensor out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

}  // namespace ordepth

#endif  // ORDEPTH_TENSOR_HPP_
