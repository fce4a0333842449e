#ifndef ORDEPTH_DISCRETIZE_HPP_
#define ORDEPTH_DISCRETIZE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "ordepth/error.hpp"
#include "ordepth/tensor.hpp"

namespace ordepth {

// How class boundaries are laid out between 1/max_depth and 1/min_depth.
// All schemes produce a strictly increasing inverse-depth sequence; class 1
// is the farthest depth, class `class_count` the nearest.
enum class DiscretizationScheme { exponential_inverse, linear_depth, linear_inverse };

inline std::string scheme_name(DiscretizationScheme s) {
  switch (s) {
    case DiscretizationScheme::exponential_inverse: return "exponential-inverse";
    case DiscretizationScheme::linear_depth: return "linear-depth";
    case DiscretizationScheme::linear_inverse: return "linear-inverse";
  }
  return "?";
}

inline DiscretizationScheme scheme_from_name(const std::string& s) {
  if (s == "exponential-inverse") return DiscretizationScheme::exponential_inverse;
  if (s == "linear-depth") return DiscretizationScheme::linear_depth;
  if (s == "linear-inverse") return DiscretizationScheme::linear_inverse;
  throw ArgumentError("unknown discretization scheme: " + s);
}

struct DiscretizationSpec {
  double min_depth_m = 2.0;
  double max_depth_m = 80.0;
  std::size_t class_count = 128;
  DiscretizationScheme scheme = DiscretizationScheme::exponential_inverse;

  void validate() const {
    if (!(min_depth_m > 0.0) || !(min_depth_m < max_depth_m))
      throw ArgumentError("DiscretizationSpec: need 0 < min_depth < max_depth");
    if (class_count < 2)
      throw ArgumentError("DiscretizationSpec: need at least 2 classes");
  }

  double rho_min() const { return 1.0 / max_depth_m; }
  double rho_max() const { return 1.0 / min_depth_m; }
};

// Inverse-depth boundary of class i (1-based). For the exponential scheme,
//   c_i = rho_min * exp(log(rho_max / rho_min) * (i-1) / (M-1)),
// i.e. the boundaries are uniform in log inverse depth. Both endpoints are
// pinned to rho_min / rho_max exactly so they do not drift through exp/log.
inline double class_boundary(const DiscretizationSpec& spec, std::size_t i) {
  spec.validate();
  if (i < 1 || i > spec.class_count)
    throw ArgumentError("class_boundary: index " + std::to_string(i) +
                        " outside 1.." + std::to_string(spec.class_count));
  const double rmin = spec.rho_min();
  const double rmax = spec.rho_max();
  const std::size_t m = spec.class_count;
  if (i == 1) return rmin;
  if (i == m) return rmax;
  const double frac = static_cast<double>(i - 1) / static_cast<double>(m - 1);
  switch (spec.scheme) {
    case DiscretizationScheme::exponential_inverse:
      return rmin * std::exp(std::log(rmax / rmin) * frac);
    case DiscretizationScheme::linear_inverse:
      return rmin + (rmax - rmin) * frac;
    case DiscretizationScheme::linear_depth:
      return 1.0 / (spec.max_depth_m - (spec.max_depth_m - spec.min_depth_m) * frac);
  }
  return 0.0;
}

inline Tensor class_boundaries(const DiscretizationSpec& spec) {
  spec.validate();
  Tensor out(Shape{spec.class_count});
  for (std::size_t i = 1; i <= spec.class_count; ++i)
    out[i - 1] = class_boundary(spec, i);
  return out;
}

// Class whose boundary is nearest to 1/d in the scheme's natural coordinate
// (log inverse depth for exponential, inverse depth for linear-inverse,
// depth for linear-depth). Depths outside [min_depth, max_depth] clamp to
// the end classes. Ties go to the lower class index.
inline std::size_t class_of_depth(const DiscretizationSpec& spec, double depth_m) {
  spec.validate();
  if (!(depth_m > 0.0))
    throw ArgumentError("class_of_depth: depth must be positive");
  const double d = std::clamp(depth_m, spec.min_depth_m, spec.max_depth_m);
  const std::size_t m = spec.class_count;
  double t = 0.0;  // continuous class position in [0, m-1]
  switch (spec.scheme) {
    case DiscretizationScheme::exponential_inverse:
      t = std::log(spec.max_depth_m / d) / std::log(spec.max_depth_m / spec.min_depth_m) *
          static_cast<double>(m - 1);
      break;
    case DiscretizationScheme::linear_inverse:
      t = (1.0 / d - spec.rho_min()) / (spec.rho_max() - spec.rho_min()) *
          static_cast<double>(m - 1);
      break;
    case DiscretizationScheme::linear_depth:
      t = (spec.max_depth_m - d) / (spec.max_depth_m - spec.min_depth_m) *
          static_cast<double>(m - 1);
      break;
  }
  t = std::clamp(t, 0.0, static_cast<double>(m - 1));
  std::size_t lo = static_cast<std::size_t>(t);
  if (lo >= m - 1) lo = m - 2;
  // nearest grid point; exact midpoint resolves to the lower index
  const std::size_t k = (t - static_cast<double>(lo) <= static_cast<double>(lo) + 1.0 - t)
                            ? lo
                            : lo + 1;
  return k + 1;
}

inline double depth_of_class(const DiscretizationSpec& spec, std::size_t i) {
  return 1.0 / class_boundary(spec, i);
}

// Relative class frequencies over pixels with a nonzero mask entry. Sums to
// one when any pixel is valid; all zeros otherwise.
inline Tensor class_histogram(const DiscretizationSpec& spec, const Tensor& depths,
                              const Tensor& mask) {
  spec.validate();
  if (!depths.same_dims(mask))
    throw ShapeError("class_histogram: depths " + shape_to_string(depths.dims()) +
                     " vs mask " + shape_to_string(mask.dims()));
  Tensor hist(Shape{spec.class_count});
  std::size_t valid = 0;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (mask[i] == 0.0) continue;
    hist[class_of_depth(spec, depths[i]) - 1] += 1.0;
    ++valid;
  }
  if (valid > 0)
    for (std::size_t i = 0; i < hist.size(); ++i)
      hist[i] /= static_cast<double>(valid);
  return hist;
}

}  // namespace ordepth

#endif  // ORDEPTH_DISCRETIZE_HPP_
