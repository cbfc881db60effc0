#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gmgd {

// Dimension d is small (typically 2); plain std::vector<double> keeps the
// interfaces simple and serialization direct.
using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scale-safe Euclidean norm: squares of denormal-range coordinates would
// underflow, so factor out the largest magnitude first.
inline double norm(std::span<const double> a) {
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : a) {
    const double r = x / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

inline void axpy(double alpha, std::span<const double> x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec scaled(std::span<const double> x, double alpha) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

}  // namespace gmgd
