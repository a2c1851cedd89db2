#include "isogeo/kernels.hpp"

#include <cmath>

namespace isogeo::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_norm_scalar(const double* a, std::size_t n) {
  return dot_scalar(a, a, n);
}

double squared_distance_scalar(const double* a, const double* b,
                               std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_norm_sum_scalar(const double* rows, const double* w,
                                std::size_t count, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    s += w[i] * std::sqrt(squared_norm_scalar(rows + i * d, d));
  }
  return s;
}

constexpr KernelTable kScalar{dot_scalar, squared_norm_scalar,
                              squared_distance_scalar, axpy_scalar,
                              weighted_norm_sum_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace isogeo::kernels
