#pragma once

// Dense inner loops shared by the geometry, clustering and quadrature code.
//
// Every kernel has a portable scalar reference implementation and an AVX2/FMA
// variant. The variant is chosen once per process from CPUID; setting
// ISOGEO_SIMD=scalar in the environment forces the reference path. The two
// paths differ only in summation order.

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string_view>

namespace isogeo::kernels {

enum class Isa { Scalar, Avx2 };

/// Function table for one instruction set.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_norm)(const double* a, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i w[i] * ||rows[i*d .. i*d+d)||_2 over `count` row-major rows.
  double (*weighted_norm_sum)(const double* rows, const double* w,
                              std::size_t count, std::size_t d);
};

const KernelTable& scalar_table();
/// Null when the binary was built without AVX2 support compiled in.
const KernelTable* avx2_table();

bool cpu_supports_avx2();

/// The table selected for this process.
const KernelTable& active();
Isa active_isa();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double squared_norm(std::span<const double> a) {
  return active().squared_norm(a.data(), a.size());
}
inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double weighted_norm_sum(std::span<const double> rows,
                                std::span<const double> w, std::size_t d) {
  return active().weighted_norm_sum(rows.data(), w.data(), w.size(), d);
}

inline double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return active().dot(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}
inline double squared_norm(const Eigen::VectorXd& a) {
  return active().squared_norm(a.data(), static_cast<std::size_t>(a.size()));
}
inline double squared_distance(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b) {
  return active().squared_distance(a.data(), b.data(),
                                   static_cast<std::size_t>(a.size()));
}

}  // namespace isogeo::kernels
