#include "isogeo/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

namespace k = isogeo::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

double naive_dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<long double>(a[i]) * b[i];
  }
  return static_cast<double>(s);
}

// Every available table, scalar first.
std::vector<const k::KernelTable*> tables() {
  std::vector<const k::KernelTable*> out{&k::scalar_table()};
  if (k::avx2_table() && k::cpu_supports_avx2()) out.push_back(k::avx2_table());
  return out;
}

}  // namespace

TEST_CASE("kernels agree with long double references") {
  std::mt19937_64 rng(42);
  for (const k::KernelTable* t : tables()) {
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = random_values(n, rng);
      const auto b = random_values(n, rng);
      const double ref = naive_dot(a, b);
      double abs_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(a[i] * b[i]);
      CHECK(std::abs(t->dot(a.data(), b.data(), n) - ref) <=
            1e-14 * abs_sum + 1e-300);
      CHECK(t->squared_norm(a.data(), n) ==
            doctest::Approx(naive_dot(a, a)).epsilon(1e-14));
      std::vector<double> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
      CHECK(t->squared_distance(a.data(), b.data(), n) ==
            doctest::Approx(naive_dot(diff, diff)).epsilon(1e-14));
    }
  }
}

TEST_CASE("scalar and avx2 kernels are equivalent") {
  if (!k::avx2_table() || !k::cpu_supports_avx2()) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; skipped");
    return;
  }
  const k::KernelTable& s = k::scalar_table();
  const k::KernelTable& v = *k::avx2_table();
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 130; ++n) {
    const auto a = random_values(n, rng);
    const auto b = random_values(n, rng);
    CHECK(v.dot(a.data(), b.data(), n) ==
          doctest::Approx(s.dot(a.data(), b.data(), n)).epsilon(1e-13).scale(1.0));
    CHECK(v.squared_norm(a.data(), n) ==
          doctest::Approx(s.squared_norm(a.data(), n)).epsilon(1e-14));
    CHECK(v.squared_distance(a.data(), b.data(), n) ==
          doctest::Approx(s.squared_distance(a.data(), b.data(), n))
              .epsilon(1e-14));

    auto ys = b;
    auto yv = b;
    s.axpy(0.75, a.data(), ys.data(), n);
    v.axpy(0.75, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-15).scale(1.0));
    }
  }
}

TEST_CASE("weighted norm sums agree across tables and row widths") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t d : {1u, 2u, 3u, 4u, 5u, 8u}) {
    for (std::size_t count : {0u, 1u, 3u, 4u, 7u, 64u, 257u}) {
      const auto rows = random_values(count * d, rng);
      std::vector<double> w(count);
      for (double& x : w) x = unit(rng);
      long double ref = 0.0L;
      for (std::size_t i = 0; i < count; ++i) {
        long double sq = 0.0L;
        for (std::size_t j = 0; j < d; ++j) {
          sq += static_cast<long double>(rows[i * d + j]) * rows[i * d + j];
        }
        ref += w[i] * std::sqrt(sq);
      }
      for (const k::KernelTable* t : tables()) {
        const double got = t->weighted_norm_sum(rows.data(), w.data(), count, d);
        CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("span wrappers route through the active table") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{4.0, -5.0, 6.0};
  CHECK(k::dot(a, b) == 12.0);
  CHECK(k::squared_norm(a) == 14.0);
  CHECK(k::squared_distance(a, b) == 9.0 + 49.0 + 9.0);
  std::vector<double> y = b;
  k::axpy(2.0, a, y);
  CHECK(y == std::vector<double>{6.0, -1.0, 12.0});
  const std::vector<double> rows{3.0, 4.0, 0.0, 1.0};
  const std::vector<double> w{0.5, 2.0};
  CHECK(k::weighted_norm_sum(rows, w, 2) == doctest::Approx(4.5));
}

TEST_CASE("dispatch follows the cpu and the environment override") {
  const char* env = std::getenv("ISOGEO_SIMD");
  const bool forced_scalar = env && std::string_view(env) == "scalar";
  const bool avx2 = k::avx2_table() && k::cpu_supports_avx2();
  CHECK(k::active_isa() ==
        (avx2 && !forced_scalar ? k::Isa::Avx2 : k::Isa::Scalar));
  CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
  CHECK(k::isa_name(k::Isa::Avx2) == "avx2");
}
