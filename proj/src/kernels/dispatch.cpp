#include "isogeo/kernels.hpp"

#include <cstdlib>
#include <string>

namespace isogeo::kernels {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa select_isa() {
  if (const char* env = std::getenv("ISOGEO_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  if (avx2_table() != nullptr && cpu_supports_avx2()) return Isa::Avx2;
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& table =
      active_isa() == Isa::Avx2 ? *avx2_table() : scalar_table();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Scalar:
      return "scalar";
  }
  return "unknown";
}

}  // namespace isogeo::kernels
