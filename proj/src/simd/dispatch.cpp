#include <cstdlib>
#include <string>

#include "hardyliou/simd/kernels.hpp"

namespace hardyliou::simd {
namespace {

bool cpu_has_avx2() {
#if defined(HARDYLIOU_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& choose() {
  const char* forced = std::getenv("HARDYLIOU_SIMD");
  if (forced && std::string(forced) == "scalar") return detail::scalar_table();
  if (const KernelTable* t = table_for(Isa::Avx2)) return *t;
  return detail::scalar_table();
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_table();
    case Isa::Avx2:
#if defined(HARDYLIOU_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::avx2_table();
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (table_for(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

}  // namespace hardyliou::simd
