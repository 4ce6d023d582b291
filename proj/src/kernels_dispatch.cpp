#include <cstdlib>
#include <string>

#include "rfwave/kernels.hpp"

namespace rfwave::kernels {

//==== runtime variant selection ============================================

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

struct Selection {
  const Ops* table;
  std::string name;

  Selection() {
    bool want_avx2 = avx2_supported();
    if (const char* env = std::getenv("RFWAVE_SIMD")) {
      std::string v(env);
      if (v == "scalar") want_avx2 = false;
      else if (v == "avx2") want_avx2 = avx2_supported();
    }
    if (want_avx2) {
      table = &avx2_ops();
      name = "avx2";
    } else {
      table = &scalar_ops();
      name = "scalar";
    }
  }
};

const Selection& selection() {
  static const Selection s;
  return s;
}

}  // namespace

const Ops& ops() { return *selection().table; }

const std::string& active_variant() { return selection().name; }

}  // namespace rfwave::kernels
