#include <cstdlib>
#include <cstring>

#include "epigame/kernels.hpp"

namespace epigame::kern {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

#if !defined(__x86_64__) && !defined(_M_X64)
const Ops& avx2_ops() { return scalar_ops(); }
#endif

namespace {

const Ops& select() {
  if (const char* env = std::getenv("EPIGAME_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_ops();
  }
  return avx2_available() ? avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = select();
  return ops;
}

}  // namespace epigame::kern
