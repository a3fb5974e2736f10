#include "shiftlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace shiftlab::kernels {

#if defined(SHIFTLAB_HAVE_AVX2)
const KernelTable* avx2_table_compiled();
#endif

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("SHIFTLAB_KERNELS")) {
    if (std::string_view(env) == "scalar") return &scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(SHIFTLAB_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return avx2_table_compiled();
#endif
  return nullptr;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  const KernelTable* t = isa == Isa::Scalar ? &scalar_table() : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace shiftlab::kernels
