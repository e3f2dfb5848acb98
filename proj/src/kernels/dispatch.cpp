#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qwsearch/kernels.hpp"

namespace qws::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::rc_axpy, &scalar::rc_dot, &scalar::c_mul,
                              &scalar::c_norm2};

#if defined(QWS_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::rc_axpy, &avx2::rc_dot, &avx2::c_mul, &avx2::c_norm2};
#endif

bool cpu_has_avx2() noexcept {
#if defined(QWS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_default() noexcept {
  if (const char* env = std::getenv("QWS_ISA"); env != nullptr && std::string(env) == "scalar") {
    return &kScalar;
  }
#if defined(QWS_HAVE_AVX2_KERNELS)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{pick_default()};
  return current;
}

}  // namespace

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw std::invalid_argument("kernel ISA not supported on this CPU: " + std::string(name(isa)));
  }
#if defined(QWS_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { slot().store(&table(isa), std::memory_order_release); }

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace qws::kernels
