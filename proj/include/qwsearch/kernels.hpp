#pragma once
// Data-parallel inner loops of the statevector engine.
//
// Every kernel has a scalar reference implementation; on x86-64 an AVX2/FMA
// variant is compiled into its own translation unit and picked at runtime
// when the CPU reports both features. QWS_ISA=scalar in the environment
// pins the scalar path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qws::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // y[i] += a * v[i]
  void (*rc_axpy)(std::size_t n, const double* v, cplx a, cplx* y);
  // sum_i v[i] * x[i]
  cplx (*rc_dot)(std::size_t n, const double* v, const cplx* x);
  // y[i] *= a[i]
  void (*c_mul)(std::size_t n, const cplx* a, cplx* y);
  // sum_i |x[i]|^2
  double (*c_norm2)(std::size_t n, const cplx* x);
};

bool supported(Isa isa) noexcept;

// Table for a specific ISA. Throws std::invalid_argument when unsupported.
const KernelTable& table(Isa isa);

// Table currently used by the simulator.
const KernelTable& active() noexcept;

// Switch the active table (tests, CLI --isa). Throws when unsupported.
void set_active(Isa isa);

std::string_view name(Isa isa) noexcept;

namespace scalar {
void rc_axpy(std::size_t n, const double* v, cplx a, cplx* y);
cplx rc_dot(std::size_t n, const double* v, const cplx* x);
void c_mul(std::size_t n, const cplx* a, cplx* y);
double c_norm2(std::size_t n, const cplx* x);
}  // namespace scalar

namespace avx2 {
void rc_axpy(std::size_t n, const double* v, cplx a, cplx* y);
cplx rc_dot(std::size_t n, const double* v, const cplx* x);
void c_mul(std::size_t n, const cplx* a, cplx* y);
double c_norm2(std::size_t n, const cplx* x);
}  // namespace avx2

}  // namespace qws::kernels
