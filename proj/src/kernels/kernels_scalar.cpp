#include "qwsearch/kernels.hpp"

namespace qws::kernels::scalar {

void rc_axpy(std::size_t n, const double* v, cplx a, cplx* y) {
  const double ar = a.real();
  const double ai = a.imag();
  auto* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    yd[2 * i] += ar * v[i];
    yd[2 * i + 1] += ai * v[i];
  }
}

cplx rc_dot(std::size_t n, const double* v, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += v[i] * xd[2 * i];
    im += v[i] * xd[2 * i + 1];
  }
  return {re, im};
}

void c_mul(std::size_t n, const cplx* a, cplx* y) {
  const auto* ad = reinterpret_cast<const double*>(a);
  auto* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = ad[2 * i], ai = ad[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    yd[2 * i] = ar * yr - ai * yi;
    yd[2 * i + 1] = ar * yi + ai * yr;
  }
}

double c_norm2(std::size_t n, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += xd[i] * xd[i];
  return s;
}

}  // namespace qws::kernels::scalar
