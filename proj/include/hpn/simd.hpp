// Batch kernels for the grid sweeps: elementwise Hamilton products, batched
// small quaternion matrix products, and flat double-array linear combinations
// (the stencil passes). Scalar reference implementations plus an AVX2 variant
// selected at runtime; both paths produce bit-identical results, which the
// equivalence tests assert.
#pragma once

#include <cstddef>

#include "hpn/quat.hpp"

namespace hpn::simd {

enum class Backend { scalar, avx2 };

// Detected once per process; override with HPN_SIMD=scalar|avx2.
Backend active();
const char* backend_name();

// y[i] += c * x[i], flat doubles
void saxpy(double c, const double* x, double* y, std::size_t m);
// y[i] = c * x[i]
void sscale(double c, const double* x, double* y, std::size_t m);
// out[i] = a[i] * b[i] (Hamilton)
void qmul(const Quat* a, const Quat* b, Quat* out, std::size_t m);
// acc[i] += a[i] * b[i]
void qmul_acc(const Quat* a, const Quat* b, Quat* acc, std::size_t m);
// out[i] = conj(a[i]) * b[i]
void qconj_mul(const Quat* a, const Quat* b, Quat* out, std::size_t m);
// sum_i |a[i]|^2
double qnorm2(const Quat* a, std::size_t m);
// batched n x n quaternion matrix product, row-major blocks: C[s] = A[s] * B[s]
void qgemm(const Quat* a, const Quat* b, Quat* c, int n, std::size_t count);

namespace detail {
struct Table {
  void (*saxpy)(double, const double*, double*, std::size_t);
  void (*sscale)(double, const double*, double*, std::size_t);
  void (*qmul)(const Quat*, const Quat*, Quat*, std::size_t);
  void (*qmul_acc)(const Quat*, const Quat*, Quat*, std::size_t);
  void (*qconj_mul)(const Quat*, const Quat*, Quat*, std::size_t);
  double (*qnorm2)(const Quat*, std::size_t);
  void (*qgemm)(const Quat*, const Quat*, Quat*, int, std::size_t);
};
const Table& scalar_table();
const Table& avx2_table();  // valid only when AVX2 is available
bool avx2_supported();
}  // namespace detail

}  // namespace hpn::simd
