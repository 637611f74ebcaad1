// Reference kernels. These define the semantics; the AVX2 variants must match
// them bit for bit.
#include "hpn/simd.hpp"

namespace hpn::simd {
namespace {

void saxpy_scalar(double c, const double* x, double* y, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) y[i] += c * x[i];
}

void sscale_scalar(double c, const double* x, double* y, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) y[i] = c * x[i];
}

void qmul_scalar(const Quat* a, const Quat* b, Quat* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) out[i] = a[i] * b[i];
}

void qmul_acc_scalar(const Quat* a, const Quat* b, Quat* acc, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) acc[i] += a[i] * b[i];
}

void qconj_mul_scalar(const Quat* a, const Quat* b, Quat* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) out[i] = a[i].conj() * b[i];
}

double qnorm2_scalar(const Quat* a, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += a[i].norm2();
  return s;
}

void qgemm_scalar(const Quat* a, const Quat* b, Quat* c, int n, std::size_t count) {
  const std::size_t blk = static_cast<std::size_t>(n) * n;
  for (std::size_t s = 0; s < count; ++s) {
    const Quat* as = a + s * blk;
    const Quat* bs = b + s * blk;
    Quat* cs = c + s * blk;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Quat acc = as[i * n] * bs[j];
        for (int l = 1; l < n; ++l) acc += as[i * n + l] * bs[l * n + j];
        cs[i * n + j] = acc;
      }
  }
}

}  // namespace

const detail::Table& detail::scalar_table() {
  static const Table t{saxpy_scalar, sscale_scalar,  qmul_scalar, qmul_acc_scalar,
                       qconj_mul_scalar, qnorm2_scalar, qgemm_scalar};
  return t;
}

}  // namespace hpn::simd
