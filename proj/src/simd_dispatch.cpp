#include "hpn/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace hpn::simd {
namespace {

Backend pick_backend() {
  const char* env = std::getenv("HPN_SIMD");
  if (env) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && detail::avx2_supported()) return Backend::avx2;
  }
  return detail::avx2_supported() ? Backend::avx2 : Backend::scalar;
}

const detail::Table& table() {
  static const detail::Table& t =
      (active() == Backend::avx2) ? detail::avx2_table() : detail::scalar_table();
  return t;
}

}  // namespace

Backend active() {
  static const Backend b = pick_backend();
  return b;
}

const char* backend_name() { return active() == Backend::avx2 ? "avx2" : "scalar"; }

void saxpy(double c, const double* x, double* y, std::size_t m) { table().saxpy(c, x, y, m); }
void sscale(double c, const double* x, double* y, std::size_t m) { table().sscale(c, x, y, m); }
void qmul(const Quat* a, const Quat* b, Quat* out, std::size_t m) { table().qmul(a, b, out, m); }
void qmul_acc(const Quat* a, const Quat* b, Quat* acc, std::size_t m) {
  table().qmul_acc(a, b, acc, m);
}
void qconj_mul(const Quat* a, const Quat* b, Quat* out, std::size_t m) {
  table().qconj_mul(a, b, out, m);
}
double qnorm2(const Quat* a, std::size_t m) { return table().qnorm2(a, m); }
void qgemm(const Quat* a, const Quat* b, Quat* c, int n, std::size_t count) {
  table().qgemm(a, b, c, n, count);
}

}  // namespace hpn::simd
