// AVX2 kernels. One quaternion per 256-bit register, lanes (w, x, y, z).
// Only mul/add/xor intrinsics are used (no FMA) and every lane evaluates in
// the same association order as the scalar reference, so results match the
// scalar kernels bitwise.
#include "hpn/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace hpn::simd {
namespace {

inline __m256d load_q(const Quat* p) { return _mm256_loadu_pd(&p->w); }
inline void store_q(Quat* p, __m256d v) { _mm256_storeu_pd(&p->w, v); }

// Hamilton product of single quaternions held in registers.
inline __m256d hamilton(__m256d a, __m256d b) {
  const __m256d s1 = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);   // flip lanes w, y
  const __m256d s2 = _mm256_set_pd(-0.0, 0.0, 0.0, -0.0);   // flip lanes w, z
  const __m256d s3 = _mm256_set_pd(0.0, 0.0, -0.0, -0.0);   // flip lanes w, x

  __m256d aw = _mm256_permute4x64_pd(a, 0x00);
  __m256d ax = _mm256_permute4x64_pd(a, 0x55);
  __m256d ay = _mm256_permute4x64_pd(a, 0xAA);
  __m256d az = _mm256_permute4x64_pd(a, 0xFF);

  __m256d t0 = _mm256_mul_pd(aw, b);
  __m256d t1 = _mm256_xor_pd(_mm256_mul_pd(ax, _mm256_permute4x64_pd(b, 0xB1)), s1);
  __m256d t2 = _mm256_xor_pd(_mm256_mul_pd(ay, _mm256_permute4x64_pd(b, 0x4E)), s2);
  __m256d t3 = _mm256_xor_pd(_mm256_mul_pd(az, _mm256_permute4x64_pd(b, 0x1B)), s3);

  return _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(t0, t1), t2), t3);
}

// conj(a): flip x, y, z lanes.
inline __m256d conj_q(__m256d a) {
  const __m256d m = _mm256_set_pd(-0.0, -0.0, -0.0, 0.0);
  return _mm256_xor_pd(a, m);
}

void saxpy_avx2(double c, const double* x, double* y, std::size_t m) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(vc, vx)));
  }
  for (; i < m; ++i) y[i] += c * x[i];
}

void sscale_avx2(double c, const double* x, double* y, std::size_t m) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(vc, _mm256_loadu_pd(x + i)));
  for (; i < m; ++i) y[i] = c * x[i];
}

void qmul_avx2(const Quat* a, const Quat* b, Quat* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) store_q(out + i, hamilton(load_q(a + i), load_q(b + i)));
}

void qmul_acc_avx2(const Quat* a, const Quat* b, Quat* acc, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    __m256d v = _mm256_add_pd(load_q(acc + i), hamilton(load_q(a + i), load_q(b + i)));
    store_q(acc + i, v);
  }
}

void qconj_mul_avx2(const Quat* a, const Quat* b, Quat* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i)
    store_q(out + i, hamilton(conj_q(load_q(a + i)), load_q(b + i)));
}

double qnorm2_avx2(const Quat* a, std::size_t m) {
  // Matches the scalar reduction order: per quat ((w^2 + x^2) + y^2) + z^2,
  // accumulated sequentially.
  double s = 0.0;
  alignas(32) double lane[4];
  for (std::size_t i = 0; i < m; ++i) {
    __m256d v = load_q(a + i);
    _mm256_store_pd(lane, _mm256_mul_pd(v, v));
    s += ((lane[0] + lane[1]) + lane[2]) + lane[3];
  }
  return s;
}

void qgemm_avx2(const Quat* a, const Quat* b, Quat* c, int n, std::size_t count) {
  const std::size_t blk = static_cast<std::size_t>(n) * n;
  for (std::size_t s = 0; s < count; ++s) {
    const Quat* as = a + s * blk;
    const Quat* bs = b + s * blk;
    Quat* cs = c + s * blk;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        __m256d acc = hamilton(load_q(as + i * n), load_q(bs + j));
        for (int l = 1; l < n; ++l)
          acc = _mm256_add_pd(acc, hamilton(load_q(as + i * n + l), load_q(bs + l * n + j)));
        store_q(cs + i * n + j, acc);
      }
  }
}

}  // namespace

const detail::Table& detail::avx2_table() {
  static const Table t{saxpy_avx2, sscale_avx2,  qmul_avx2, qmul_acc_avx2,
                       qconj_mul_avx2, qnorm2_avx2, qgemm_avx2};
  return t;
}

bool detail::avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace hpn::simd

#else  // non-x86: scalar only

namespace hpn::simd {
const detail::Table& detail::avx2_table() { return detail::scalar_table(); }
bool detail::avx2_supported() { return false; }
}  // namespace hpn::simd

#endif
