#include <immintrin.h>

#include "hermlat/kernels/inner_product.hpp"

namespace hermlat::kernels::avx2 {

namespace {

inline std::int64_t hsum(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return _mm_cvtsi128_si64(s) + _mm_extract_epi64(s, 1);
}

// 4 int32 lanes widened to int64; _mm256_mul_epi32 then multiplies the
// sign-extended low halves exactly.
inline __m256i load4(const std::int32_t* p) {
  return _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

}  // namespace

bool available() { return __builtin_cpu_supports("avx2"); }

void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out) {
  const std::size_t body = dim & ~std::size_t{3};
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::int32_t* r = rows + i * dim;
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t k = 0; k < body; k += 4) acc = _mm256_add_epi64(acc, _mm256_mul_epi32(load4(r + k), load4(q + k)));
    std::int64_t s = hsum(acc);
    for (std::size_t k = body; k < dim; ++k) s += static_cast<std::int64_t>(r[k]) * q[k];
    out[i] = s;
  }
}

void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2) {
  const std::size_t body = dim & ~std::size_t{3};
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::int32_t* r = rows + i * dim;
    __m256i a1 = _mm256_setzero_si256();
    __m256i a2 = _mm256_setzero_si256();
    for (std::size_t k = 0; k < body; k += 4) {
      __m256i x = load4(r + k);
      a1 = _mm256_add_epi64(a1, _mm256_mul_epi32(x, load4(q1 + k)));
      a2 = _mm256_add_epi64(a2, _mm256_mul_epi32(x, load4(q2 + k)));
    }
    std::int64_t s1 = hsum(a1), s2 = hsum(a2);
    for (std::size_t k = body; k < dim; ++k) {
      s1 += static_cast<std::int64_t>(r[k]) * q1[k];
      s2 += static_cast<std::int64_t>(r[k]) * q2[k];
    }
    out1[i] = s1;
    out2[i] = s2;
  }
}

}  // namespace hermlat::kernels::avx2
