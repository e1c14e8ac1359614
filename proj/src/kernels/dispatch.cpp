#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hermlat/kernels/inner_product.hpp"

namespace hermlat::kernels {

#ifndef HERMLAT_HAVE_AVX2
namespace avx2 {
bool available() { return false; }
void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out) {
  scalar::dot_rows(rows, nrows, dim, q, out);
}
void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2) {
  scalar::dot_rows2(rows, nrows, dim, q1, q2, out1, out2);
}
}  // namespace avx2
#endif

namespace {

// 0 = follow environment and cpu, 1 = forced scalar, 2 = cpu only (environment ignored)
std::atomic<int> override_state{0};

bool env_forces_scalar() {
  static const bool forced = [] {
    const char* v = std::getenv("HERMLAT_FORCE_SCALAR");
    return v != nullptr && *v != '\0' && std::strcmp(v, "0") != 0;
  }();
  return forced;
}

bool use_avx2() {
  static const bool cpu = avx2::available();
  int s = override_state.load(std::memory_order_relaxed);
  if (s == 1) return false;
  if (s == 0 && env_forces_scalar()) return false;
  return cpu;
}

}  // namespace

void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out) {
  if (use_avx2()) return avx2::dot_rows(rows, nrows, dim, q, out);
  scalar::dot_rows(rows, nrows, dim, q, out);
}

void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2) {
  if (use_avx2()) return avx2::dot_rows2(rows, nrows, dim, q1, q2, out1, out2);
  scalar::dot_rows2(rows, nrows, dim, q1, q2, out1, out2);
}

std::string_view active_isa() { return use_avx2() ? "avx2" : "scalar"; }

void force_scalar(bool on) { override_state.store(on ? 1 : 2); }

}  // namespace hermlat::kernels
