#include "hermlat/kernels/inner_product.hpp"

namespace hermlat::kernels::scalar {

void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out) {
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::int32_t* r = rows + i * dim;
    std::int64_t s = 0;
    for (std::size_t k = 0; k < dim; ++k) s += static_cast<std::int64_t>(r[k]) * q[k];
    out[i] = s;
  }
}

void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2) {
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::int32_t* r = rows + i * dim;
    std::int64_t s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      s1 += static_cast<std::int64_t>(r[k]) * q1[k];
      s2 += static_cast<std::int64_t>(r[k]) * q2[k];
    }
    out1[i] = s1;
    out2[i] = s2;
  }
}

}  // namespace hermlat::kernels::scalar
