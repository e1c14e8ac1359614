#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hermlat::kernels {

// Batched integer inner products used by the vector-table scans. rows holds
// nrows vectors of length dim back to back. Products are accumulated in
// int64, so callers keep |entries| below 2^24 for dim up to 2^14.

// out[i] = <rows[i], q>
void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out);
// out1[i] = <rows[i], q1>, out2[i] = <rows[i], q2> in one pass over rows.
void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2);

namespace scalar {
void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out);
void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2);
}  // namespace scalar

namespace avx2 {
bool available();
void dot_rows(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q,
              std::int64_t* out);
void dot_rows2(const std::int32_t* rows, std::size_t nrows, std::size_t dim, const std::int32_t* q1,
               const std::int32_t* q2, std::int64_t* out1, std::int64_t* out2);
}  // namespace avx2

// "avx2" or "scalar". HERMLAT_FORCE_SCALAR=1 in the environment pins scalar.
std::string_view active_isa();
// Test hook; overrides the environment until reset.
void force_scalar(bool on);

}  // namespace hermlat::kernels
