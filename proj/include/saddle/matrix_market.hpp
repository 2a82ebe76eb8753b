#ifndef SADDLE_MATRIX_MARKET_HPP
#define SADDLE_MATRIX_MARKET_HPP

#include "saddle/csr_matrix.hpp"

#include <string>

namespace saddle {

// Matrix Market coordinate format, real valued. Reading accepts the
// `general` and `symmetric` qualifiers; symmetric input is expanded to
// full storage. Writing always emits `general` with 1-based indices and
// 17 significant digits so values round-trip exactly.
CsrMatrix mm_read(const std::string& path);
void mm_write(const std::string& path, const CsrMatrix& A);

} // namespace saddle

#endif // SADDLE_MATRIX_MARKET_HPP
