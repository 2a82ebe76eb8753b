/// @file ordering.hpp
/// @brief Fill-reducing symmetric ordering for sparse LU.

#ifndef SADDLE_ORDERING_HPP
#define SADDLE_ORDERING_HPP

#include "saddle/csr_matrix.hpp"
#include "saddle/types.hpp"

#include <vector>

namespace saddle {

/// Approximate-minimum-degree ordering computed on the symmetrized
/// pattern of A (pattern(A) + pattern(Aᵀ), values ignored). Returns a
/// permutation perm of 0..n-1 meaning: eliminate original index perm[k]
/// at step k. Deterministic for a fixed input.
///
/// Quotient-graph formulation with element absorption and the one-pass
/// approximate external degree bound; supervariable merging is omitted
/// (desk-scale inputs do not need it).
std::vector<index_t> amd_order(const CsrMatrix& pattern);

/// Identity permutation, the "natural" ordering baseline.
std::vector<index_t> natural_order(index_t n);

} // namespace saddle

#endif // SADDLE_ORDERING_HPP
