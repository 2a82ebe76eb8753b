/// @file types.hpp
/// @brief Scalar/index types and small dense-vector kernels shared by the library.

#ifndef SADDLE_TYPES_HPP
#define SADDLE_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace saddle {

/// 64-bit indices everywhere; desk-scale problems never overflow 32 bits,
/// but a single width removes a class of mistakes.
using index_t = std::int64_t;

/// Dense vector of doubles. Length is fixed by construction; finiteness is
/// enforced at I/O boundaries, not per operation.
using DenseVector = std::vector<double>;

inline double dot(const DenseVector& x, const DenseVector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double nrm2(const DenseVector& x) { return std::sqrt(dot(x, x)); }

/// y += a*x
inline void axpy(double a, const DenseVector& x, DenseVector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scal(double a, DenseVector& x) {
    for (double& v : x) v *= a;
}

inline bool all_finite(const DenseVector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace saddle

#endif // SADDLE_TYPES_HPP
