#include "splitlab/kernels.hpp"

#include <string>

#include "splitlab/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace splitlab::kernels {

namespace {

void check_gemm(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("gemm: " + a.shape_string() + " times " + b.shape_string());
}

void check_gemm_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw DimensionError("gemm_tn: " + a.shape_string() + "^T times " + b.shape_string());
}

// Row i of c = a·b. i-k-j order keeps b and c rows contiguous.
inline void gemm_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    const std::size_t inner = a.cols(), n = b.cols();
    double* ci = c.data() + i * n;
    const double* ai = a.data() + i * inner;
    for (std::size_t k = 0; k < inner; ++k) {
        const double aik = ai[k];
        const double* bk = b.data() + k * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
}

inline void gemm_tn_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    const std::size_t inner = a.rows(), n = b.cols(), ac = a.cols();
    double* ci = c.data() + i * n;
    for (std::size_t k = 0; k < inner; ++k) {
        const double aki = a.data()[k * ac + i];
        const double* bk = b.data() + k * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] += aki * bk[j];
    }
}

inline double gemv_row(const Matrix& a, const Vector& x, std::size_t i) {
    const double* ai = a.data() + i * a.cols();
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * x[k];
    return s;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Matrix gemm(const Matrix& a, const Matrix& b) {
    check_gemm(a, b);
    Matrix c(a.rows(), b.cols());
    const auto rows = static_cast<std::ptrdiff_t>(a.rows());
    const bool wide = a.rows() * a.cols() * b.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
    for (std::ptrdiff_t i = 0; i < rows; ++i) gemm_row(a, b, c, static_cast<std::size_t>(i));
    return c;
}

Matrix gemm_tn(const Matrix& a, const Matrix& b) {
    check_gemm_tn(a, b);
    Matrix c(a.cols(), b.cols());
    const auto rows = static_cast<std::ptrdiff_t>(a.cols());
    const bool wide = a.rows() * a.cols() * b.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
    for (std::ptrdiff_t i = 0; i < rows; ++i) gemm_tn_row(a, b, c, static_cast<std::size_t>(i));
    return c;
}

Vector gemv(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size())
        throw DimensionError("gemv: " + a.shape_string() + " times vector of length " + std::to_string(x.size()));
    Vector y(a.rows());
    const auto rows = static_cast<std::ptrdiff_t>(a.rows());
    const bool wide = a.rows() * a.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
    for (std::ptrdiff_t i = 0; i < rows; ++i) y[i] = gemv_row(a, x, static_cast<std::size_t>(i));
    return y;
}

namespace serial {

Matrix gemm(const Matrix& a, const Matrix& b) {
    check_gemm(a, b);
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) gemm_row(a, b, c, i);
    return c;
}

Matrix gemm_tn(const Matrix& a, const Matrix& b) {
    check_gemm_tn(a, b);
    Matrix c(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) gemm_tn_row(a, b, c, i);
    return c;
}

Vector gemv(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionError("gemv: length mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = gemv_row(a, x, i);
    return y;
}

}  // namespace serial

}  // namespace splitlab::kernels
