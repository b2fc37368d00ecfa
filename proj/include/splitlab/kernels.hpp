#pragma once

#include "splitlab/matrix.hpp"

namespace splitlab::kernels {

// Row-parallel products. Each output entry is accumulated in the same
// order as the serial reference, so results are bitwise identical.
Matrix gemm(const Matrix& a, const Matrix& b);
Vector gemv(const Matrix& a, const Vector& x);
// aᵀb without forming the transpose.
Matrix gemm_tn(const Matrix& a, const Matrix& b);

namespace serial {
Matrix gemm(const Matrix& a, const Matrix& b);
Vector gemv(const Matrix& a, const Vector& x);
Matrix gemm_tn(const Matrix& a, const Matrix& b);
}  // namespace serial

// Work (in multiply-adds) below which the parallel kernels stay serial.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

int max_threads();

}  // namespace splitlab::kernels
