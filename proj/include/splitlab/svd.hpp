#pragma once

#include <cstddef>

#include "splitlab/matrix.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

// Thin factors truncated at the numerical rank: X ≈ U diag(s) Vᵀ.
struct SvdFactors {
    Matrix left_vectors;   // m×r
    Vector singular_values;  // descending, > rank_eps·σ_max
    Matrix right_vectors;  // n×r
    std::size_t numerical_rank = 0;
};

// One-sided Jacobi; all min(m,n) singular values, descending.
Vector singular_values(const Matrix& x);
SvdFactors svd(const Matrix& x, const Tolerances& tol = {});
Matrix pseudoinverse(const Matrix& x, const Tolerances& tol = {});
std::size_t numerical_rank(const Matrix& x, const Tolerances& tol = {});

}  // namespace splitlab
