#pragma once

#include "splitlab/matrix.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

// LU with partial pivoting. Throws SingularityError when the smallest
// singular value of x is at or below rank_eps·σ_max.
Matrix solve_dense(const Matrix& x, const Matrix& b, const Tolerances& tol = {});
Vector solve_dense(const Matrix& x, const Vector& b, const Tolerances& tol = {});
Matrix inverse(const Matrix& x, const Tolerances& tol = {});

// x⁻¹ when x is square and numerically nonsingular, x† otherwise.
Matrix inverse_or_pinv(const Matrix& x, const Tolerances& tol = {});
bool is_nonsingular(const Matrix& x, const Tolerances& tol = {});

// Solves (aᵀa + λI) y = rhs with the Gram matrix formed and factored in
// binary128 (long double without compiler support). Needed once λ drops
// below unit roundoff times ‖a‖², where double cannot represent B_λ.
Matrix solve_normal_extended(const Matrix& a, double lambda, const Matrix& rhs);

}  // namespace splitlab
