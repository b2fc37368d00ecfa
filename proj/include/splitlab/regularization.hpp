#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

// (A, λ, B_λ = AᵀA + λI). Copies share the lazily computed rhs map.
class RegularizedSystem {
public:
    RegularizedSystem(Matrix A, double lambda, const Tolerances& tol = {});

    const Matrix& A() const { return A_; }
    double lambda() const { return lambda_; }
    const Matrix& B() const { return B_; }
    std::size_t n() const { return B_.rows(); }
    const Tolerances& tolerances() const { return tol_; }

    // B_λ⁻¹Aᵀ, computed once under std::call_once.
    const Matrix& rhs_map() const;
    // Aᵀb, the right-hand side of the regularized system.
    Vector rhs(const Vector& b) const;

private:
    struct Cache;
    Matrix A_;
    double lambda_ = 0.0;
    Matrix B_;
    Tolerances tol_;
    std::shared_ptr<Cache> cache_;
};

RegularizedSystem build_regularized(const Matrix& A, double lambda, const Tolerances& tol = {});

// B_λ⁻¹Aᵀ. The Gram matrix is formed and factored in extended precision,
// so the map stays accurate for λ far below ε‖A‖².
Matrix tikhonov_map(const RegularizedSystem& sys);

struct LambdaSweep {
    std::vector<double> schedule;  // strictly decreasing
    std::vector<double> errors;    // ‖B_λ⁻¹Aᵀ − A†‖_F per λ
    Matrix limit_estimate;         // map at the smallest λ
};

// 1e-2, 1e-3, …, 1e-12.
std::vector<double> default_schedule();
void validate_schedule(const std::vector<double>& schedule);
// λ values are processed in parallel; results are stored by index.
LambdaSweep limit_sweep(const Matrix& A, const std::vector<double>& schedule, const Tolerances& tol = {});

enum class SplitStrategy { Jacobi, Tridiag, Custom };

// Jacobi: M_λ = diag(B_λ). Tridiag: M_λ = tridiagonal band of B_λ.
SingleSplitting split_regularized(const RegularizedSystem& sys, SplitStrategy strategy);
// Custom single splitting from M_λ (N_λ = M_λ − B_λ) or from both parts.
SingleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& M);
SingleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& M, const Matrix& N);
DoubleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& P, const Matrix& R, const Matrix& S);

// λ ↦ splitting of B_λ. Theorem checkers evaluate these along a schedule.
using SingleFamily = std::function<SingleSplitting(const RegularizedSystem&)>;
using DoubleFamily = std::function<DoubleSplitting(const RegularizedSystem&)>;

namespace family {
SingleFamily jacobi();
SingleFamily fixed_preconditioner(Matrix M);  // M_λ = M
SingleFamily fixed_remainder(Matrix N);       // N_λ = N
SingleFamily first_type(Matrix G);            // M_λ = B_λ(I − G)⁻¹, so M_λ⁻¹N_λ = G
SingleFamily second_type(Matrix G);           // M_λ = (I − G)⁻¹B_λ, so N_λM_λ⁻¹ = G
DoubleFamily fixed_parts(Matrix P, Matrix R, Matrix S);  // ignores λ; P − R + S must equal B_λ
DoubleFamily fixed_remainders(Matrix R, Matrix S);       // P_λ = B_λ + R − S
DoubleFamily type_one(Matrix X, Matrix Y);    // P_λ = B_λ(I − X − Y)⁻¹, R_λ = P_λX, S_λ = −P_λY
DoubleFamily type_two(Matrix X, Matrix Y);    // P_λ = (I − X − Y)⁻¹B_λ, R_λ = XP_λ, S_λ = −YP_λ
}  // namespace family

}  // namespace splitlab
