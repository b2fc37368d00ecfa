#pragma once

#include <optional>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

struct SingleClass {
    bool proper = false;
    bool weak1 = false;  // U†V ≥ 0 (U⁻¹V for nonsingular U)
    bool weak2 = false;  // VU† ≥ 0
};

// A = U − V, validated and classified once at construction.
class SingleSplitting {
public:
    // Throws ConsistencyError unless A = U − V to equal_eps.
    static SingleSplitting create(Matrix A, Matrix U, Matrix V, const Tolerances& tol = {});
    // V = U − A.
    static SingleSplitting from_preconditioner(Matrix A, Matrix U, const Tolerances& tol = {});

    const Matrix& A() const { return A_; }
    const Matrix& U() const { return U_; }
    const Matrix& V() const { return V_; }
    // U⁻¹ when U is square and nonsingular, U† otherwise.
    const Matrix& u_inverse() const { return u_inv_; }
    bool u_nonsingular() const { return u_nonsingular_; }
    const SingleClass& flags() const { return flags_; }
    const Tolerances& tolerances() const { return tol_; }

    // U†V (first-type iteration matrix) and VU† (second-type form).
    Matrix iteration_matrix() const;
    Matrix second_type_matrix() const;

private:
    SingleSplitting() = default;
    Matrix A_, U_, V_, u_inv_;
    bool u_nonsingular_ = false;
    SingleClass flags_;
    Tolerances tol_;
};

struct DoubleClass {
    bool double_proper = false;
    bool type1 = false;            // P⁻¹R ≥ 0, −P⁻¹S ≥ 0 (P† form when P is singular)
    std::optional<bool> type2;     // RP⁻¹ ≥ 0, −SP⁻¹ ≥ 0; empty when not admissible
};

// A = P − R + S, validated and classified once at construction.
class DoubleSplitting {
public:
    static DoubleSplitting create(Matrix A, Matrix P, Matrix R, Matrix S, const Tolerances& tol = {});

    const Matrix& A() const { return A_; }
    const Matrix& P() const { return P_; }
    const Matrix& R() const { return R_; }
    const Matrix& S() const { return S_; }
    const Matrix& p_inverse() const { return p_inv_; }
    bool p_nonsingular() const { return p_nonsingular_; }
    const DoubleClass& flags() const { return flags_; }
    const Tolerances& tolerances() const { return tol_; }
    std::size_t n() const { return A_.cols(); }

    // Type II admission: A square, symmetric, nonsingular, and P nonsingular.
    bool type2_admissible() const { return flags_.type2.has_value(); }
    // Throws HypothesisError (nonsymmetric A) or SingularityError when not admissible.
    bool type2() const;
    // Throws SingularityError when P is singular.
    const Matrix& p_inverse_strict() const;

private:
    DoubleSplitting() = default;
    Matrix A_, P_, R_, S_, p_inv_;
    bool p_nonsingular_ = false;
    bool a_symmetric_ = false;
    bool a_nonsingular_ = false;
    DoubleClass flags_;
    Tolerances tol_;
};

// Projector equalities UU† = AA† and U†U = A†A.
bool validate_proper(const SingleSplitting& s, const Tolerances& tol = {});
bool projectors_match(const Matrix& A, const Matrix& U, const Tolerances& tol = {});
SingleClass classify_single(const SingleSplitting& s, const Tolerances& tol = {});
DoubleClass classify_double(const DoubleSplitting& d, const Tolerances& tol = {});

struct PerronLink {
    double rho_iter = 0.0;  // ρ(U†V), or ρ(VU†) for the second type
    double rho_aux = 0.0;   // ρ(A†V), or ρ(VA†)
    double relation_residual = 0.0;
    bool second_type = false;
};

// Requires a proper splitting with U†V ≥ 0 and A†V ≥ 0 (or the second-type
// analogues); throws HypothesisError naming the failed predicate.
PerronLink perron_link(const SingleSplitting& s, const Tolerances& tol = {});

// U = αA, V = (α − 1)A.
SingleSplitting generate_proper_splitting(const Matrix& A, double alpha, const Tolerances& tol = {});
// P = U, R = V + C, S = C.
DoubleSplitting generate_double_from_single(const SingleSplitting& s, const Matrix& C, const Tolerances& tol = {});

// Bundle order A,U,V or A,P,R,S.
SingleSplitting single_from_bundle(const std::vector<Matrix>& ms, const Tolerances& tol = {});
DoubleSplitting double_from_bundle(const std::vector<Matrix>& ms, const Tolerances& tol = {});

}  // namespace splitlab
