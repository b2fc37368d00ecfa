#include "splitlab/splittings.hpp"

#include <cmath>

#include "splitlab/errors.hpp"
#include "splitlab/order.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"

namespace splitlab {

namespace {

bool is_nonneg(const Matrix& x, const Tolerances& tol) {
    return compare_geq(x, Matrix::zeros(x.rows(), x.cols()), tol).holds;
}

SingleClass classify(const Matrix& A, const Matrix& U, const Matrix& V, const Matrix& u_inv, const Tolerances& tol) {
    SingleClass c;
    c.proper = projectors_match(A, U, tol);
    c.weak1 = is_nonneg(u_inv * V, tol);
    c.weak2 = is_nonneg(V * u_inv, tol);
    return c;
}

DoubleClass classify(const Matrix& A, const Matrix& P, const Matrix& R, const Matrix& S, const Matrix& p_inv,
                     bool type2_admissible, const Tolerances& tol) {
    DoubleClass c;
    c.double_proper = projectors_match(A, P, tol);
    c.type1 = is_nonneg(p_inv * R, tol) && is_nonneg(-(p_inv * S), tol);
    if (type2_admissible) c.type2 = is_nonneg(R * p_inv, tol) && is_nonneg(-(S * p_inv), tol);
    return c;
}

}  // namespace

bool projectors_match(const Matrix& A, const Matrix& U, const Tolerances& tol) {
    require_same_shape(A, U, "projector comparison");
    const Matrix Ap = pseudoinverse(A, tol), Up = pseudoinverse(U, tol);
    return nearly_equal(U * Up, A * Ap, tol) && nearly_equal(Up * U, Ap * A, tol);
}

SingleSplitting SingleSplitting::create(Matrix A, Matrix U, Matrix V, const Tolerances& tol) {
    require_same_shape(A, U, "single splitting");
    require_same_shape(A, V, "single splitting");
    tol.validate();
    if (auto eq = compare_equal(A, U - V, tol); !eq.holds)
        throw ConsistencyError("A != U - V at " + eq.witness->to_string());
    SingleSplitting s;
    s.tol_ = tol;
    s.u_nonsingular_ = is_nonsingular(U, tol);
    s.u_inv_ = s.u_nonsingular_ ? inverse(U, tol) : pseudoinverse(U, tol);
    s.flags_ = classify(A, U, V, s.u_inv_, tol);
    s.A_ = std::move(A);
    s.U_ = std::move(U);
    s.V_ = std::move(V);
    return s;
}

SingleSplitting SingleSplitting::from_preconditioner(Matrix A, Matrix U, const Tolerances& tol) {
    require_same_shape(A, U, "single splitting");
    Matrix V = U - A;
    return create(std::move(A), std::move(U), std::move(V), tol);
}

// Solves rather than products with U⁻¹: regularized preconditioners inherit
// the conditioning of B_λ, and the explicit inverse loses the product.
Matrix SingleSplitting::iteration_matrix() const {
    return u_nonsingular_ ? solve_dense(U_, V_, tol_) : u_inv_ * V_;
}
Matrix SingleSplitting::second_type_matrix() const {
    return u_nonsingular_ ? solve_dense(U_.transpose(), V_.transpose(), tol_).transpose() : V_ * u_inv_;
}

DoubleSplitting DoubleSplitting::create(Matrix A, Matrix P, Matrix R, Matrix S, const Tolerances& tol) {
    require_same_shape(A, P, "double splitting");
    require_same_shape(A, R, "double splitting");
    require_same_shape(A, S, "double splitting");
    tol.validate();
    if (auto eq = compare_equal(A, P - R + S, tol); !eq.holds)
        throw ConsistencyError("A != P - R + S at " + eq.witness->to_string());
    DoubleSplitting d;
    d.tol_ = tol;
    d.p_nonsingular_ = is_nonsingular(P, tol);
    d.p_inv_ = d.p_nonsingular_ ? inverse(P, tol) : pseudoinverse(P, tol);
    d.a_symmetric_ = is_symmetric(A, tol);
    d.a_nonsingular_ = is_nonsingular(A, tol);
    d.flags_ = classify(A, P, R, S, d.p_inv_, d.a_symmetric_ && d.a_nonsingular_ && d.p_nonsingular_, tol);
    d.A_ = std::move(A);
    d.P_ = std::move(P);
    d.R_ = std::move(R);
    d.S_ = std::move(S);
    return d;
}

bool DoubleSplitting::type2() const {
    if (flags_.type2) return *flags_.type2;
    if (!a_symmetric_) throw HypothesisError("A symmetric", "type II is defined only for symmetric A");
    if (!a_nonsingular_) {
        const Vector s = singular_values(A_);
        throw SingularityError(s.back(), s.front(), "type II classification: A");
    }
    const Vector s = singular_values(P_);
    throw SingularityError(s.back(), s.front(), "type II classification: P");
}

const Matrix& DoubleSplitting::p_inverse_strict() const {
    if (!p_nonsingular_) {
        const Vector s = singular_values(P_);
        throw SingularityError(s.empty() ? 0.0 : s.back(), s.empty() ? 0.0 : s.front(), "P");
    }
    return p_inv_;
}

bool validate_proper(const SingleSplitting& s, const Tolerances& tol) { return projectors_match(s.A(), s.U(), tol); }

SingleClass classify_single(const SingleSplitting& s, const Tolerances& tol) {
    return classify(s.A(), s.U(), s.V(), s.u_inverse(), tol);
}

DoubleClass classify_double(const DoubleSplitting& d, const Tolerances& tol) {
    return classify(d.A(), d.P(), d.R(), d.S(), d.p_inverse(), d.type2_admissible(), tol);
}

PerronLink perron_link(const SingleSplitting& s, const Tolerances& tol) {
    if (!s.flags().proper) throw HypothesisError("proper", "R(U) = R(A) and N(U) = N(A) fail");
    const Matrix Ap = pseudoinverse(s.A(), tol);
    PerronLink link;
    Matrix iter, aux;
    if (s.flags().weak1) {
        aux = Ap * s.V();
        if (!is_nonneg(aux, tol)) throw HypothesisError("A†V >= 0", "first-type auxiliary matrix has negative entries");
        iter = s.iteration_matrix();
    } else if (s.flags().weak2) {
        aux = s.V() * Ap;
        if (!is_nonneg(aux, tol)) throw HypothesisError("VA† >= 0", "second-type auxiliary matrix has negative entries");
        iter = s.second_type_matrix();
        link.second_type = true;
    } else {
        throw HypothesisError("weak1 or weak2", "neither U†V >= 0 nor VU† >= 0");
    }
    link.rho_iter = rho(iter, tol);
    link.rho_aux = rho(aux, tol);
    link.relation_residual = std::abs(link.rho_iter - link.rho_aux / (1.0 + link.rho_aux));
    return link;
}

SingleSplitting generate_proper_splitting(const Matrix& A, double alpha, const Tolerances& tol) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ParameterError("alpha must exceed 1");
    return SingleSplitting::create(A, alpha * A, (alpha - 1.0) * A, tol);
}

DoubleSplitting generate_double_from_single(const SingleSplitting& s, const Matrix& C, const Tolerances& tol) {
    require_same_shape(s.A(), C, "double-from-single");
    return DoubleSplitting::create(s.A(), s.U(), s.V() + C, C, tol);
}

SingleSplitting single_from_bundle(const std::vector<Matrix>& ms, const Tolerances& tol) {
    if (ms.size() != 3) throw ParameterError("single-splitting bundle needs A, U, V; got " + std::to_string(ms.size()) + " matrices");
    return SingleSplitting::create(ms[0], ms[1], ms[2], tol);
}

DoubleSplitting double_from_bundle(const std::vector<Matrix>& ms, const Tolerances& tol) {
    if (ms.size() != 4) throw ParameterError("double-splitting bundle needs A, P, R, S; got " + std::to_string(ms.size()) + " matrices");
    return DoubleSplitting::create(ms[0], ms[1], ms[2], ms[3], tol);
}

}  // namespace splitlab
