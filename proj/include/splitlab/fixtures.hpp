#pragma once

#include "splitlab/matrix.hpp"

// Worked examples shipped with the library: input matrices exactly as
// given, together with the 4-digit reference values of derived quantities that
// the reproduction tables compare against.
namespace splitlab::fixtures {

// Rectangular weak splitting A = M − N and a splitting of B_λ at λ = 1e-4.
struct SingleExample {
    double lambda = 1e-4;
    Matrix A, M, N;
    Matrix M_lambda, N_lambda;

    Matrix B_reference;
    Matrix NMpinv_reference;         // N M†
    Matrix converse_diff_reference;  // A†NM† − M_λ⁻¹N_λA†
    double rho_regularized_reference = 0.7594;
    double rho_original_reference = 0.9823;
};

// Two double splittings of one symmetric nonsingular A.
struct DoublePairExample {
    Matrix A;
    Matrix P1, R1, S1;
    Matrix P2, R2, S2;

    Matrix P2Ainv_reference, P1Ainv_reference, S2Ainv_reference, S1Ainv_reference;
    Matrix rate_diff_reference;   // R₁P₁⁻¹ − R₂P₂⁻¹
    Matrix scale_diff_reference;  // AP₁⁻¹ − AP₂⁻¹
    double rho1_reference = 0.6667;
    double rho2_reference = 0.7729;
};

// Double splitting of A and of B_λ at λ = 1e-4.
struct RegularizedDoubleExample {
    double lambda = 1e-4;
    Matrix A;  // as given; P − R + S differs from it in one entry
    Matrix P, R, S;
    Matrix P_lambda, R_lambda, S_lambda;

    Matrix B_reference;
    Matrix right_diff_reference;  // P†R − P_λ⁻¹R_λ
    Matrix left_diff_reference;   // P_λ⁻¹S_λ − P†S
    double rho_lambda_reference = 0.35192;
    double rho_original_reference = 0.7321;
};

const SingleExample& rectangular_weak();
const DoublePairExample& type_two_pair();
const RegularizedDoubleExample& regularized_double();

}  // namespace splitlab::fixtures
