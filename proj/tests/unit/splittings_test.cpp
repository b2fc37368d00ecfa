#include <gtest/gtest.h>

#include <random>

#include "eigen_oracle.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/order.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/svd.hpp"

using namespace splitlab;

namespace {

const Matrix kOnes2{{1.0, 1.0}, {1.0, 1.0}};

TEST(SingleSplitting, ConsistencyIsEnforced) {
    const Matrix A{{2.0, 1.0}, {1.0, 2.0}};
    EXPECT_THROW(SingleSplitting::create(A, A, Matrix{{0.0, 0.1}, {0.0, 0.0}}), ConsistencyError);
    EXPECT_THROW(SingleSplitting::create(A, Matrix(2, 3), Matrix(2, 3)), DimensionError);
    const SingleSplitting s = SingleSplitting::from_preconditioner(A, Matrix::identity(2) * 3.0);
    EXPECT_LT(max_abs(s.V() - (Matrix::identity(2) * 3.0 - A)), 1e-15);
}

TEST(SingleSplitting, TrivialSplittingIsProper) {
    std::mt19937_64 rng(11);
    const Matrix A = oracle::exact_rank(rng, 5, 4, 2);
    const SingleSplitting s = SingleSplitting::create(A, A, Matrix(5, 4));
    EXPECT_TRUE(validate_proper(s));
    EXPECT_TRUE(s.flags().weak1);
}

TEST(SingleSplitting, FullRankPerturbationIsNotProper) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 10; ++k) {
        const Matrix A = oracle::exact_rank(rng, 6, 6, 3);
        const Matrix U = A + oracle::random_matrix(rng, 6, 6);
        ASSERT_EQ(numerical_rank(U), 6u);
        EXPECT_FALSE(validate_proper(SingleSplitting::create(A, U, U - A)));
    }
}

TEST(SingleSplitting, NegativeIdentityIsNotWeak) {
    const Matrix I = Matrix::identity(3);
    const SingleClass c = SingleSplitting::create(I * 2.0, I, I * -1.0).flags();
    EXPECT_FALSE(c.weak1);
    EXPECT_FALSE(c.weak2);
    EXPECT_TRUE(c.proper);
}

// The reference rectangular example: weak of both types, but R(M) differs
// from R(A), so it is not proper.
TEST(SingleSplitting, ReferenceRectangularExample) {
    const auto& ex = fixtures::rectangular_weak();
    const SingleSplitting s = SingleSplitting::create(ex.A, ex.M, ex.N);
    EXPECT_TRUE(s.flags().weak1);
    EXPECT_TRUE(s.flags().weak2);
    EXPECT_FALSE(s.flags().proper);
    EXPECT_GT(max_abs(ex.M * pseudoinverse(ex.M) - ex.A * pseudoinverse(ex.A)), 0.3);
    EXPECT_LT(max_abs(pseudoinverse(ex.M) * ex.M - pseudoinverse(ex.A) * ex.A), 1e-10);
    const Matrix NMp = ex.N * pseudoinverse(ex.M);
    EXPECT_LT(max_abs(NMp - ex.NMpinv_reference), 1e-3);
    try {
        perron_link(s);
        FAIL() << "expected HypothesisError";
    } catch (const HypothesisError& e) {
        EXPECT_EQ(e.predicate, "proper");
    }
}

TEST(SingleSplitting, ReferenceRegularizedSplittingIsWeakFirstType) {
    const auto& ex = fixtures::rectangular_weak();
    const SingleSplitting s = split_regularized(build_regularized(ex.A, ex.lambda), ex.M_lambda, ex.N_lambda);
    EXPECT_TRUE(s.flags().weak1);
    EXPECT_TRUE(s.u_nonsingular());
    EXPECT_NEAR(rho(s.iteration_matrix()), 0.7594, 5e-4);
}

TEST(SingleSplitting, SingularSquarePreconditionerUsesPseudoinverse) {
    const Matrix A = kOnes2;
    const SingleSplitting s = SingleSplitting::create(A, A * 2.0, A);
    EXPECT_FALSE(s.u_nonsingular());
    EXPECT_LT(max_abs(s.u_inverse() - oracle::pseudoinverse(A * 2.0)), 1e-12);
}

TEST(PerronLink, ScalingSplittings) {
    const PerronLink two = perron_link(generate_proper_splitting(kOnes2, 2.0));
    EXPECT_NEAR(two.rho_iter, 0.5, 1e-12);
    EXPECT_NEAR(two.rho_aux, 1.0, 1e-12);
    const PerronLink four = perron_link(generate_proper_splitting(kOnes2, 4.0));
    EXPECT_NEAR(four.rho_iter, 0.75, 1e-12);
    EXPECT_NEAR(four.rho_aux, 3.0, 1e-12);
    EXPECT_LT(four.relation_residual, 1e-12);
}

TEST(PerronLink, RejectsNegativeAuxiliary) {
    const Matrix A{{1.0, -1.0}, {-1.0, 1.0}};  // A†A has negative entries
    try {
        perron_link(generate_proper_splitting(A, 2.0));
        FAIL() << "expected HypothesisError";
    } catch (const HypothesisError& e) {
        EXPECT_FALSE(e.predicate.empty());
    }
}

TEST(GenerateProper, RadiusIsAlphaMinusOneOverAlpha) {
    std::mt19937_64 rng(13);
    const Matrix A = oracle::exact_rank(rng, 7, 5, 3);
    EXPECT_NEAR(rho(generate_proper_splitting(A, 2.0).iteration_matrix()), 0.5, 1e-10);
    EXPECT_NEAR(rho(generate_proper_splitting(A, 10.0).iteration_matrix()), 0.9, 1e-10);
    EXPECT_THROW(generate_proper_splitting(A, 1.0), ParameterError);
    EXPECT_THROW(generate_proper_splitting(A, 0.5), ParameterError);
}

TEST(GenerateProper, ReferenceMatrixWithAlphaFour) {
    const auto& ex = fixtures::rectangular_weak();
    const SingleSplitting s = generate_proper_splitting(ex.A, 4.0);
    EXPECT_TRUE(validate_proper(s));
    EXPECT_LT(perron_link(s).relation_residual, 1e-10);
}

TEST(DoubleSplitting, ZeroRemaindersAreBothTypes) {
    const Matrix A{{4.0, 1.0}, {1.0, 3.0}}, Z(2, 2);
    const DoubleSplitting d = DoubleSplitting::create(A, A, Z, Z);
    EXPECT_TRUE(d.flags().type1);
    ASSERT_TRUE(d.type2_admissible());
    EXPECT_TRUE(d.type2());
    EXPECT_TRUE(d.flags().double_proper);
}

TEST(DoubleSplitting, TypeTwoNeedsSymmetricA) {
    const Matrix A{{4.0, 1.0}, {0.0, 3.0}}, Z(2, 2);
    const DoubleSplitting d = DoubleSplitting::create(A, A, Z, Z);
    EXPECT_FALSE(d.type2_admissible());
    EXPECT_THROW(d.type2(), HypothesisError);
    EXPECT_THROW(DoubleSplitting::create(A, A, Z, Matrix::identity(2)), ConsistencyError);
}

TEST(DoubleSplitting, SingularPStrictInverseThrows) {
    const Matrix Z(2, 2);
    const DoubleSplitting d = DoubleSplitting::create(kOnes2, kOnes2, Z, Z);
    EXPECT_FALSE(d.p_nonsingular());
    EXPECT_THROW(d.p_inverse_strict(), SingularityError);
}

TEST(DoubleSplitting, ReferenceTypeTwoPair) {
    const auto& ex = fixtures::type_two_pair();
    const DoubleSplitting d1 = DoubleSplitting::create(ex.A, ex.P1, ex.R1, ex.S1);
    const DoubleSplitting d2 = DoubleSplitting::create(ex.A, ex.P2, ex.R2, ex.S2);
    EXPECT_TRUE(d1.type2());
    EXPECT_TRUE(d2.type2());
}

// The reference (P, R, S) sum to A' = P − R + S, which differs from the
// reference A in one entry; on A' the splitting is type I but not double proper.
TEST(DoubleSplitting, ReferenceRegularizedExample) {
    const auto& ex = fixtures::regularized_double();
    const Matrix Aprime = ex.P - ex.R + ex.S;
    EXPECT_GT(max_abs(Aprime - ex.A), 1.0);
    EXPECT_THROW(DoubleSplitting::create(ex.A, ex.P, ex.R, ex.S), ConsistencyError);
    const DoubleSplitting d = DoubleSplitting::create(Aprime, ex.P, ex.R, ex.S);
    EXPECT_TRUE(d.flags().type1);
    EXPECT_FALSE(d.flags().double_proper);
    const DoubleSplitting reg =
        split_regularized(build_regularized(ex.A, ex.lambda), ex.P_lambda, ex.R_lambda, ex.S_lambda);
    EXPECT_TRUE(reg.flags().type1);
}

TEST(GenerateDouble, ReducesToSingle) {
    std::mt19937_64 rng(14);
    const Matrix A = oracle::random_matrix(rng, 4, 4);
    const SingleSplitting s = SingleSplitting::from_preconditioner(A, A + Matrix::identity(4));
    const DoubleSplitting zero = generate_double_from_single(s, Matrix(4, 4));
    EXPECT_EQ(zero.R().entries(), s.V().entries());
    EXPECT_EQ(max_abs(zero.S()), 0.0);
    const DoubleSplitting neg = generate_double_from_single(s, -s.V());
    EXPECT_LT(max_abs(neg.R()), 1e-15);
    EXPECT_EQ(neg.S().entries(), (-s.V()).entries());
    EXPECT_THROW(generate_double_from_single(s, Matrix(3, 3)), DimensionError);
}

TEST(GenerateDouble, NonpositiveCWithMonotonePIsTypeOne) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        Matrix U(4, 4), V(4, 4), C(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            U(i, i) = 5.0 + u(rng);
            for (std::size_t j = 0; j < 4; ++j) {
                V(i, j) = 0.5 + u(rng);
                C(i, j) = -0.5 * u(rng);
            }
        }
        const SingleSplitting s = SingleSplitting::create(U - V, U, V);
        const DoubleSplitting d = generate_double_from_single(s, C);
        EXPECT_TRUE(entrywise_geq(inverse(d.P()), Matrix(4, 4), Tolerances{}));
        EXPECT_TRUE(d.flags().type1);
    }
}

TEST(Bundles, ArityIsChecked) {
    const Matrix A = Matrix::identity(2);
    EXPECT_THROW(single_from_bundle({A, A}), ParameterError);
    EXPECT_THROW(double_from_bundle({A, A, A}), ParameterError);
    EXPECT_NO_THROW(single_from_bundle({A, A, Matrix(2, 2)}));
}

}  // namespace
