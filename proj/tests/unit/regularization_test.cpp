#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "eigen_oracle.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"

using namespace splitlab;

namespace {

TEST(BuildRegularized, GramPlusShift) {
    const RegularizedSystem sys = build_regularized(Matrix{{1.0, 0.0}, {0.0, 0.0}}, 1.0);
    EXPECT_EQ(sys.B().entries(), (Matrix{{2.0, 0.0}, {0.0, 1.0}}).entries());
    EXPECT_THROW(build_regularized(Matrix::identity(2), 0.0), ParameterError);
    EXPECT_THROW(build_regularized(Matrix::identity(2), -1e-3), ParameterError);
    EXPECT_THROW(build_regularized(Matrix{}, 1.0), DimensionError);
}

TEST(BuildRegularized, ReferenceGramMatrices) {
    const auto& single = fixtures::rectangular_weak();
    const Matrix B1 = build_regularized(single.A, single.lambda).B();
    EXPECT_LT(max_abs(B1 - single.B_reference), 1e-3);
    EXPECT_NEAR(B1(0, 0), 24.0001, 1e-9);
    EXPECT_NEAR(B1(0, 1), 8.0, 1e-12);
    const auto& dbl = fixtures::regularized_double();
    const Matrix B2 = build_regularized(dbl.A, dbl.lambda).B();
    EXPECT_LT(max_abs(B2 - dbl.B_reference), 1e-3);
    EXPECT_NEAR(B2(1, 1), 5.0001, 1e-9);
}

TEST(TikhonovMap, AnalyticCases) {
    for (double lambda : {1.0, 1e-3, 1e-9}) {
        const Matrix map = tikhonov_map(build_regularized(Matrix{{1.0, 0.0}, {0.0, 0.0}}, lambda));
        EXPECT_NEAR(map(0, 0), 1.0 / (1.0 + lambda), 1e-15);
        EXPECT_EQ(map(1, 1), 0.0);
    }
    const Matrix half = tikhonov_map(build_regularized(Matrix::identity(3), 1.0));
    EXPECT_LT(max_abs(half - Matrix::identity(3) * 0.5), 1e-15);
}

TEST(TikhonovMap, ReferenceMatrixTendsToPseudoinverse) {
    const auto& ex = fixtures::rectangular_weak();
    EXPECT_LT(frobenius(tikhonov_map(build_regularized(ex.A, 1e-12)) - pseudoinverse(ex.A)), 1e-8);
}

TEST(TikhonovMap, SharedAcrossCopiesAndThreads) {
    std::mt19937_64 rng(21);
    const RegularizedSystem sys = build_regularized(oracle::random_matrix(rng, 8, 5), 1e-3);
    std::vector<const Matrix*> seen(8);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < seen.size(); ++t) {
        pool.emplace_back([&, t] {
            const RegularizedSystem copy = sys;
            seen[t] = &copy.rhs_map();
        });
    }
    for (auto& th : pool) th.join();
    for (const Matrix* p : seen) EXPECT_EQ(p, &sys.rhs_map());
    const Matrix ref = solve_dense(sys.B(), sys.A().transpose());
    EXPECT_LT(max_abs(sys.rhs_map() - ref), 1e-12);
    EXPECT_THROW(sys.rhs(Vector(3, 1.0)), DimensionError);
}

TEST(LimitSweep, IdentityHasClosedForm) {
    const LambdaSweep sw = limit_sweep(Matrix::identity(4), default_schedule());
    ASSERT_EQ(sw.errors.size(), 11u);
    for (std::size_t k = 0; k < sw.errors.size(); ++k) {
        const double l = sw.schedule[k];
        EXPECT_NEAR(sw.errors[k], 2.0 * l / (1.0 + l), 1e-15);
        if (k) {
            EXPECT_LT(sw.errors[k], sw.errors[k - 1]);
        }
    }
}

TEST(LimitSweep, ReferenceMatrixConverges) {
    const LambdaSweep sw = limit_sweep(fixtures::rectangular_weak().A, default_schedule());
    EXPECT_LE(sw.errors.back(), 1e-6);
}

TEST(LimitSweep, RankDeficientDecreasesMonotonically) {
    std::mt19937_64 rng(22);
    const Matrix A = oracle::exact_rank(rng, 10, 7, 5);
    const LambdaSweep sw = limit_sweep(A, default_schedule());
    for (std::size_t k = 1; k < sw.errors.size(); ++k) EXPECT_LT(sw.errors[k], sw.errors[k - 1]);
    EXPECT_LT(frobenius(sw.limit_estimate - oracle::pseudoinverse(A)), 1e-8);
}

TEST(LimitSweep, ScheduleValidation) {
    const Matrix I = Matrix::identity(2);
    EXPECT_THROW(limit_sweep(I, {}), ParameterError);
    EXPECT_THROW(limit_sweep(I, {1e-2, 1e-2}), ParameterError);
    EXPECT_THROW(limit_sweep(I, {1e-3, 1e-2}), ParameterError);
    EXPECT_THROW(limit_sweep(I, {1e-2, 0.0}), ParameterError);
}

// N_λ = diag(B_λ) − B_λ carries −8 off the diagonal, so M_λ⁻¹N_λ is not ≥ 0.
TEST(SplitRegularized, JacobiOnReferenceGram) {
    const auto& ex = fixtures::rectangular_weak();
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda);
    const SingleSplitting s = split_regularized(sys, SplitStrategy::Jacobi);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s.U()(i, i), 24.0001, 1e-9);
    EXPECT_EQ(s.U()(0, 1), 0.0);
    EXPECT_EQ(s.V()(0, 1), -8.0);
    EXPECT_FALSE(s.flags().weak1);
}

TEST(SplitRegularized, TridiagonalBand) {
    std::mt19937_64 rng(23);
    const RegularizedSystem sys = build_regularized(oracle::random_matrix(rng, 6, 5), 0.1);
    const SingleSplitting s = split_regularized(sys, SplitStrategy::Tridiag);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            EXPECT_EQ(s.U()(i, j), (i > j ? i - j : j - i) <= 1 ? sys.B()(i, j) : 0.0);
    EXPECT_THROW(split_regularized(sys, SplitStrategy::Custom), StrategyError);
}

TEST(SplitRegularized, CustomPartsAreChecked) {
    const auto& ex = fixtures::rectangular_weak();
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda);
    EXPECT_TRUE(split_regularized(sys, ex.M_lambda, ex.N_lambda).flags().weak1);
    EXPECT_THROW(split_regularized(sys, ex.M_lambda, ex.N_lambda + Matrix::identity(3)), ConsistencyError);
    EXPECT_THROW(split_regularized(sys, Matrix::identity(2)), DimensionError);
}

TEST(Families, PrescribedIterationMatrices) {
    std::mt19937_64 rng(24);
    const Matrix A = oracle::random_matrix(rng, 5, 4);
    const RegularizedSystem sys = build_regularized(A, 1e-2);
    const Matrix G = oracle::random_matrix(rng, 4, 4) * 0.1;
    EXPECT_LT(max_abs(family::first_type(G)(sys).iteration_matrix() - G), 1e-12);
    EXPECT_LT(max_abs(family::second_type(G)(sys).second_type_matrix() - G), 1e-12);
    const Matrix X = oracle::random_matrix(rng, 4, 4) * 0.1, Y = oracle::random_matrix(rng, 4, 4) * 0.1;
    const DoubleSplitting d1 = family::type_one(X, Y)(sys);
    EXPECT_LT(max_abs(solve_dense(d1.P(), d1.R()) - X), 1e-10);
    EXPECT_LT(max_abs(solve_dense(d1.P(), -d1.S()) - Y), 1e-10);
    const DoubleSplitting d2 = family::type_two(X, Y)(sys);
    EXPECT_LT(max_abs(d2.R() * inverse(d2.P()) - X), 1e-10);
    const Matrix R = Matrix::identity(4) * 0.3, S = Matrix::identity(4) * -0.1;
    const DoubleSplitting d3 = family::fixed_remainders(R, S)(sys);
    EXPECT_LT(max_abs(d3.P() - (sys.B() + R - S)), 1e-14);
}

}  // namespace
