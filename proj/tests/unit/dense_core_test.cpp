#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "eigen_oracle.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/io.hpp"
#include "splitlab/kernels.hpp"
#include "splitlab/order.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"

using namespace splitlab;

namespace {

const Tolerances kTol{};

TEST(Matrix, RejectsNonFiniteEntries) {
    EXPECT_THROW(Matrix(2, 2, std::numeric_limits<double>::quiet_NaN()), ParameterError);
    EXPECT_THROW((Matrix{{1.0, std::numeric_limits<double>::infinity()}}), ParameterError);
    EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
    EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Matrix, ArithmeticMatchesOracle) {
    std::mt19937_64 rng(1);
    const Matrix a = oracle::random_matrix(rng, 5, 7), b = oracle::random_matrix(rng, 7, 3);
    const Eigen::MatrixXd ref = oracle::to_eigen(a) * oracle::to_eigen(b);
    EXPECT_LT(oracle::max_abs_diff(a * b, oracle::from_eigen(ref)), 1e-13);
    EXPECT_EQ((a * b).shape_string(), "5x3");
    EXPECT_THROW(a * a, DimensionError);
    const Matrix at = a.transpose();
    EXPECT_EQ(at(6, 4), a(4, 6));
}

TEST(Matrix, BlockAssembly) {
    const Matrix I = Matrix::identity(2), Z = Matrix::zeros(2, 2);
    const Matrix w = block2x2(Z, I, I, Z);
    EXPECT_EQ(w.rows(), 4u);
    EXPECT_EQ(w(0, 2), 1.0);
    EXPECT_EQ(w(2, 0), 1.0);
    EXPECT_EQ(w.block(0, 2, 2, 2)(1, 1), 1.0);
    EXPECT_THROW(hstack(Matrix(2, 1), Matrix(3, 1)), DimensionError);
}

TEST(Kernels, ParallelIsBitwiseSerial) {
    std::mt19937_64 rng(2);
    for (std::size_t n : {3u, 64u, 150u}) {
        const Matrix a = oracle::random_matrix(rng, n, n + 5), b = oracle::random_matrix(rng, n + 5, n);
        const Vector x = oracle::random_vector(rng, n + 5);
        EXPECT_EQ(kernels::gemm(a, b).entries(), kernels::serial::gemm(a, b).entries());
        EXPECT_EQ(kernels::gemv(a, x), kernels::serial::gemv(a, x));
        EXPECT_EQ(kernels::gemm_tn(a, a).entries(), kernels::serial::gemm_tn(a, a).entries());
        EXPECT_LT(oracle::max_abs_diff(kernels::gemm_tn(a, a), a.transpose() * a), 1e-12 * n);
    }
}

TEST(Order, EntrywiseComparisons) {
    const Matrix I = Matrix::identity(2), Z = Matrix::zeros(2, 2);
    EXPECT_TRUE(entrywise_geq(I, Z, kTol));
    EXPECT_FALSE(entrywise_gt(I, Z, kTol));
    EXPECT_TRUE(entrywise_gt(I + Matrix(2, 2, 0.5), Z, kTol));
    const OrderResult r = compare_geq(Matrix{{1.0, -0.25}, {0.0, -0.5}}, Z, kTol);
    ASSERT_FALSE(r.holds);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->row, 1u);
    EXPECT_EQ(r.witness->col, 1u);
    EXPECT_DOUBLE_EQ(r.witness->value, -0.5);
    EXPECT_THROW(entrywise_geq(I, Matrix(2, 3), kTol), DimensionError);
}

TEST(Order, SlackIsRelativeToOperands) {
    const Matrix X{{1e6, -1e-4}}, Z = Matrix::zeros(1, 2);
    EXPECT_DOUBLE_EQ(order_slack(X, Z, kTol), 1e-3);
    EXPECT_TRUE(entrywise_geq(X, Z, kTol));
    EXPECT_FALSE(entrywise_geq(Matrix{{1.0, -1e-4}}, Z, kTol));
}

TEST(Order, ReferenceExampleRelations) {
    const auto& ex = fixtures::rectangular_weak();
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda);
    const Matrix lhs = pseudoinverse(ex.A) * ex.N;
    const Matrix rhs = solve_dense(sys.B(), ex.N_lambda);
    EXPECT_TRUE(entrywise_geq(lhs, rhs, kTol));
    EXPECT_TRUE(entrywise_geq(rhs, Matrix(rhs.rows(), rhs.cols()), kTol));
    const Matrix Apinv = pseudoinverse(ex.A);
    const Matrix diff = Apinv * ex.N * pseudoinverse(ex.M) - solve_dense(ex.M_lambda, ex.N_lambda) * Apinv;
    EXPECT_NEAR(diff(0, 1), -0.0168, 1e-3);
    EXPECT_FALSE(entrywise_geq(diff, Matrix(3, 4), kTol));
}

TEST(Tolerances, EnvironmentScale) {
    ::setenv("SPLITLAB_TOL_SCALE", "10", 1);
    const Tolerances t = Tolerances::from_environment();
    EXPECT_DOUBLE_EQ(t.nonneg_eps, 1e-8);
    EXPECT_DOUBLE_EQ(t.rank_eps, 1e-11);
    ::setenv("SPLITLAB_TOL_SCALE", "abc", 1);
    EXPECT_THROW(Tolerances::from_environment(), ParameterError);
    ::unsetenv("SPLITLAB_TOL_SCALE");
    EXPECT_DOUBLE_EQ(Tolerances::from_environment().nonneg_eps, 1e-9);
    EXPECT_THROW(Tolerances{}.scaled(-1.0), ParameterError);
}

TEST(Spectral, TrivialCases) {
    EXPECT_NEAR(rho(Matrix{{0.3, 0.0}, {0.0, -0.9}}), 0.9, 1e-14);
    EXPECT_NEAR(rho(Matrix{{0.0, 1.0}, {0.0, 0.0}}), 0.0, 1e-14);
    EXPECT_NEAR(rho(Matrix{{0.0, -1.0}, {1.0, 0.0}}), 1.0, 1e-14);  // rotation: complex pair
    EXPECT_THROW(rho(Matrix(2, 3)), DimensionError);
}

TEST(Spectral, PowerPathOnNonnegative) {
    const Matrix x{{0.5, 0.2}, {0.1, 0.4}};
    const SpectralReport r = spectral_radius(x);
    EXPECT_EQ(r.method, SpectralMethod::PowerIteration);
    ASSERT_TRUE(r.dominant_eigvec.has_value());
    EXPECT_NEAR(r.radius, oracle::spectral_radius(x), 1e-10);
    double sum = 0.0;
    for (double e : *r.dominant_eigvec) {
        EXPECT_GE(e, 0.0);
        sum += e;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Spectral, RandomAgainstOracle) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + k % 12;
        const Matrix x = oracle::random_matrix(rng, n, n);
        EXPECT_NEAR(spectral_radius_qr(x).radius, oracle::spectral_radius(x), 1e-9 * (1 + oracle::spectral_radius(x)));
        const auto ev = eigenvalues(x);
        EXPECT_EQ(ev.size(), n);
    }
}

TEST(Spectral, ReferenceRadius) {
    const auto& ex = fixtures::rectangular_weak();
    EXPECT_NEAR(rho(pseudoinverse(ex.M) * ex.N), 0.9823, 5e-4);
}

TEST(Svd, TrivialCases) {
    EXPECT_EQ(pseudoinverse(Matrix::identity(3)).entries(), Matrix::identity(3).entries());
    const Matrix z = pseudoinverse(Matrix::zeros(2, 4));
    EXPECT_EQ(z.rows(), 4u);
    EXPECT_EQ(max_abs(z), 0.0);
    EXPECT_EQ(numerical_rank(Matrix::zeros(3, 3)), 0u);
}

TEST(Svd, PenroseConditionsOnRankDeficient) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 40; ++k) {
        const std::size_t m = 2 + k % 9, n = 2 + (k * 7) % 9, r = 1 + k % std::min(m, n);
        const Matrix A = oracle::exact_rank(rng, m, n, r);
        const Matrix X = pseudoinverse(A);
        const double s = max_abs(A) * max_abs(X);
        EXPECT_EQ(numerical_rank(A), r);
        EXPECT_LT(max_abs(A * X * A - A), 1e-10 * s * max_abs(A));
        EXPECT_LT(max_abs(X * A * X - X), 1e-10 * s * max_abs(X));
        EXPECT_LT(max_abs((A * X).transpose() - A * X), 1e-10 * s);
        EXPECT_LT(max_abs((X * A).transpose() - X * A), 1e-10 * s);
        EXPECT_LT(oracle::max_abs_diff(X, oracle::pseudoinverse(A)), 1e-9 * (1 + max_abs(X)));
        const Vector sv = singular_values(A), ref = oracle::singular_values(A);
        for (std::size_t i = 0; i < sv.size(); ++i) EXPECT_NEAR(sv[i], ref[i], 1e-11 * ref[0]);
    }
}

TEST(Svd, ReferenceMatrixAgainstTikhonovLimit) {
    const auto& ex = fixtures::rectangular_weak();
    const Matrix limit = tikhonov_map(build_regularized(ex.A, 1e-12));
    EXPECT_LT(frobenius(pseudoinverse(ex.A) - limit), 1e-8);
}

TEST(Solve, TrivialCases) {
    std::mt19937_64 rng(5);
    const Matrix B = oracle::random_matrix(rng, 3, 2);
    EXPECT_LT(oracle::max_abs_diff(solve_dense(Matrix::identity(3), B), B), 1e-15);
    const Vector x = solve_dense(Matrix{{2.0, 0.0}, {0.0, 4.0}}, Vector{2.0, 4.0});
    EXPECT_DOUBLE_EQ(x[0], 1.0);
    EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(Solve, SingularReportsSingularValue) {
    try {
        solve_dense(Matrix{{1.0, 2.0}, {2.0, 4.0}}, Vector{1.0, 1.0});
        FAIL() << "expected SingularityError";
    } catch (const SingularityError& e) {
        EXPECT_LT(e.sigma_min, 1e-12 * e.sigma_max);
        EXPECT_GT(e.sigma_max, 4.0);
    }
    EXPECT_FALSE(is_nonsingular(Matrix{{1.0, 2.0}, {2.0, 4.0}}));
}

TEST(Solve, ReferenceRegularizedAgainstPseudoinverse) {
    const auto& ex = fixtures::regularized_double();
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda);
    const Matrix direct = solve_dense(sys.B(), ex.A.transpose());
    EXPECT_LT(max_abs(direct - pseudoinverse(sys.B()) * ex.A.transpose()), 1e-10);
}

TEST(Solve, ExtendedNormalEquationsAtTinyLambda) {
    std::mt19937_64 rng(6);
    const Matrix A = oracle::exact_rank(rng, 9, 6, 4);
    const Matrix map = solve_normal_extended(A, 1e-14, A.transpose());
    EXPECT_LT(frobenius(map - oracle::pseudoinverse(A)), 1e-8);
}

TEST(Io, RoundTripIsBitExact) {
    std::mt19937_64 rng(7);
    const Matrix m = oracle::random_matrix(rng, 6, 4) * 1e-7;
    const Matrix back = io::parse_matrix(io::format_matrix(m));
    EXPECT_EQ(back.entries(), m.entries());
    const std::vector<Matrix> bundle{m, Matrix::identity(2)};
    std::ostringstream os;
    io::write_matrix(os, m);
    os << "---\n";
    io::write_matrix(os, bundle[1]);
    const auto parsed = io::parse_bundle(os.str());
    ASSERT_EQ(parsed.size(), 2u);
    EXPECT_EQ(parsed[0].entries(), m.entries());
}

TEST(Io, ParseErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            io::parse_matrix(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };
    EXPECT_EQ(line_of("2 2\n1 2\n3 x\n"), 3u);
    EXPECT_EQ(line_of("2 2\n1 2 3\n3 4\n"), 2u);
    EXPECT_EQ(line_of("2\n"), 1u);
    EXPECT_GT(line_of("2 2\n1 2\n"), 0u);
    EXPECT_EQ(line_of("1 1\nnan\n"), 2u);
    EXPECT_THROW(io::load_matrix("/nonexistent/file.txt"), IoError);
}

}  // namespace
