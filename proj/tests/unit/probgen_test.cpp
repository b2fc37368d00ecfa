#include <gtest/gtest.h>

#include <cmath>

#include "eigen_oracle.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/problems.hpp"
#include "splitlab/reproduce.hpp"
#include "splitlab/svd.hpp"

using namespace splitlab;

namespace {

TEST(Fredholm, TwoByTwoClosedForm) {
    ProblemSpec spec;
    spec.n = 2;
    spec.kernel_width = 1.0;
    const FredholmProblem p = gen_fredholm(spec);
    // Midpoints 1/4 and 3/4, h = 1/2.
    const double diag = 0.5, off = 0.5 * std::exp(-0.25 / 2.0);
    EXPECT_NEAR(p.A(0, 0), diag, 1e-15);
    EXPECT_NEAR(p.A(1, 1), diag, 1e-15);
    EXPECT_NEAR(p.A(0, 1), off, 1e-15);
    EXPECT_NEAR(p.A(1, 0), off, 1e-15);
}

TEST(Fredholm, NoiselessRightHandSideIsExact) {
    ProblemSpec spec;
    spec.n = 32;
    spec.kernel_width = 0.05;
    const FredholmProblem p = gen_fredholm(spec);
    ASSERT_EQ(p.A.rows(), 32u);
    ASSERT_EQ(p.b.size(), 32u);
    EXPECT_EQ(oracle::max_abs_diff(p.A * p.x_true, p.b), 0.0);
}

TEST(Fredholm, IllConditioned) {
    ProblemSpec spec;
    spec.n = 32;
    const Vector s = oracle::singular_values(gen_fredholm(spec).A);
    EXPECT_GE(s.front() / s.back(), 1e6);
    const Vector ours = singular_values(gen_fredholm(spec).A);
    EXPECT_NEAR(ours.front(), s.front(), 1e-12);
}

TEST(Fredholm, NoiseIsSeededAndScaled) {
    ProblemSpec spec;
    spec.n = 16;
    spec.noise_level = 0.01;
    spec.seed = 7;
    const FredholmProblem a = gen_fredholm(spec), b = gen_fredholm(spec);
    EXPECT_EQ(a.b, b.b);
    const Vector clean = a.A * a.x_true;
    const double rel = norm2(subtract(a.b, clean)) / norm2(clean);
    EXPECT_GT(rel, 0.0);
    EXPECT_LT(rel, 0.05);
    spec.seed = 8;
    EXPECT_NE(gen_fredholm(spec).b, a.b);
}

TEST(ProblemSpec, Validation) {
    ProblemSpec spec;
    spec.n = 1;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec = {};
    spec.kernel_width = 0.0;
    EXPECT_THROW(gen_fredholm(spec), ParameterError);
    spec = {};
    spec.noise_level = 1.0;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec.noise_level = -0.1;
    EXPECT_THROW(spec.validate(), ParameterError);
    EXPECT_EQ(parse_problem_kind(to_string(ProblemKind::PoissonNeumann)), ProblemKind::PoissonNeumann);
    EXPECT_THROW(parse_problem_kind("heat"), UsageError);
}

TEST(PoissonNeumann, SmallestGrid) {
    const Matrix L = gen_poisson_neumann(2);
    ASSERT_EQ(L.rows(), 9u);
    ASSERT_EQ(L.cols(), 9u);
    for (std::size_t i = 0; i < 9; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < 9; ++j) sum += L(i, j);
        EXPECT_EQ(sum, 0.0);
    }
}

TEST(PoissonNeumann, SymmetricWithOneDimensionalNullSpace) {
    for (std::size_t n = 2; n <= 16; ++n) {
        const Matrix L = gen_poisson_neumann(n);
        const std::size_t N = (n + 1) * (n + 1);
        EXPECT_EQ(max_abs(L - L.transpose()), 0.0) << n;
        EXPECT_EQ(numerical_rank(L), N - 1) << n;
        const Vector s = oracle::singular_values(L);
        EXPECT_LT(s.back() / s.front(), 1e-12) << n;
        EXPECT_GT(s[N - 2] / s.front(), 1e-6) << n;
    }
}

TEST(Reproduce, TableIsDeterministic) {
    for (ExampleId id : all_examples()) {
        const std::string a = format_table(reproduce(id)), b = format_table(reproduce(id));
        EXPECT_EQ(a, b) << to_string(id);
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(parse_example(to_string(id)), id);
    }
    EXPECT_THROW(parse_example("ex-9-9"), UsageError);
}

TEST(Reproduce, ReferenceRadii) {
    const Reproduction r = reproduce(ExampleId::Ex313);
    EXPECT_TRUE(r.all_pass());
    ASSERT_FALSE(r.values.empty());
    for (const ReproductionRow& row : r.values) EXPECT_LE(row.deviation, row.tolerance) << row.quantity;
}

}  // namespace
