#include "splitlab/regularization.hpp"

#include <cmath>
#include <mutex>

#include "splitlab/errors.hpp"
#include "splitlab/kernels.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/svd.hpp"

namespace splitlab {

struct RegularizedSystem::Cache {
    std::once_flag once;
    Matrix map;
};

RegularizedSystem::RegularizedSystem(Matrix A, double lambda, const Tolerances& tol)
    : A_(std::move(A)), lambda_(lambda), tol_(tol), cache_(std::make_shared<Cache>()) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive and finite");
    if (A_.empty()) throw DimensionError("regularized system of an empty matrix");
    Matrix G = kernels::gemm_tn(A_, A_);
    for (std::size_t i = 0; i < G.rows(); ++i) G(i, i) += lambda;
    B_ = Matrix(G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) B_(i, j) = 0.5 * (G(i, j) + G(j, i));
}

const Matrix& RegularizedSystem::rhs_map() const {
    std::call_once(cache_->once, [this] { cache_->map = solve_normal_extended(A_, lambda_, A_.transpose()); });
    return cache_->map;
}

Vector RegularizedSystem::rhs(const Vector& b) const {
    if (b.size() != A_.rows()) throw DimensionError("right-hand side length does not match A");
    return kernels::gemm_tn(A_, Matrix::column(b)).entries();
}

RegularizedSystem build_regularized(const Matrix& A, double lambda, const Tolerances& tol) {
    return RegularizedSystem(A, lambda, tol);
}

Matrix tikhonov_map(const RegularizedSystem& sys) { return sys.rhs_map(); }

std::vector<double> default_schedule() {
    std::vector<double> s;
    for (int k = 2; k <= 12; ++k) s.push_back(std::pow(10.0, -k));
    return s;
}

void validate_schedule(const std::vector<double>& schedule) {
    if (schedule.empty()) throw ParameterError("empty lambda schedule");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0) || !std::isfinite(schedule[k])) throw ParameterError("lambda values must be positive");
        if (k && !(schedule[k] < schedule[k - 1])) throw ParameterError("lambda schedule must be strictly decreasing");
    }
}

LambdaSweep limit_sweep(const Matrix& A, const std::vector<double>& schedule, const Tolerances& tol) {
    validate_schedule(schedule);
    const Matrix Ap = pseudoinverse(A, tol);
    LambdaSweep sweep;
    sweep.schedule = schedule;
    sweep.errors.assign(schedule.size(), 0.0);
    std::vector<Matrix> maps(schedule.size());
    const auto count = static_cast<std::ptrdiff_t>(schedule.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const RegularizedSystem sys(A, schedule[static_cast<std::size_t>(k)], tol);
        maps[static_cast<std::size_t>(k)] = sys.rhs_map();
        sweep.errors[static_cast<std::size_t>(k)] = frobenius(maps[static_cast<std::size_t>(k)] - Ap);
    }
    sweep.limit_estimate = std::move(maps.back());
    return sweep;
}

SingleSplitting split_regularized(const RegularizedSystem& sys, SplitStrategy strategy) {
    const Matrix& B = sys.B();
    const std::size_t n = B.rows();
    Matrix M(n, n);
    switch (strategy) {
        case SplitStrategy::Jacobi:
            for (std::size_t i = 0; i < n; ++i) {
                if (B(i, i) == 0.0) throw StrategyError("jacobi splitting needs a nonzero diagonal");
                M(i, i) = B(i, i);
            }
            break;
        case SplitStrategy::Tridiag:
            for (std::size_t i = 0; i < n; ++i) {
                if (B(i, i) == 0.0) throw StrategyError("tridiagonal splitting needs a nonzero diagonal");
                for (std::size_t j = (i ? i - 1 : 0); j <= std::min(n - 1, i + 1); ++j) M(i, j) = B(i, j);
            }
            break;
        case SplitStrategy::Custom:
            throw StrategyError("custom strategy needs the splitting parts");
    }
    return split_regularized(sys, M);
}

SingleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& M) {
    if (M.rows() != sys.n() || M.cols() != sys.n())
        throw DimensionError("M_lambda must be " + sys.B().shape_string() + ", got " + M.shape_string());
    return SingleSplitting::from_preconditioner(sys.B(), M, sys.tolerances());
}

SingleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& M, const Matrix& N) {
    return SingleSplitting::create(sys.B(), M, N, sys.tolerances());
}

DoubleSplitting split_regularized(const RegularizedSystem& sys, const Matrix& P, const Matrix& R, const Matrix& S) {
    return DoubleSplitting::create(sys.B(), P, R, S, sys.tolerances());
}

namespace family {

namespace {

Matrix resolvent(const Matrix& G, const Tolerances& tol) {
    return inverse(Matrix::identity(G.rows()) - G, tol);
}

}  // namespace

SingleFamily jacobi() {
    return [](const RegularizedSystem& sys) { return split_regularized(sys, SplitStrategy::Jacobi); };
}

SingleFamily fixed_preconditioner(Matrix M) {
    return [M = std::move(M)](const RegularizedSystem& sys) { return split_regularized(sys, M); };
}

SingleFamily fixed_remainder(Matrix N) {
    return [N = std::move(N)](const RegularizedSystem& sys) { return split_regularized(sys, sys.B() + N, N); };
}

SingleFamily first_type(Matrix G) {
    return [G = std::move(G)](const RegularizedSystem& sys) {
        return split_regularized(sys, sys.B() * resolvent(G, sys.tolerances()));
    };
}

SingleFamily second_type(Matrix G) {
    return [G = std::move(G)](const RegularizedSystem& sys) {
        return split_regularized(sys, resolvent(G, sys.tolerances()) * sys.B());
    };
}

DoubleFamily fixed_parts(Matrix P, Matrix R, Matrix S) {
    return [P = std::move(P), R = std::move(R), S = std::move(S)](const RegularizedSystem& sys) {
        return split_regularized(sys, P, R, S);
    };
}

DoubleFamily fixed_remainders(Matrix R, Matrix S) {
    return [R = std::move(R), S = std::move(S)](const RegularizedSystem& sys) {
        return split_regularized(sys, sys.B() + R - S, R, S);
    };
}

DoubleFamily type_one(Matrix X, Matrix Y) {
    return [X = std::move(X), Y = std::move(Y)](const RegularizedSystem& sys) {
        const Matrix P = sys.B() * resolvent(X + Y, sys.tolerances());
        const Matrix R = P * X, S = -(P * Y);
        return split_regularized(sys, P, R, S);
    };
}

DoubleFamily type_two(Matrix X, Matrix Y) {
    return [X = std::move(X), Y = std::move(Y)](const RegularizedSystem& sys) {
        const Matrix P = resolvent(X + Y, sys.tolerances()) * sys.B();
        const Matrix R = X * P, S = -(Y * P);
        return split_regularized(sys, P, R, S);
    };
}

}  // namespace family

}  // namespace splitlab
