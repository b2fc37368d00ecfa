#include "splitlab/solve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "splitlab/errors.hpp"
#include "splitlab/svd.hpp"

namespace splitlab {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using wide_t = __float128;
#else
using wide_t = long double;
#endif

template <class T>
T magnitude(T x) {
    return x < T(0) ? -x : x;
}

// In-place LU with partial pivoting on an n×n row-major buffer, then
// substitution for every column of `rhs` (n×k row-major).
template <class T>
void lu_solve(std::vector<T>& a, std::size_t n, std::vector<T>& rhs, std::size_t k, T& min_pivot, T& max_pivot) {
    min_pivot = T(-1);
    max_pivot = T(0);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        T best = magnitude(a[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const T v = magnitude(a[r * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (min_pivot < T(0) || best < min_pivot) min_pivot = best;
        if (best > max_pivot) max_pivot = best;
        if (best == T(0)) return;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
            for (std::size_t j = 0; j < k; ++j) std::swap(rhs[c * k + j], rhs[piv * k + j]);
        }
        const T d = a[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const T f = a[r * n + c] / d;
            if (f == T(0)) continue;
            a[r * n + c] = f;
            for (std::size_t j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
            for (std::size_t j = 0; j < k; ++j) rhs[r * k + j] -= f * rhs[c * k + j];
        }
    }
    for (std::size_t cc = n; cc-- > 0;) {
        const T d = a[cc * n + cc];
        for (std::size_t j = 0; j < k; ++j) {
            T s = rhs[cc * k + j];
            for (std::size_t c2 = cc + 1; c2 < n; ++c2) s -= a[cc * n + c2] * rhs[c2 * k + j];
            rhs[cc * k + j] = s / d;
        }
    }
}

[[noreturn]] void report_singular(const Matrix& x, const char* what) {
    const Vector s = singular_values(x);
    throw SingularityError(s.empty() ? 0.0 : s.back(), s.empty() ? 0.0 : s.front(), what);
}

}  // namespace

bool is_nonsingular(const Matrix& x, const Tolerances& tol) {
    if (!x.square()) return false;
    if (x.rows() == 0) return true;
    const Vector s = singular_values(x);
    return s.front() > 0.0 && s.back() > tol.rank_eps * s.front();
}

Matrix solve_dense(const Matrix& x, const Matrix& b, const Tolerances& tol) {
    require_square(x, "solve");
    if (b.rows() != x.rows()) throw DimensionError("solve: right-hand side has " + b.shape_string() + ", system is " + x.shape_string());
    const std::size_t n = x.rows(), k = b.cols();
    std::vector<double> a(x.entries()), rhs(b.entries());
    double pmin = 0.0, pmax = 0.0;
    lu_solve(a, n, rhs, k, pmin, pmax);
    // Pivots bound the conditioning only loosely; confirm suspicious cases
    // with the singular values before declaring the system singular.
    if (n > 0 && (pmin <= 0.0 || pmin <= 1e-6 * pmax)) {
        if (!is_nonsingular(x, tol)) report_singular(x, "solve");
        if (pmin <= 0.0) report_singular(x, "solve");
    }
    Matrix y(n, k, std::move(rhs));
    return y;
}

Vector solve_dense(const Matrix& x, const Vector& b, const Tolerances& tol) {
    return solve_dense(x, Matrix::column(b), tol).entries();
}

Matrix inverse(const Matrix& x, const Tolerances& tol) { return solve_dense(x, Matrix::identity(x.rows()), tol); }

Matrix inverse_or_pinv(const Matrix& x, const Tolerances& tol) {
    if (is_nonsingular(x, tol)) return inverse(x, tol);
    return pseudoinverse(x, tol);
}

Matrix solve_normal_extended(const Matrix& a, double lambda, const Matrix& rhs) {
    if (rhs.rows() != a.cols()) throw DimensionError("normal-equation solve: right-hand side shape mismatch");
    const std::size_t m = a.rows(), n = a.cols(), k = rhs.cols();
    // Products of doubles are exact in binary128, so the Gram matrix
    // carries only summation error far below λ.
    std::vector<wide_t> g(n * n, wide_t(0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            const wide_t ari = a(r, i);
            if (ari == wide_t(0)) continue;
            for (std::size_t j = 0; j < n; ++j) g[i * n + j] += ari * wide_t(a(r, j));
        }
    for (std::size_t i = 0; i < n; ++i) g[i * n + i] += wide_t(lambda);
    std::vector<wide_t> y(rhs.entries().begin(), rhs.entries().end());
    wide_t pmin = 0, pmax = 0;
    lu_solve(g, n, y, k, pmin, pmax);
    if (n > 0 && !(pmin > wide_t(0))) throw SingularityError(0.0, static_cast<double>(pmax), "normal-equation solve");
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = static_cast<double>(y[i]);
    return Matrix(n, k, std::move(out));
}

}  // namespace splitlab
