#include "splitlab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "splitlab/errors.hpp"

namespace splitlab {

namespace {

constexpr int kMaxSweeps = 80;

struct Jacobi {
    // Columns of the working matrix and of V, stored contiguously.
    std::vector<Vector> u;
    std::vector<Vector> v;
    Vector sigma;
};

// One-sided Hestenes–Jacobi on a tall matrix (rows ≥ cols).
Jacobi jacobi_tall(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Jacobi j;
    j.u.assign(n, Vector(m));
    j.v.assign(n, Vector(n, 0.0));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) j.u[c][r] = a(r, c);
        j.v[c][c] = 1.0;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    // Columns below nε‖a‖_F are rounding noise of a rank-deficient input;
    // rotating them against each other never settles.
    double frob2 = 0.0;
    for (const auto& col : j.u) frob2 += std::inner_product(col.begin(), col.end(), col.begin(), 0.0);
    const double noise = static_cast<double>(std::max(m, n)) * eps;
    const double negligible = noise * noise * frob2;
    const double orth = static_cast<double>(m) * eps;
    bool rotated = true;
    int sweep = 0;
    while (rotated) {
        if (++sweep > kMaxSweeps) {
            Vector partial;
            for (const auto& col : j.u) partial.push_back(std::sqrt(std::inner_product(col.begin(), col.end(), col.begin(), 0.0)));
            throw NumericalError("Jacobi SVD did not converge", std::move(partial), n);
        }
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Vector& up = j.u[p];
                Vector& uq = j.u[q];
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t r = 0; r < m; ++r) {
                    alpha += up[r] * up[r];
                    beta += uq[r] * uq[r];
                    gamma += up[r] * uq[r];
                }
                // Orthogonal to within the rounding of an m-term dot product.
                if (gamma == 0.0 || std::abs(gamma) <= orth * std::sqrt(alpha * beta)) continue;
                if (alpha <= negligible || beta <= negligible) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < m; ++r) {
                    const double x = up[r], y = uq[r];
                    up[r] = c * x - s * y;
                    uq[r] = s * x + c * y;
                }
                Vector& vp = j.v[p];
                Vector& vq = j.v[q];
                for (std::size_t r = 0; r < n; ++r) {
                    const double x = vp[r], y = vq[r];
                    vp[r] = c * x - s * y;
                    vq[r] = s * x + c * y;
                }
            }
        }
    }
    j.sigma.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        j.sigma[c] = std::sqrt(std::inner_product(j.u[c].begin(), j.u[c].end(), j.u[c].begin(), 0.0));
    return j;
}

std::vector<std::size_t> descending_order(const Vector& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    return idx;
}

}  // namespace

Vector singular_values(const Matrix& x) {
    const bool wide = x.rows() < x.cols();
    Jacobi j = jacobi_tall(wide ? x.transpose() : x);
    std::sort(j.sigma.begin(), j.sigma.end(), std::greater<>());
    return j.sigma;
}

SvdFactors svd(const Matrix& x, const Tolerances& tol) {
    const bool wide = x.rows() < x.cols();
    const Matrix a = wide ? x.transpose() : x;
    Jacobi j = jacobi_tall(a);
    const auto order = descending_order(j.sigma);
    const double smax = order.empty() ? 0.0 : j.sigma[order.front()];
    std::size_t r = 0;
    if (smax > 0.0)
        while (r < order.size() && j.sigma[order[r]] > tol.rank_eps * smax) ++r;

    // Factors of the tall matrix a: a = U S Vᵀ with U = columns / sigma.
    Matrix left(a.rows(), r), right(a.cols(), r);
    Vector s(r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t c = order[k];
        s[k] = j.sigma[c];
        for (std::size_t i = 0; i < a.rows(); ++i) left(i, k) = j.u[c][i] / s[k];
        for (std::size_t i = 0; i < a.cols(); ++i) right(i, k) = j.v[c][i];
    }
    SvdFactors f;
    f.singular_values = std::move(s);
    f.numerical_rank = r;
    if (wide) {
        f.left_vectors = std::move(right);
        f.right_vectors = std::move(left);
    } else {
        f.left_vectors = std::move(left);
        f.right_vectors = std::move(right);
    }
    return f;
}

Matrix pseudoinverse(const Matrix& x, const Tolerances& tol) {
    if (!x.all_finite()) throw ParameterError("pseudoinverse of non-finite matrix");
    const SvdFactors f = svd(x, tol);
    Matrix p(x.cols(), x.rows());
    for (std::size_t k = 0; k < f.numerical_rank; ++k) {
        const double inv = 1.0 / f.singular_values[k];
        for (std::size_t i = 0; i < x.cols(); ++i) {
            const double vik = f.right_vectors(i, k) * inv;
            if (vik == 0.0) continue;
            for (std::size_t j = 0; j < x.rows(); ++j) p(i, j) += vik * f.left_vectors(j, k);
        }
    }
    return p;
}

std::size_t numerical_rank(const Matrix& x, const Tolerances& tol) {
    const Vector s = singular_values(x);
    if (s.empty() || s.front() == 0.0) return 0;
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](double v) { return v > tol.rank_eps * s.front(); }));
}

}  // namespace splitlab
