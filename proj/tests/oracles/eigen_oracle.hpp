#pragma once

// Independent reference computations backed by Eigen; used only by tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "splitlab/matrix.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const splitlab::Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline splitlab::Matrix from_eigen(const Eigen::MatrixXd& e) {
    splitlab::Matrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

inline double spectral_radius(const splitlab::Matrix& m) {
    if (m.empty()) return 0.0;
    return to_eigen(m).eigenvalues().cwiseAbs().maxCoeff();
}

// Descending.
inline std::vector<double> singular_values(const splitlab::Matrix& m) {
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues();
    return {s.data(), s.data() + s.size()};
}

// Truncates singular values at rel·σ_max.
inline splitlab::Matrix pseudoinverse(const splitlab::Matrix& m, double rel = 1e-12) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    const double cut = s.size() ? rel * s(0) : 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) inv(i) = 1.0 / s(i);
    return from_eigen(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose());
}

inline double max_abs_diff(const splitlab::Matrix& a, const splitlab::Matrix& b) {
    return (to_eigen(a) - to_eigen(b)).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const splitlab::Vector& a, const splitlab::Vector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline splitlab::Matrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::normal_distribution<double> g;
    splitlab::Matrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = g(rng);
    return x;
}

inline splitlab::Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    splitlab::Vector v(n);
    for (double& e : v) e = g(rng);
    return v;
}

// Exact rank r in floating point: small-integer factors multiply exactly.
inline splitlab::Matrix exact_rank(std::mt19937_64& rng, std::size_t m, std::size_t n, std::size_t r) {
    std::uniform_int_distribution<int> d(-3, 3);
    for (;;) {
        splitlab::Matrix X(m, r), Y(r, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < r; ++j) X(i, j) = d(rng);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) Y(i, j) = d(rng);
        splitlab::Matrix A = X * Y;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(A));
        if (static_cast<std::size_t>(lu.rank()) == r) return A;
    }
}

}  // namespace oracle
