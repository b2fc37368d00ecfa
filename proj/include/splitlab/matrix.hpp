#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace splitlab {

using Vector = std::vector<double>;

// Dense row-major real matrix. Every public constructor rejects non-finite
// entries; arithmetic on finite inputs may still overflow, which callers
// detect through `all_finite`.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(const Vector& d);
    static Matrix column(const Vector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& entries() const { return data_; }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Vector diag() const;
    Vector col(std::size_t j) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    bool all_finite() const;
    std::string shape_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
// Dispatches to the parallel gemm kernel.
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Entrywise (Hadamard) product.
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
// [[tl, tr], [bl, br]]; blocks must tile.
Matrix block2x2(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br);

double frobenius(const Matrix& a);
double max_abs(const Matrix& a);
// Induced 2-norm via SVD.
double norm2(const Matrix& a);

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
Vector axpy(double a, const Vector& x, const Vector& y);
Vector subtract(const Vector& x, const Vector& y);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
void require_square(const Matrix& a, const char* what);

}  // namespace splitlab
