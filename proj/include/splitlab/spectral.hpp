#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

enum class SpectralMethod { QrHessenberg, PowerIteration };

const char* to_string(SpectralMethod m);

struct SpectralReport {
    double radius = 0.0;
    std::optional<Vector> dominant_eigvec;  // power path only, nonnegative, unit 1-norm
    SpectralMethod method = SpectralMethod::QrHessenberg;
    std::size_t iterations = 0;
    double residual = 0.0;
};

// All eigenvalues of a square matrix: balancing, Householder Hessenberg
// reduction and Francis double-shift QR. Throws NumericalError after
// 100·n sweeps.
std::vector<std::complex<double>> eigenvalues(const Matrix& x);

// Uses power iteration when x is entrywise nonnegative and the iteration
// settles; falls back to the QR path otherwise.
SpectralReport spectral_radius(const Matrix& x, const Tolerances& tol = {});
SpectralReport spectral_radius_qr(const Matrix& x);
// Returns nullopt when x is not nonnegative or the iteration stalls.
std::optional<SpectralReport> spectral_radius_power(const Matrix& x, const Tolerances& tol = {},
                                                    std::size_t max_iter = 20000);

double rho(const Matrix& x, const Tolerances& tol = {});

}  // namespace splitlab
