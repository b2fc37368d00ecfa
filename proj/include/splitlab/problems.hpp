#pragma once

#include <cstdint>
#include <string>

#include "splitlab/matrix.hpp"

namespace splitlab {

enum class ProblemKind { FredholmGauss, PoissonNeumann, File };

const char* to_string(ProblemKind k);
// Throws UsageError for unknown names.
ProblemKind parse_problem_kind(const std::string& name);

struct ProblemSpec {
    ProblemKind kind = ProblemKind::FredholmGauss;
    std::size_t n = 32;
    double kernel_width = 0.1;
    std::uint64_t seed = 0;
    double noise_level = 0.0;  // relative to ‖A·x_true‖₂

    // Throws ParameterError unless n ≥ 2, kernel_width > 0, noise_level ∈ [0, 1).
    void validate() const;
};

struct FredholmProblem {
    Matrix A;
    Vector b, x_true;
};

// A_ij = h·exp(−(s_i − t_j)²/(2w²)) on the midpoint grid of [0, 1], h = 1/n;
// b = A·x_true plus Gaussian noise drawn from `seed`.
FredholmProblem gen_fredholm(const ProblemSpec& spec);

// Five-point Neumann Laplacian on an (n+1)×(n+1) vertex grid, scaled by n²:
// symmetric, row sums exactly zero, null space spanned by the constant vector.
Matrix gen_poisson_neumann(std::size_t n);

}  // namespace splitlab
