#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

struct SolverConfig {
    std::optional<Vector> x0;  // zero when absent
    std::optional<Vector> x1;  // double schemes only; zero when absent
    double stop_eps = 1e-10;
    std::size_t max_iter = 100000;

    void validate(std::size_t n) const;
};

enum class Variant { Single, HatW, TildeW, ProperW, LambdaW };

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);

struct IterationReport {
    Variant variant = Variant::Single;
    std::array<Vector, 2> iterates_kept;  // previous, last
    std::size_t k_final = 0;              // iterates computed
    std::vector<double> step_norms;       // ‖x_{k+1} − x_k‖₂ per computed iterate
    Vector limit;
    bool converged = false;
    bool diverged = false;
    double rate_estimate = 0.0;
};

// [[top_left, top_right], [I, 0]].
struct BlockIterationMatrix {
    Variant variant = Variant::HatW;
    Matrix W;
    double rho = 0.0;
};

Matrix assemble_block(const Matrix& top_left, const Matrix& top_right);

// The two coefficient blocks and the constant-term map of a double scheme,
// x_{k+1} = top_left·x_k + top_right·x_{k−1} + rhs_map·b.
struct DoubleSchemeParts {
    Matrix top_left, top_right, rhs_map;
};

// Throws HypothesisError when the variant is not admissible for d.
DoubleSchemeParts double_scheme_parts(const DoubleSplitting& d, Variant variant);
BlockIterationMatrix build_double_iteration_matrix(const DoubleSplitting& d, Variant variant,
                                                   const Tolerances& tol = {});

IterationReport iterate_single(const SingleSplitting& s, const Vector& b, const SolverConfig& cfg = {});
IterationReport iterate_double(const DoubleSplitting& d, const Vector& b, Variant variant,
                               const SolverConfig& cfg = {});
// Runs x_{k+1} = H x_k + c directly.
IterationReport iterate_affine(const Matrix& H, const Vector& c, const SolverConfig& cfg = {});
IterationReport iterate_two_term(const Matrix& H1, const Matrix& H2, const Vector& c, const SolverConfig& cfg = {},
                                 Variant variant = Variant::HatW);

// Geometric mean of the last 20 step-norm ratios; needs ≥ 30 steps.
double asymptotic_rate(const IterationReport& rep);

}  // namespace splitlab
