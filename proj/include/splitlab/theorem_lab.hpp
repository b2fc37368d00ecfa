#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/order.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

enum class TheoremId {
    SingleConv,
    CmpFirst,
    CmpSecond,
    CmpMixA,
    CmpMixB,
    CmpSameI,
    CmpSameIAlt,
    CmpIToII,
    PowerDominance,
    EqTypeI,
    EqTypeII,
    EqTypeIIAlt,
    Dw2Mono,
    Dw2Scaled,
    Dw2Rate,
    Dw2Psd,
    Dw2TwoMat,
    DwIIvsI,
    DwIvsII,
    RdConv,
    RdCmpI,
    RdCmpII,
};

const char* to_string(TheoremId id);
// Throws UsageError for unknown names.
TheoremId parse_theorem(const std::string& name);
const std::vector<TheoremId>& all_theorems();

struct Hypothesis {
    std::string name;
    std::string predicate;
    bool holds = false;
    std::optional<Witness> witness;
    std::string note;
};

struct NamedMatrix {
    std::string name;
    Matrix value;
};

// One theorem instance. Mathematical failure is recorded, never thrown.
struct TheoremVerdict {
    TheoremId id = TheoremId::SingleConv;
    std::vector<Hypothesis> hypotheses;
    std::vector<Hypothesis> conditions;  // equivalence theorems only
    double rho_left = 0.0;
    double rho_right = 0.0;
    bool conclusion_holds = false;
    std::optional<double> lambda_used;
    std::string shape;
    std::vector<NamedMatrix> evidence;

    bool hypotheses_hold() const;
    bool counterexample() const { return hypotheses_hold() && !conclusion_holds; }
    const Matrix* find_evidence(const std::string& name) const;
};

// Slack on "≤" and margin on "< 1" and on strict "<".
inline constexpr double kConclusionSlack = 1e-8;

enum class SplittingType { First, Second };
enum class EquivalenceForm { TypeI, TypeII, TypeIIAlt };

// Regularized splittings come from a family evaluated along `sweep`.
// Limit hypotheses are taken at the smallest λ and must agree over the last
// three schedule points.
TheoremVerdict check_single_convergence(const Matrix& A, const SingleFamily& reg, const std::vector<double>& sweep,
                                        SplittingType type, const Tolerances& tol = {});
TheoremVerdict check_comparison_single(TheoremId id, const SingleSplitting& s, const SingleFamily& reg,
                                       const std::vector<double>& sweep, const Tolerances& tol = {});
// (M₁A⁻¹)^j ≤ α(M₂A⁻¹)^j ⇒ ρ(N₁M₁⁻¹) < ρ(N₂M₂⁻¹); "≤" when α = 1.
TheoremVerdict check_power_dominance(const Matrix& M1, const Matrix& M2, const Matrix& A, unsigned j, double alpha,
                                     const Tolerances& tol = {});
TheoremVerdict check_double_equivalences(const DoubleSplitting& d, EquivalenceForm form, const Tolerances& tol = {});
TheoremVerdict check_double_comparison(TheoremId id, const DoubleSplitting& d1, const DoubleSplitting& d2,
                                       const Tolerances& tol = {});
// RdConv ignores d apart from its matrix and uses `form` for the scheme;
// RdCmpI and RdCmpII compare against d's proper block matrix.
TheoremVerdict check_regularized_double(TheoremId id, const DoubleSplitting& d, const DoubleFamily& reg,
                                        const std::vector<double>& sweep, const Tolerances& tol = {},
                                        EquivalenceForm form = EquivalenceForm::TypeI);
// Regularizes `A` rather than d.A(); "P − R + S = A" becomes a recorded hypothesis.
TheoremVerdict check_regularized_double(TheoremId id, const Matrix& A, const DoubleSplitting& d,
                                        const DoubleFamily& reg, const std::vector<double>& sweep,
                                        const Tolerances& tol = {}, EquivalenceForm form = EquivalenceForm::TypeI);

// 𝔸 = [[A, −I], [0, I]] = 𝕄 − ℕ with 𝕄 = [[P, 0], [−S, I]], ℕ = [[R − S, I], [−S, 0]].
struct BlockEmbedding {
    Matrix Abb, M, N;
    Matrix W_direct;    // [[(RP⁻¹)ᵀ, −(SP⁻¹)ᵀ], [I, 0]]
    Matrix W_embedded;  // (ℕ𝕄⁻¹)ᵀ
    double split_residual = 0.0;     // ‖𝔸 − (𝕄 − ℕ)‖_max
    double inverse_residual = 0.0;   // ‖𝔸⁻¹ − [[A⁻¹, A⁻¹], [0, I]]‖_max
    double identity_residual = 0.0;  // ‖W_direct − W_embedded‖_max
    double rho_direct = 0.0;
    double rho_embedded = 0.0;
};

// Throws SingularityError when A or P is singular.
BlockEmbedding block_embed(const DoubleSplitting& d, const Tolerances& tol = {});
std::pair<BlockEmbedding, BlockEmbedding> block_embed(const DoubleSplitting& d1, const DoubleSplitting& d2,
                                                      const Tolerances& tol = {});

// Random instance generation and soundness sweeps.
struct FuzzOptions {
    std::size_t instances = 500;
    std::size_t max_n = 8;
    std::uint64_t seed = 20240601;
    std::vector<double> sweep = {1e-4, 1e-5, 1e-6};
    Tolerances tol{};
};

struct FuzzSummary {
    TheoremId id = TheoremId::SingleConv;
    std::size_t instances = 0;
    std::size_t hypotheses_true = 0;
    std::size_t conclusions_true = 0;
    std::size_t counterexamples = 0;
    std::size_t structural_errors = 0;
    // Perron-link coherence failures (CmpFirst) or chain disagreements
    // (equivalence theorems); zero elsewhere.
    std::size_t auxiliary_failures = 0;
    double worst_gap = 0.0;  // largest conclusion violation among counterexamples
    std::optional<std::uint64_t> first_counterexample_seed;
};

// Instances run in parallel; instance k uses seed (options.seed, id, k).
FuzzSummary fuzz_theorem(TheoremId id, const FuzzOptions& options = {});
// Re-creates and checks one fuzz instance.
TheoremVerdict fuzz_instance(TheoremId id, std::uint64_t instance_seed, const FuzzOptions& options = {});
std::uint64_t fuzz_instance_seed(const FuzzOptions& options, TheoremId id, std::size_t k);

}  // namespace splitlab
