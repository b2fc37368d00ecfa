#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "splitlab/errors.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"
#include "splitlab/theorem_lab.hpp"

namespace splitlab {

namespace {

using Rng = std::mt19937_64;

constexpr double kMaxCondition = 1e3;
constexpr int kMaxAttempts = 200;

double unif(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
bool chance(Rng& rng, double p) { return unif(rng, 0.0, 1.0) < p; }

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Matrix random_matrix(Rng& rng, std::size_t m, std::size_t n, double lo, double hi) {
    Matrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = unif(rng, lo, hi);
    return x;
}

// Entries in [0.05, 1] with probability `density`, zero otherwise.
Matrix random_nonneg(Rng& rng, std::size_t m, std::size_t n, double density) {
    Matrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (chance(rng, density)) x(i, j) = unif(rng, 0.05, 1.0);
    return x;
}

double condition(const Matrix& x) {
    const Vector s = singular_values(x);
    return s.back() > 0.0 ? s.front() / s.back() : std::numeric_limits<double>::infinity();
}

bool well_conditioned(const Matrix& x) { return condition(x) <= kMaxCondition; }

// Nonnegative h rescaled to spectral radius r; nullopt when ρ(h) = 0.
std::optional<Matrix> with_radius(Matrix h, double r) {
    const double cur = rho(h);
    if (!(cur > 1e-12)) return std::nullopt;
    h *= r / cur;
    return h;
}

// ρ targets away from 1 on either side.
double radius_either_side(Rng& rng) { return chance(rng, 0.7) ? unif(rng, 0.05, 0.95) : unif(rng, 1.05, 2.0); }

Matrix nonsingular(Rng& rng, std::size_t n, double max_condition = kMaxCondition) {
    for (;;) {
        Matrix a = random_matrix(rng, n, n, -1.0, 1.0);
        if (condition(a) <= max_condition) return a;
    }
}

Matrix symmetric_nonsingular(Rng& rng, std::size_t n) {
    for (;;) {
        const Matrix x = random_matrix(rng, n, n, -1.0, 1.0);
        Matrix a = x + x.transpose();
        if (well_conditioned(a)) return a;
    }
}

// rows×groups 0/1 matrix, one 1 per row, every group used.
Matrix aggregation(Rng& rng, std::size_t rows, std::size_t groups) {
    std::vector<std::size_t> assign(rows);
    for (std::size_t i = 0; i < rows; ++i) assign[i] = i < groups ? i : pick(rng, 0, groups - 1);
    std::shuffle(assign.begin(), assign.end(), rng);
    Matrix e(rows, groups);
    for (std::size_t i = 0; i < rows; ++i) e(i, assign[i]) = 1.0;
    return e;
}

// Orthogonal projector onto R(e): group averaging, entrywise nonnegative.
Matrix averaging(const Matrix& e) {
    Matrix p(e.rows(), e.rows());
    Vector count(e.cols(), 0.0);
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t g = 0; g < e.cols(); ++g) count[g] += e(i, g);
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.rows(); ++j)
            for (std::size_t g = 0; g < e.cols(); ++g)
                if (e(i, g) != 0.0 && e(j, g) != 0.0) p(i, j) = 1.0 / count[g];
    return p;
}

Matrix resolvent(const Matrix& g) { return inverse(Matrix::identity(g.rows()) - g); }

bool resolvent_ok(const Matrix& g) { return well_conditioned(Matrix::identity(g.rows()) - g); }

// A = E·core·Fᵀ: R(A) = R(E), N(A) = R(F)^⊥, both projectors nonnegative.
struct Aggregated {
    Matrix A, row_proj, col_proj;
};

// Normalized to σ_max(A) = 1 so that cond(B_λ) ≈ 1/λ along the schedule.
Aggregated aggregated(Rng& rng, std::size_t m, std::size_t n, std::size_t r, const Matrix& core) {
    const Matrix E = aggregation(rng, m, r), F = aggregation(rng, n, r);
    Matrix A = E * core * F.transpose();
    A *= 1.0 / singular_values(A).front();
    return {std::move(A), averaging(E), averaging(F)};
}

struct SingleInstance {
    Matrix A;
    std::optional<SingleSplitting> s;
    Matrix H;  // M†N (first type) or NM† (second type)
};

// Proper splitting with M†N = H where H = Π_F H₀ Π_F.
SingleInstance weak_first(const Aggregated& ag, Rng& rng, const Tolerances& tol) {
    for (;;) {
        const std::size_t n = ag.A.cols();
        auto H = with_radius(ag.col_proj * random_nonneg(rng, n, n, 1.0) * ag.col_proj, unif(rng, 0.05, 0.9));
        if (!H || !resolvent_ok(*H)) continue;
        const Matrix M = ag.A * resolvent(*H);
        return {ag.A, SingleSplitting::create(ag.A, M, M - ag.A, tol), *H};
    }
}

// Proper splitting with NM† = G where G = Π_E G₀ Π_E.
SingleInstance weak_second(const Aggregated& ag, Rng& rng, const Tolerances& tol) {
    for (;;) {
        const std::size_t m = ag.A.rows();
        auto G = with_radius(ag.row_proj * random_nonneg(rng, m, m, 1.0) * ag.row_proj, unif(rng, 0.05, 0.9));
        if (!G || !resolvent_ok(*G)) continue;
        const Matrix M = resolvent(*G) * ag.A;
        return {ag.A, SingleSplitting::create(ag.A, M, M - ag.A, tol), *G};
    }
}

// G ∘ U with U ∈ [0.2, 1] (dominated) or occasionally [0.5, 1.3].
Matrix damped(Rng& rng, const Matrix& g) {
    const bool over = chance(rng, 0.25);
    for (;;) {
        Matrix out(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) = g(i, j) * (over ? unif(rng, 0.5, 1.3) : unif(rng, 0.2, 1.0));
        if (resolvent_ok(out) && rho(out) < 0.98) return out;
    }
}

Matrix positive_with_radius(Rng& rng, std::size_t n, double lo, double hi) {
    for (;;) {
        auto g = with_radius(random_nonneg(rng, n, n, 1.0), unif(rng, lo, hi));
        if (g && resolvent_ok(*g)) return *g;
    }
}

// Cores of regularized instances stay well conditioned so that the smallest
// scheduled λ is far below σ_min(A)².
constexpr double kCoreCondition = 50.0;

Aggregated general_aggregate(Rng& rng, std::size_t m, std::size_t n, std::size_t r) {
    return aggregated(rng, m, n, r, nonsingular(rng, r, kCoreCondition));
}

std::vector<double> sweep_of(const FuzzOptions& o) { return o.sweep; }

struct RunResult {
    TheoremVerdict verdict;
    bool auxiliary_failure = false;
};

RunResult run_single_comparison(TheoremId id, Rng& rng, const FuzzOptions& o) {
    const Tolerances& tol = o.tol;
    const bool needs_square = id == TheoremId::CmpSecond || id == TheoremId::CmpMixA || id == TheoremId::CmpSameI ||
                              id == TheoremId::CmpSameIAlt;
    std::size_t m = pick(rng, 2, o.max_n), n = pick(rng, 2, o.max_n);
    if (needs_square) m = n;
    const std::size_t r = needs_square ? pick(rng, 1, n - 1) : pick(rng, 1, std::min(m, n));
    Aggregated ag;
    if (id == TheoremId::CmpMixA) {
        // Core (I − T)⁻¹ ≥ 0 makes A† ≥ 0.
        const Matrix T = positive_with_radius(rng, r, 0.1, 0.9);
        ag = aggregated(rng, m, n, r, Matrix::identity(r) - T);
    } else {
        ag = general_aggregate(rng, m, n, r);
    }
    const bool first = id == TheoremId::CmpFirst || id == TheoremId::CmpSameI || id == TheoremId::CmpSameIAlt ||
                       id == TheoremId::CmpIToII;
    SingleInstance inst = first ? weak_first(ag, rng, tol) : weak_second(ag, rng, tol);
    SingleFamily fam;
    switch (id) {
        case TheoremId::CmpFirst:
            fam = family::first_type(damped(rng, inst.H));
            break;
        case TheoremId::CmpSecond:
            fam = family::second_type(damped(rng, inst.H));
            break;
        case TheoremId::CmpIToII:
            fam = family::second_type(damped(rng, inst.H));
            break;
        case TheoremId::CmpSameI:
        case TheoremId::CmpSameIAlt:
            fam = family::first_type(chance(rng, 0.5) ? damped(rng, inst.H) : positive_with_radius(rng, n, 0.01, 0.9));
            break;
        default:
            fam = family::first_type(positive_with_radius(rng, n, 0.01, 0.9));
            break;
    }
    RunResult res{check_comparison_single(id, *inst.s, fam, sweep_of(o), tol)};
    if (id == TheoremId::CmpFirst && res.verdict.hypotheses_hold()) {
        const double direct = rho(inst.s->iteration_matrix(), tol);
        const double aux = rho(pseudoinverse(inst.A, tol) * inst.s->V(), tol);
        res.auxiliary_failure = std::abs(direct - aux / (1.0 + aux)) > 1e-8;
    }
    return res;
}

RunResult run_single_convergence(Rng& rng, const FuzzOptions& o) {
    const std::size_t m = pick(rng, 2, o.max_n), n = pick(rng, 2, o.max_n);
    const Aggregated ag = general_aggregate(rng, m, n, pick(rng, 1, std::min(m, n)));
    Matrix G;
    for (;;) {
        auto g = with_radius(random_nonneg(rng, n, n, 1.0), radius_either_side(rng));
        if (!g) continue;
        G = *g;
        if (chance(rng, 0.2)) G(pick(rng, 0, n - 1), pick(rng, 0, n - 1)) = -unif(rng, 0.05, 0.5);
        if (resolvent_ok(G)) break;
    }
    const bool first = chance(rng, 0.5);
    const SingleFamily fam = first ? family::first_type(G) : family::second_type(G);
    return {check_single_convergence(ag.A, fam, sweep_of(o), first ? SplittingType::First : SplittingType::Second,
                                     o.tol)};
}

RunResult run_power_dominance(Rng& rng, const FuzzOptions& o) {
    const std::size_t n = pick(rng, 2, o.max_n);
    const Matrix A = nonsingular(rng, n);
    const Matrix H1 = positive_with_radius(rng, n, 0.05, 0.9);
    const Matrix M1 = resolvent(H1) * A;
    if (chance(rng, 0.1)) return {check_power_dominance(M1, M1, A, 1, 1.0, o.tol)};
    Matrix H2 = H1 + random_nonneg(rng, n, n, 0.7) * unif(rng, 0.01, 0.3);
    if (rho(H2) > 0.97) H2 = *with_radius(H2, 0.97);
    const Matrix M2 = resolvent(H2) * A;
    const unsigned j = static_cast<unsigned>(pick(rng, 1, 3));
    Matrix T1 = resolvent(H1), T2 = resolvent(H2), P1 = T1, P2 = T2;
    for (unsigned k = 1; k < j; ++k) {
        P1 = P1 * T1;
        P2 = P2 * T2;
    }
    double alpha_min = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) alpha_min = std::max(alpha_min, P1(i, k) / P2(i, k));
    double alpha = unif(rng, 0.05, 1.0);
    if (alpha_min < 0.99 && chance(rng, 0.8)) alpha = alpha_min + unif(rng, 0.0, 0.5) * (1.0 - alpha_min);
    return {check_power_dominance(M1, M2, A, j, alpha, o.tol)};
}

// Nonnegative X, Y with ρ(X + Y) = r and I − X − Y well conditioned.
std::pair<Matrix, Matrix> split_pair(Rng& rng, std::size_t n, double r, double density) {
    for (;;) {
        const Matrix X = random_nonneg(rng, n, n, density), Y = random_nonneg(rng, n, n, density);
        const double cur = rho(X + Y);
        if (!(cur > 1e-12)) continue;
        const Matrix Xs = X * (r / cur), Ys = Y * (r / cur);
        if (resolvent_ok(Xs + Ys)) return {Xs, Ys};
    }
}

DoubleSplitting type_one_splitting(const Matrix& A, const Matrix& X, const Matrix& Y, const Tolerances& tol) {
    const Matrix P = A * resolvent(X + Y);
    return DoubleSplitting::create(A, P, P * X, -(P * Y), tol);
}

DoubleSplitting type_two_splitting(const Matrix& A, const Matrix& X, const Matrix& Y, const Tolerances& tol) {
    const Matrix P = resolvent(X + Y) * A;
    return DoubleSplitting::create(A, P, X * P, -(Y * P), tol);
}

RunResult run_equivalence(TheoremId id, Rng& rng, const FuzzOptions& o) {
    const std::size_t n = pick(rng, 2, o.max_n);
    const auto [X, Y] = split_pair(rng, n, radius_either_side(rng), 0.6);
    if (id == TheoremId::EqTypeI)
        return {check_double_equivalences(type_one_splitting(nonsingular(rng, n), X, Y, o.tol), EquivalenceForm::TypeI,
                                          o.tol)};
    const EquivalenceForm form = id == TheoremId::EqTypeII ? EquivalenceForm::TypeII : EquivalenceForm::TypeIIAlt;
    return {check_double_equivalences(type_two_splitting(symmetric_nonsingular(rng, n), X, Y, o.tol), form, o.tol)};
}

// Gauss–Seidel-like type II splittings of the M-matrix A = sI − C: P = D − L
// with L ≤ C strictly lower, remainder split between R ≥ 0 and S ≤ 0.
// The second splitting has P₂ ≥ P₁ and S₂ ≤ S₁ unless `independent`.
std::pair<DoubleSplitting, DoubleSplitting> m_matrix_pair(Rng& rng, std::size_t n, bool independent,
                                                          const Tolerances& tol) {
    Matrix C = random_nonneg(rng, n, n, 0.6);
    C = C + C.transpose();
    for (std::size_t i = 0; i < n; ++i) C(i, i) = 0.0;
    const double s = std::max(rho(C), 0.1) * unif(rng, 1.1, 2.0);
    const Matrix A = s * Matrix::identity(n) - C;
    Matrix u1(n, n), u2(n, n), w1(n, n), w2(n, n);
    Vector d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d1[i] = unif(rng, 0.0, 0.5);
        d2[i] = independent ? unif(rng, 0.0, 0.5) : d1[i] + unif(rng, 0.0, 0.5);
        for (std::size_t j = 0; j < n; ++j) {
            u1(i, j) = unif(rng, 0.0, 1.0);
            u2(i, j) = independent ? unif(rng, 0.0, 1.0) : u1(i, j) * unif(rng, 0.0, 1.0);
            w1(i, j) = unif(rng, 0.0, 1.0);
            w2(i, j) = independent ? unif(rng, 0.0, 1.0) : w1(i, j) + (1.0 - w1(i, j)) * unif(rng, 0.0, 1.0);
        }
    }
    auto make = [&](const Vector& d, const Matrix& u, const Matrix& w) {
        Matrix P = A;
        for (std::size_t i = 0; i < n; ++i) {
            P(i, i) += d[i];
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) P(i, j) = j < i ? -C(i, j) * u(i, j) : 0.0;
        }
        const Matrix rest = P - A;
        const Matrix Sabs = hadamard(rest, w);
        return DoubleSplitting::create(A, P, rest - Sabs, -Sabs, tol);
    };
    return {make(d1, u1, w1), make(d2, u2, w2)};
}

// Type II pairs of one or two symmetric matrices with X₁ ≥ X₂ and
// X₁ + Y₁ ≤ X₂ + Y₂ unless `independent`.
std::pair<DoubleSplitting, DoubleSplitting> rate_pair(Rng& rng, std::size_t n, bool two_matrices, bool independent,
                                                      const Tolerances& tol) {
    const Matrix A1 = symmetric_nonsingular(rng, n);
    const Matrix A2 = two_matrices ? symmetric_nonsingular(rng, n) : A1;
    auto [X2, Y2] = split_pair(rng, n, unif(rng, 0.05, 0.95), 0.7);
    Matrix X1, Y1;
    if (independent) {
        std::tie(X1, Y1) = split_pair(rng, n, unif(rng, 0.05, 0.95), 0.7);
    } else {
        Matrix D(n, n), Z(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                D(i, j) = Y2(i, j) * unif(rng, 0.0, 1.0);
                Z(i, j) = (Y2(i, j) - D(i, j)) * unif(rng, 0.0, 0.5);
            }
        X1 = X2 + D;
        Y1 = Y2 - D - Z;
    }
    return {type_two_splitting(A1, X1, Y1, tol), type_two_splitting(A2, X2, Y2, tol)};
}

RunResult run_double_comparison(TheoremId id, Rng& rng, const FuzzOptions& o) {
    const std::size_t n = pick(rng, 2, o.max_n);
    const bool independent = chance(rng, 0.2);
    switch (id) {
        case TheoremId::Dw2Mono:
        case TheoremId::Dw2Psd: {
            auto [d1, d2] = m_matrix_pair(rng, n, independent, o.tol);
            return {check_double_comparison(id, d1, d2, o.tol)};
        }
        case TheoremId::Dw2Scaled: {
            if (chance(rng, 0.5)) {
                auto [d1, d2] = m_matrix_pair(rng, n, independent, o.tol);
                return {check_double_comparison(id, d1, d2, o.tol)};
            }
            auto [d1, d2] = rate_pair(rng, n, false, independent, o.tol);
            return {check_double_comparison(id, d1, d2, o.tol)};
        }
        case TheoremId::Dw2Rate:
        case TheoremId::Dw2TwoMat: {
            auto [d1, d2] = rate_pair(rng, n, id == TheoremId::Dw2TwoMat, independent, o.tol);
            return {check_double_comparison(id, d1, d2, o.tol)};
        }
        case TheoremId::DwIIvsI:
        case TheoremId::DwIvsII: {
            const Matrix A1 = symmetric_nonsingular(rng, n), A2 = symmetric_nonsingular(rng, n);
            auto [Xa, Ya] = split_pair(rng, n, unif(rng, 0.05, 0.9), 0.7);
            Matrix Xb, Yb;
            if (independent) {
                std::tie(Xb, Yb) = split_pair(rng, n, unif(rng, 0.05, 0.9), 0.7);
            } else {
                // Second pair: X_b = X_aᵀ ∘ U ≤ X_aᵀ, X_b + Y_b = X_aᵀ + Y_aᵀ.
                const Matrix XaT = Xa.transpose(), YaT = Ya.transpose();
                Xb = Matrix(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) Xb(i, j) = XaT(i, j) * unif(rng, 0.0, 1.0);
                Yb = YaT + (XaT - Xb);
            }
            if (id == TheoremId::DwIIvsI)
                return {check_double_comparison(id, type_two_splitting(A1, Xa, Ya, o.tol),
                                                type_one_splitting(A2, Xb, Yb, o.tol), o.tol)};
            return {check_double_comparison(id, type_one_splitting(A1, Xa, Ya, o.tol),
                                            type_two_splitting(A2, Xb, Yb, o.tol), o.tol)};
        }
        default:
            throw UsageError("not a double comparison");
    }
}

// Entrywise product with factors in [lo, hi].
Matrix jitter(Rng& rng, const Matrix& x, double lo, double hi) {
    Matrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) *= unif(rng, lo, hi);
    return out;
}

RunResult run_regularized(TheoremId id, Rng& rng, const FuzzOptions& o) {
    const Tolerances& tol = o.tol;
    if (id == TheoremId::RdConv) {
        const std::size_t m = pick(rng, 2, o.max_n), n = pick(rng, 2, o.max_n);
        const Aggregated ag = general_aggregate(rng, m, n, pick(rng, 1, std::min(m, n)));
        const auto [X, Y] = split_pair(rng, n, radius_either_side(rng), 1.0);
        const DoubleSplitting d = DoubleSplitting::create(ag.A, ag.A, Matrix(m, n), Matrix(m, n), tol);
        const bool first = chance(rng, 0.5);
        return {check_regularized_double(id, d, first ? family::type_one(X, Y) : family::type_two(X, Y), sweep_of(o), tol,
                                         first ? EquivalenceForm::TypeI : EquivalenceForm::TypeII)};
    }
    // Double proper type I splitting P = A(I − X − Y)⁻¹ with X, Y ≥ 0 fixed by
    // the column projector, so P†R = X and −P†S = Y.
    std::size_t m = pick(rng, 2, o.max_n), n = pick(rng, 2, o.max_n);
    if (id == TheoremId::RdCmpII) m = n;
    const std::size_t r = pick(rng, 1, std::min(m, n) - (id == TheoremId::RdCmpII ? 1 : 0));
    Matrix A, Pi;
    if (id == TheoremId::RdCmpII && chance(rng, 0.5)) {
        // Nullity one, null vector with zero sum so the projector keeps 11ᵀ.
        Vector z(n);
        double sum = 0.0;
        for (auto& v : z) sum += (v = unif(rng, -1.0, 1.0));
        for (auto& v : z) v -= sum / static_cast<double>(n);
        const double nz = norm2(z);
        Pi = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Pi(i, j) -= z[i] * z[j] / (nz * nz);
        A = Pi * symmetric_nonsingular(rng, n) * Pi;
    } else if (id == TheoremId::RdCmpII) {
        const Matrix F = aggregation(rng, n, r);
        A = F * symmetric_nonsingular(rng, r) * F.transpose();
        Pi = averaging(F);
    } else {
        const Aggregated ag = general_aggregate(rng, m, n, r);
        A = ag.A;
        Pi = ag.col_proj;
    }
    A *= 1.0 / singular_values(A).front();
    Matrix X, Y;
    for (int attempt = 0;; ++attempt) {
        if (attempt > kMaxAttempts) throw ParameterError("no admissible splitting pair generated");
        const Matrix ones(n, n, 1.0);
        const double c = unif(rng, 0.2, 1.0);
        Matrix X0 = id == TheoremId::RdCmpII ? c * ones + random_nonneg(rng, n, n, 1.0) * 0.2 : random_nonneg(rng, n, n, 1.0);
        Matrix Y0 = id == TheoremId::RdCmpII ? c * ones + random_nonneg(rng, n, n, 1.0) * 0.2 : random_nonneg(rng, n, n, 1.0);
        X = Pi * X0 * Pi;
        Y = Pi * Y0 * Pi;
        const double cur = rho(X + Y);
        if (!(cur > 1e-12)) continue;
        const double target = unif(rng, 0.05, 0.7);
        X *= target / cur;
        Y *= target / cur;
        if (id == TheoremId::RdCmpII && !(entrywise_gt(X, Matrix(n, n), tol) && entrywise_gt(Y, Matrix(n, n), tol)))
            continue;
        if (resolvent_ok(X + Y)) break;
    }
    const Matrix P = A * resolvent(X + Y);
    const DoubleSplitting d = DoubleSplitting::create(A, P, P * X, -(P * Y), tol);
    if (id == TheoremId::RdCmpI) {
        const bool over = chance(rng, 0.2);
        Matrix Xl, Yl;
        do {
            Xl = jitter(rng, X, over ? 0.5 : 0.2, over ? 1.3 : 1.0);
            Yl = jitter(rng, Y, over ? 0.5 : 0.2, over ? 1.3 : 1.0);
        } while (!resolvent_ok(Xl + Yl));
        return {check_regularized_double(id, d, family::type_one(Xl, Yl), sweep_of(o), tol)};
    }
    // Type II family with (R_λP_λ⁻¹)ᵀ = X + D and Y_λ as large as the scale
    // bound allows, clipped at zero.
    const Matrix I = Matrix::identity(n);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Matrix D = chance(rng, 0.5) ? Matrix(n, n) : random_nonneg(rng, n, n, 0.3) * unif(rng, 0.0, 0.05);
        const Matrix XlT = X + D;
        const Matrix room = (I - Pi) + X + Y - XlT;
        Matrix YlT(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) YlT(i, j) = std::max(0.0, room(i, j)) * unif(rng, 0.5, 1.0);
        const Matrix Xl = XlT.transpose(), Yl = YlT.transpose();
        if (!resolvent_ok(Xl + Yl)) continue;
        return {check_regularized_double(id, d, family::type_two(Xl, Yl), sweep_of(o), tol)};
    }
    throw ParameterError("no admissible regularized pair generated");
}

RunResult run_instance(TheoremId id, std::uint64_t seed, const FuzzOptions& o) {
    Rng rng(seed);
    switch (id) {
        case TheoremId::SingleConv:
            return run_single_convergence(rng, o);
        case TheoremId::CmpFirst:
        case TheoremId::CmpSecond:
        case TheoremId::CmpMixA:
        case TheoremId::CmpMixB:
        case TheoremId::CmpSameI:
        case TheoremId::CmpSameIAlt:
        case TheoremId::CmpIToII:
            return run_single_comparison(id, rng, o);
        case TheoremId::PowerDominance:
            return run_power_dominance(rng, o);
        case TheoremId::EqTypeI:
        case TheoremId::EqTypeII:
        case TheoremId::EqTypeIIAlt:
            return run_equivalence(id, rng, o);
        case TheoremId::Dw2Mono:
        case TheoremId::Dw2Scaled:
        case TheoremId::Dw2Rate:
        case TheoremId::Dw2Psd:
        case TheoremId::Dw2TwoMat:
        case TheoremId::DwIIvsI:
        case TheoremId::DwIvsII:
            return run_double_comparison(id, rng, o);
        case TheoremId::RdConv:
        case TheoremId::RdCmpI:
        case TheoremId::RdCmpII:
            return run_regularized(id, rng, o);
    }
    throw UsageError("unknown theorem");
}

}  // namespace

std::uint64_t fuzz_instance_seed(const FuzzOptions& options, TheoremId id, std::size_t k) {
    return splitmix(splitmix(options.seed ^ (static_cast<std::uint64_t>(id) << 32)) + k);
}

TheoremVerdict fuzz_instance(TheoremId id, std::uint64_t instance_seed, const FuzzOptions& options) {
    return run_instance(id, instance_seed, options).verdict;
}

FuzzSummary fuzz_theorem(TheoremId id, const FuzzOptions& options) {
    if (options.max_n < 2) throw ParameterError("fuzz size must be at least 2");
    validate_schedule(options.sweep);
    struct Outcome {
        bool error = false, hyp = false, concl = false, aux = false;
        double gap = 0.0;
    };
    std::vector<Outcome> out(options.instances);
    const auto count = static_cast<std::ptrdiff_t>(options.instances);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        Outcome& oc = out[static_cast<std::size_t>(k)];
        try {
            const RunResult r = run_instance(id, fuzz_instance_seed(options, id, static_cast<std::size_t>(k)), options);
            oc.hyp = r.verdict.hypotheses_hold();
            oc.concl = r.verdict.conclusion_holds;
            oc.aux = r.auxiliary_failure;
            oc.gap = std::max(r.verdict.rho_left - r.verdict.rho_right, r.verdict.rho_right - 1.0);
        } catch (const Error&) {
            oc.error = true;
        }
    }
    FuzzSummary s;
    s.id = id;
    s.instances = options.instances;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Outcome& oc = out[k];
        if (oc.error) {
            ++s.structural_errors;
            continue;
        }
        s.hypotheses_true += oc.hyp;
        s.conclusions_true += oc.concl;
        s.auxiliary_failures += oc.aux;
        if (oc.hyp && !oc.concl) {
            ++s.counterexamples;
            s.worst_gap = std::max(s.worst_gap, oc.gap);
            if (!s.first_counterexample_seed) s.first_counterexample_seed = fuzz_instance_seed(options, id, k);
        }
    }
    return s;
}

}  // namespace splitlab
