#include "splitlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splitlab/errors.hpp"
#include "splitlab/kernels.hpp"
#include "splitlab/spectral.hpp"

namespace splitlab {

namespace {

constexpr std::size_t kRateWindow = 20;
constexpr std::size_t kDivergenceWindow = 50;
constexpr double kDivergenceGrowth = 10.0;

double rate_over_window(const std::vector<double>& s, std::size_t window) {
    if (s.size() < 2) return 0.0;
    const std::size_t w = std::min(window, s.size() - 1);
    const double last = s.back(), first = s[s.size() - 1 - w];
    if (first == 0.0 || last == 0.0) return 0.0;
    return std::pow(last / first, 1.0 / static_cast<double>(w));
}

double step_norm(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Shared driver. `advance(prev, cur)` returns the next iterate.
template <class Advance>
IterationReport run(Vector prev, Vector cur, const SolverConfig& cfg, Variant variant, Advance advance) {
    IterationReport rep;
    rep.variant = variant;
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.max_iter; ++k) {
        Vector next = advance(prev, cur);
        const double step = step_norm(next, cur);
        rep.step_norms.push_back(step);
        prev = std::move(cur);
        cur = std::move(next);
        rep.k_final = k + 1;
        if (!std::isfinite(step)) {
            rep.diverged = true;
            break;
        }
        if (step <= cfg.stop_eps) {
            rep.converged = true;
            break;
        }
        min_step = std::min(min_step, step);
        const auto& s = rep.step_norms;
        if (s.size() > kDivergenceWindow && step >= kDivergenceGrowth * min_step &&
            step > s[s.size() - 1 - kDivergenceWindow]) {
            rep.diverged = true;
            break;
        }
    }
    rep.rate_estimate = rate_over_window(rep.step_norms, kRateWindow);
    rep.limit = cur;
    rep.iterates_kept = {std::move(prev), std::move(cur)};
    return rep;
}

Vector initial(const std::optional<Vector>& v, std::size_t n) { return v ? *v : Vector(n, 0.0); }

}  // namespace

void SolverConfig::validate(std::size_t n) const {
    if (!(stop_eps > 0.0)) throw ParameterError("stop_eps must be positive");
    if (x0 && x0->size() != n) throw DimensionError("x0 has length " + std::to_string(x0->size()) + ", expected " + std::to_string(n));
    if (x1 && x1->size() != n) throw DimensionError("x1 has length " + std::to_string(x1->size()) + ", expected " + std::to_string(n));
}

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Single: return "single";
        case Variant::HatW: return "hatW";
        case Variant::TildeW: return "tildeW";
        case Variant::ProperW: return "properW";
        case Variant::LambdaW: return "lambdaW";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    for (Variant v : {Variant::Single, Variant::HatW, Variant::TildeW, Variant::ProperW, Variant::LambdaW})
        if (name == to_string(v)) return v;
    throw UsageError("unknown variant '" + name + "' (expected single, hatW, tildeW, properW or lambdaW)");
}

Matrix assemble_block(const Matrix& top_left, const Matrix& top_right) {
    require_square(top_left, "block iteration matrix");
    require_same_shape(top_left, top_right, "block iteration matrix");
    const std::size_t n = top_left.rows();
    return block2x2(top_left, top_right, Matrix::identity(n), Matrix::zeros(n, n));
}

DoubleSchemeParts double_scheme_parts(const DoubleSplitting& d, Variant variant) {
    DoubleSchemeParts parts;
    switch (variant) {
        case Variant::HatW:
        case Variant::LambdaW: {
            if (!d.p_nonsingular()) throw HypothesisError("P nonsingular", std::string(to_string(variant)) + " needs P^-1");
            const Matrix& Pi = d.p_inverse();
            parts.top_left = Pi * d.R();
            parts.top_right = -(Pi * d.S());
            parts.rhs_map = Pi;
            break;
        }
        case Variant::TildeW: {
            if (!d.type2_admissible())
                throw HypothesisError("type II admission", "tildeW needs symmetric nonsingular A and nonsingular P");
            const Matrix& Pi = d.p_inverse();
            parts.top_left = (d.R() * Pi).transpose();
            parts.top_right = -((d.S() * Pi).transpose());
            parts.rhs_map = Pi.transpose();
            break;
        }
        case Variant::ProperW: {
            if (!d.flags().double_proper) throw HypothesisError("double proper", "properW needs R(P) = R(A) and N(P) = N(A)");
            const Matrix& Pp = d.p_inverse();
            parts.top_left = Pp * d.R();
            parts.top_right = -(Pp * d.S());
            parts.rhs_map = Pp;
            break;
        }
        case Variant::Single:
            throw HypothesisError("double variant", "'single' is not a double-splitting scheme");
    }
    return parts;
}

BlockIterationMatrix build_double_iteration_matrix(const DoubleSplitting& d, Variant variant, const Tolerances& tol) {
    const DoubleSchemeParts parts = double_scheme_parts(d, variant);
    BlockIterationMatrix b;
    b.variant = variant;
    b.W = assemble_block(parts.top_left, parts.top_right);
    b.rho = rho(b.W, tol);
    return b;
}

IterationReport iterate_affine(const Matrix& H, const Vector& c, const SolverConfig& cfg) {
    require_square(H, "iteration matrix");
    if (c.size() != H.rows()) throw DimensionError("constant term length does not match the iteration matrix");
    cfg.validate(H.rows());
    Vector x0 = initial(cfg.x0, H.rows());
    return run(x0, x0, cfg, Variant::Single, [&](const Vector&, const Vector& cur) {
        Vector y = kernels::gemv(H, cur);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += c[i];
        return y;
    });
}

IterationReport iterate_two_term(const Matrix& H1, const Matrix& H2, const Vector& c, const SolverConfig& cfg,
                                 Variant variant) {
    require_square(H1, "iteration matrix");
    require_same_shape(H1, H2, "two-term iteration");
    if (c.size() != H1.rows()) throw DimensionError("constant term length does not match the iteration matrix");
    cfg.validate(H1.rows());
    const std::size_t n = H1.rows();
    return run(initial(cfg.x0, n), initial(cfg.x1, n), cfg, variant, [&](const Vector& prev, const Vector& cur) {
        Vector y = kernels::gemv(H1, cur);
        const Vector z = kernels::gemv(H2, prev);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + z[i]) + c[i];
        return y;
    });
}

IterationReport iterate_single(const SingleSplitting& s, const Vector& b, const SolverConfig& cfg) {
    if (b.size() != s.A().rows())
        throw DimensionError("b has length " + std::to_string(b.size()) + ", A has " + std::to_string(s.A().rows()) + " rows");
    const Matrix H = s.iteration_matrix();
    const Vector c = kernels::gemv(s.u_inverse(), b);
    return iterate_affine(H, c, cfg);
}

IterationReport iterate_double(const DoubleSplitting& d, const Vector& b, Variant variant, const SolverConfig& cfg) {
    const DoubleSchemeParts parts = double_scheme_parts(d, variant);
    if (b.size() != parts.rhs_map.cols())
        throw DimensionError("b has length " + std::to_string(b.size()) + ", expected " + std::to_string(parts.rhs_map.cols()));
    const Vector c = kernels::gemv(parts.rhs_map, b);
    return iterate_two_term(parts.top_left, parts.top_right, c, cfg, variant);
}

double asymptotic_rate(const IterationReport& rep) {
    if (rep.step_norms.size() < 30)
        throw InsufficiencyError("rate estimate needs at least 30 steps, have " + std::to_string(rep.step_norms.size()));
    return rate_over_window(rep.step_norms, kRateWindow);
}

}  // namespace splitlab
