#include "splitlab/problems.hpp"

#include <cmath>
#include <random>

#include "splitlab/errors.hpp"

namespace splitlab {

namespace {

// Two smooth bumps of unequal height and width.
double bimodal(double t) {
    const auto bump = [](double t, double c, double w) { return std::exp(-(t - c) * (t - c) / (2.0 * w * w)); };
    return bump(t, 0.3, 0.07) + 0.6 * bump(t, 0.7, 0.1);
}

}  // namespace

const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::FredholmGauss: return "fredholm-gauss";
        case ProblemKind::PoissonNeumann: return "poisson-neumann";
        case ProblemKind::File: return "file";
    }
    return "?";
}

ProblemKind parse_problem_kind(const std::string& name) {
    for (ProblemKind k : {ProblemKind::FredholmGauss, ProblemKind::PoissonNeumann, ProblemKind::File})
        if (name == to_string(k)) return k;
    throw UsageError("unknown problem kind '" + name + "' (expected fredholm-gauss, poisson-neumann or file)");
}

void ProblemSpec::validate() const {
    if (n < 2) throw ParameterError("grid size n must be at least 2");
    if (!(kernel_width > 0.0) || !std::isfinite(kernel_width)) throw ParameterError("kernel_width must be positive");
    if (!(noise_level >= 0.0 && noise_level < 1.0)) throw ParameterError("noise_level must lie in [0, 1)");
}

FredholmProblem gen_fredholm(const ProblemSpec& spec) {
    spec.validate();
    if (spec.kind != ProblemKind::FredholmGauss) throw ParameterError("gen_fredholm needs kind fredholm-gauss");
    const std::size_t n = spec.n;
    const double h = 1.0 / static_cast<double>(n);
    const double w2 = 2.0 * spec.kernel_width * spec.kernel_width;
    FredholmProblem p;
    p.A = Matrix(n, n);
    p.x_true.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * h;
        p.x_true[i] = bimodal(s);
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (static_cast<double>(j) + 0.5) * h;
            p.A(i, j) = h * std::exp(-(s - t) * (s - t) / w2);
        }
    }
    p.b = p.A * p.x_true;
    if (spec.noise_level > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vector e(n);
        for (auto& v : e) v = gauss(rng);
        const double scale = spec.noise_level * norm2(p.b) / norm2(e);
        for (std::size_t i = 0; i < n; ++i) p.b[i] += scale * e[i];
    }
    return p;
}

Matrix gen_poisson_neumann(std::size_t n) {
    if (n < 2) throw ParameterError("grid size n must be at least 2");
    const std::size_t side = n + 1, N = side * side;
    const double scale = static_cast<double>(n) * static_cast<double>(n);
    Matrix L(N, N);
    const auto idx = [side](std::size_t r, std::size_t c) { return r * side + c; };
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            const std::size_t k = idx(r, c);
            const auto link = [&](std::size_t other) {
                L(k, other) -= scale;
                L(k, k) += scale;
            };
            if (r > 0) link(idx(r - 1, c));
            if (r + 1 < side) link(idx(r + 1, c));
            if (c > 0) link(idx(r, c - 1));
            if (c + 1 < side) link(idx(r, c + 1));
        }
    return L;
}

}  // namespace splitlab
