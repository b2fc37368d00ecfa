#include "splitlab/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "splitlab/errors.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/order.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/solvers.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"

namespace splitlab {

namespace {

struct Builder {
    Reproduction& r;
    const Tolerances& tol;

    void value(const std::string& quantity, const Matrix& computed, const Matrix& reference, double tolerance) {
        require_same_shape(computed, reference, "reproduction row");
        ReproductionRow row{quantity, computed, reference, tolerance, max_abs(computed - reference), false};
        row.pass = row.deviation <= tolerance;
        r.values.push_back(std::move(row));
    }
    void radius(const std::string& quantity, double computed, double reference) {
        value(quantity, Matrix{{computed}}, Matrix{{reference}}, kRadiusTolerance);
    }
    void entries(const std::string& quantity, const Matrix& computed, const Matrix& reference) {
        value(quantity, computed, reference, kEntryTolerance);
    }
    void check(const std::string& predicate, bool expected, bool observed) {
        r.checks.push_back({predicate, expected, observed});
    }
    void nonneg(const std::string& predicate, const Matrix& x, bool expected) {
        check(predicate, expected, entrywise_geq(x, Matrix(x.rows(), x.cols()), tol));
    }
    void verdict(TheoremVerdict v, bool hypotheses_expected, bool conclusion_expected) {
        const std::string id = to_string(v.id);
        check(id + " hypotheses hold", hypotheses_expected, v.hypotheses_hold());
        check(id + " conclusion holds", conclusion_expected, v.conclusion_holds);
        r.verdicts.push_back(std::move(v));
    }
};

SingleSplitting original_single(const fixtures::SingleExample& ex, const Tolerances& tol) {
    return SingleSplitting::create(ex.A, ex.M, ex.N, tol);
}

SingleSplitting regularized_single(const fixtures::SingleExample& ex, const Tolerances& tol) {
    return split_regularized(build_regularized(ex.A, ex.lambda, tol), ex.M_lambda, ex.N_lambda);
}

void ex32(Builder& b) {
    const auto& ex = fixtures::rectangular_weak();
    const SingleSplitting s = original_single(ex, b.tol);
    const SingleSplitting sl = regularized_single(ex, b.tol);
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda, b.tol);
    const Matrix Ap = pseudoinverse(ex.A, b.tol);
    const Matrix Mp = pseudoinverse(ex.M, b.tol);
    const Matrix BinvN = solve_dense(sys.B(), ex.N_lambda, b.tol);
    b.entries("B_lambda", sys.B(), ex.B_reference);
    b.radius("rho(M_lambda^-1 N_lambda)", rho(sl.iteration_matrix(), b.tol), ex.rho_regularized_reference);
    b.radius("rho(M^+ N)", rho(Mp * ex.N, b.tol), ex.rho_original_reference);
    b.entries("N M^+", ex.N * Mp, ex.NMpinv_reference);
    b.nonneg("A^+ N - B_lambda^-1 N_lambda >= 0", Ap * ex.N - BinvN, true);
    b.nonneg("B_lambda^-1 N_lambda >= 0", BinvN, true);
    b.check("M^+ N >= 0", true, s.flags().weak1);
    b.check("rho(M_lambda^-1 N_lambda) <= rho(M^+ N) < 1", true,
            rho(sl.iteration_matrix(), b.tol) <= rho(Mp * ex.N, b.tol) + kConclusionSlack &&
                rho(Mp * ex.N, b.tol) < 1.0 - kConclusionSlack);
}

void ex35(Builder& b) {
    const auto& ex = fixtures::rectangular_weak();
    const SingleSplitting s = original_single(ex, b.tol);
    const SingleSplitting sl = regularized_single(ex, b.tol);
    const Matrix Ap = pseudoinverse(ex.A, b.tol);
    const Matrix Mp = pseudoinverse(ex.M, b.tol);
    const Matrix diff = Ap * ex.N * Mp - sl.iteration_matrix() * Ap;
    b.entries("A^+ N M^+ - M_lambda^-1 N_lambda A^+", diff, ex.converse_diff_reference);
    b.nonneg("A^+ N M^+ - M_lambda^-1 N_lambda A^+ >= 0", diff, false);
    b.radius("rho(M_lambda^-1 N_lambda)", rho(sl.iteration_matrix(), b.tol), ex.rho_regularized_reference);
    b.radius("rho(M^+ N)", rho(Mp * ex.N, b.tol), ex.rho_original_reference);
    b.verdict(check_comparison_single(TheoremId::CmpMixB, s, family::fixed_preconditioner(ex.M_lambda),
                                      example_schedule(), b.tol),
              false, true);
}

DoubleSplitting pair_member(const fixtures::DoublePairExample& ex, int which, const Tolerances& tol) {
    return which == 1 ? DoubleSplitting::create(ex.A, ex.P1, ex.R1, ex.S1, tol)
                      : DoubleSplitting::create(ex.A, ex.P2, ex.R2, ex.S2, tol);
}

double tilde_rho(const DoubleSplitting& d, const Tolerances& tol) {
    return build_double_iteration_matrix(d, Variant::TildeW, tol).rho;
}

void ex313(Builder& b) {
    const auto& ex = fixtures::type_two_pair();
    const DoubleSplitting d1 = pair_member(ex, 1, b.tol), d2 = pair_member(ex, 2, b.tol);
    const Matrix Ainv = inverse(ex.A, b.tol);
    b.radius("rho(tildeW1)", tilde_rho(d1, b.tol), ex.rho1_reference);
    b.radius("rho(tildeW2)", tilde_rho(d2, b.tol), ex.rho2_reference);
    b.entries("P1 A^-1", ex.P1 * Ainv, ex.P1Ainv_reference);
    b.entries("P2 A^-1", ex.P2 * Ainv, ex.P2Ainv_reference);
    b.entries("S1 A^-1", ex.S1 * Ainv, ex.S1Ainv_reference);
    b.entries("S2 A^-1", ex.S2 * Ainv, ex.S2Ainv_reference);
    b.check("type II (splitting 1)", true, d1.type2());
    b.check("type II (splitting 2)", true, d2.type2());
    b.verdict(check_double_comparison(TheoremId::Dw2Scaled, d1, d2, b.tol), true, true);
}

void ex_conv(Builder& b) {
    const auto& ex = fixtures::type_two_pair();
    const DoubleSplitting d1 = pair_member(ex, 1, b.tol), d2 = pair_member(ex, 2, b.tol);
    const Matrix P1inv = inverse(ex.P1, b.tol), P2inv = inverse(ex.P2, b.tol);
    const Matrix rate = ex.R1 * P1inv - ex.R2 * P2inv;
    const Matrix scale = ex.A * P1inv - ex.A * P2inv;
    b.entries("R1 P1^-1 - R2 P2^-1", rate, ex.rate_diff_reference);
    b.entries("A P1^-1 - A P2^-1", scale, ex.scale_diff_reference);
    b.nonneg("R1 P1^-1 - R2 P2^-1 >= 0", rate, false);
    b.nonneg("A P1^-1 - A P2^-1 >= 0", scale, false);
    const double r1 = tilde_rho(d1, b.tol), r2 = tilde_rho(d2, b.tol);
    b.radius("rho(tildeW1)", r1, ex.rho1_reference);
    b.radius("rho(tildeW2)", r2, ex.rho2_reference);
    b.check("rho(tildeW1) <= rho(tildeW2) < 1", true, r1 <= r2 + kConclusionSlack && r2 < 1.0 - kConclusionSlack);
    b.verdict(check_double_comparison(TheoremId::Dw2Rate, d1, d2, b.tol), false, true);
}

void ex_pe121(Builder& b) {
    const auto& ex = fixtures::regularized_double();
    // The reference P − R + S differs from the reference A in one entry; the
    // original-side splitting uses the matrix its parts define.
    const DoubleSplitting d = DoubleSplitting::create(ex.P - ex.R + ex.S, ex.P, ex.R, ex.S, b.tol);
    const RegularizedSystem sys = build_regularized(ex.A, ex.lambda, b.tol);
    const DoubleSplitting dl = split_regularized(sys, ex.P_lambda, ex.R_lambda, ex.S_lambda);
    const Matrix& Pp = d.p_inverse();
    const Matrix& Plinv = dl.p_inverse_strict();
    const Matrix right = Pp * ex.R - Plinv * ex.R_lambda;
    const Matrix left = Plinv * ex.S_lambda - Pp * ex.S;
    const double rho_l = build_double_iteration_matrix(dl, Variant::HatW, b.tol).rho;
    const double rho_w = rho(assemble_block(Pp * ex.R, -(Pp * ex.S)), b.tol);
    b.entries("B_lambda", sys.B(), ex.B_reference);
    b.radius("rho(W_lambda)", rho_l, ex.rho_lambda_reference);
    b.radius("rho(W)", rho_w, ex.rho_original_reference);
    b.entries("P^+ R - P_lambda^-1 R_lambda", right, ex.right_diff_reference);
    b.entries("P_lambda^-1 S_lambda - P^+ S", left, ex.left_diff_reference);
    b.check("P - R + S = A", true, nearly_equal(ex.P - ex.R + ex.S, ex.A, b.tol));
    b.nonneg("P^+ R - P_lambda^-1 R_lambda >= 0", right, true);
    b.nonneg("P_lambda^-1 S_lambda - P^+ S >= 0", left, true);
    b.check("rho(W_lambda) <= rho(W) < 1", true, rho_l <= rho_w + kConclusionSlack && rho_w < 1.0 - kConclusionSlack);
    const DoubleFamily fam = family::fixed_remainders(ex.R_lambda, ex.S_lambda);
    b.verdict(check_regularized_double(TheoremId::RdCmpI, ex.A, d, fam, example_schedule(), b.tol), true, true);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

const char* to_string(ExampleId id) {
    switch (id) {
        case ExampleId::Ex32: return "ex-3-2";
        case ExampleId::Ex35: return "ex-3-5";
        case ExampleId::Ex313: return "ex-3-13";
        case ExampleId::ExConv: return "ex-conv";
        case ExampleId::ExPe121: return "ex-pe121";
    }
    return "?";
}

const std::vector<ExampleId>& all_examples() {
    static const std::vector<ExampleId> ids{ExampleId::Ex32, ExampleId::Ex35, ExampleId::Ex313, ExampleId::ExConv,
                                            ExampleId::ExPe121};
    return ids;
}

ExampleId parse_example(const std::string& name) {
    for (ExampleId id : all_examples())
        if (name == to_string(id)) return id;
    throw UsageError("unknown example '" + name + "' (expected ex-3-2, ex-3-5, ex-3-13, ex-conv or ex-pe121)");
}

std::vector<double> example_schedule() { return {1e-2, 1e-3, 1e-4}; }

bool Reproduction::all_pass() const {
    return std::all_of(values.begin(), values.end(), [](const ReproductionRow& r) { return r.pass; }) &&
           std::all_of(checks.begin(), checks.end(), [](const ReproductionCheck& c) { return c.pass(); });
}

const ReproductionRow* Reproduction::find_value(const std::string& quantity) const {
    for (const auto& r : values)
        if (r.quantity == quantity) return &r;
    return nullptr;
}

const ReproductionCheck* Reproduction::find_check(const std::string& predicate) const {
    for (const auto& c : checks)
        if (c.predicate == predicate) return &c;
    return nullptr;
}

Reproduction reproduce(ExampleId id, const Tolerances& tol) {
    Reproduction r;
    r.id = id;
    Builder b{r, tol};
    switch (id) {
        case ExampleId::Ex32: ex32(b); break;
        case ExampleId::Ex35: ex35(b); break;
        case ExampleId::Ex313: ex313(b); break;
        case ExampleId::ExConv: ex_conv(b); break;
        case ExampleId::ExPe121: ex_pe121(b); break;
    }
    return r;
}

std::string format_table(const Reproduction& r) {
    std::ostringstream os;
    os << "example " << to_string(r.id) << "\n";
    os << "quantity                                   computed     reference    deviation    tolerance  status\n";
    for (const auto& row : r.values) {
        const bool scalar = row.computed.size() == 1;
        char line[256];
        std::snprintf(line, sizeof line, "%-42s %-12s %-12s %-12s %-10s %s\n", row.quantity.c_str(),
                      scalar ? fmt(row.computed(0, 0)).c_str() : row.computed.shape_string().c_str(),
                      scalar ? fmt(row.reference(0, 0)).c_str() : "(table)", fmt(row.deviation).c_str(),
                      fmt(row.tolerance).c_str(), row.pass ? "ok" : "FAIL");
        os << line;
        if (!scalar && !row.pass) {
            for (std::size_t i = 0; i < row.computed.rows(); ++i) {
                os << "    ";
                for (std::size_t j = 0; j < row.computed.cols(); ++j) {
                    std::snprintf(line, sizeof line, " %9.4f/%-9.4f", row.computed(i, j), row.reference(i, j));
                    os << line;
                }
                os << "\n";
            }
        }
    }
    os << "check                                                expected  observed  status\n";
    for (const auto& c : r.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-52s %-9s %-9s %s\n", c.predicate.c_str(), c.expected ? "true" : "false",
                      c.observed ? "true" : "false", c.pass() ? "ok" : "FAIL");
        os << line;
    }
    os << (r.all_pass() ? "result: all values within tolerance\n" : "result: FAILED\n");
    return os.str();
}

}  // namespace splitlab
