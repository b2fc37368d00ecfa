#include "splitlab/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "splitlab/errors.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/solvers.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/svd.hpp"

namespace splitlab {

namespace {

constexpr std::size_t kStabilityWindow = 3;

struct TheoremName {
    TheoremId id;
    const char* name;
};

constexpr TheoremName kNames[] = {
    {TheoremId::SingleConv, "SINGLE_CONV"},       {TheoremId::CmpFirst, "CMP_FIRST"},
    {TheoremId::CmpSecond, "CMP_SECOND"},         {TheoremId::CmpMixA, "CMP_MIX_A"},
    {TheoremId::CmpMixB, "CMP_MIX_B"},            {TheoremId::CmpSameI, "CMP_SAME_I"},
    {TheoremId::CmpSameIAlt, "CMP_SAME_I_ALT"},   {TheoremId::CmpIToII, "CMP_I_TO_II"},
    {TheoremId::PowerDominance, "POWER_DOMINANCE"}, {TheoremId::EqTypeI, "EQ_TYPE_I"},
    {TheoremId::EqTypeII, "EQ_TYPE_II"},          {TheoremId::EqTypeIIAlt, "EQ_TYPE_II_ALT"},
    {TheoremId::Dw2Mono, "DW2_MONO"},             {TheoremId::Dw2Scaled, "DW2_SCALED"},
    {TheoremId::Dw2Rate, "DW2_RATE"},             {TheoremId::Dw2Psd, "DW2_PSD"},
    {TheoremId::Dw2TwoMat, "DW2_TWOMAT"},         {TheoremId::DwIIvsI, "DW_II_VS_I"},
    {TheoremId::DwIvsII, "DW_I_VS_II"},           {TheoremId::RdConv, "RD_CONV"},
    {TheoremId::RdCmpI, "RD_CMP_I"},              {TheoremId::RdCmpII, "RD_CMP_II"},
};

Matrix zeros_like(const Matrix& x) { return Matrix::zeros(x.rows(), x.cols()); }

bool le_and_below_one(double left, double right) {
    return left <= right + kConclusionSlack && right < 1.0 - kConclusionSlack;
}

bool below_one(double r) { return r < 1.0 - kConclusionSlack; }

OrderResult flag_result(bool holds) { return OrderResult{holds, std::nullopt}; }

// Collects hypotheses (or equivalence conditions) and their difference
// matrices. Matrix predicates "X ≥ Y" store X − Y as evidence under `name`.
class Recorder {
public:
    Recorder(TheoremVerdict& v, const Tolerances& tol) : v_(v), tol_(tol) {}

    void into_conditions(bool on) { target_ = on ? &v_.conditions : &v_.hypotheses; }

    void flag(std::string name, std::string predicate, bool holds, std::string note = {}) {
        target_->push_back({std::move(name), std::move(predicate), holds, std::nullopt, std::move(note)});
    }

    void geq(const std::string& name, std::string predicate, const Matrix& x, const Matrix& y) {
        add(name, std::move(predicate), compare_geq(x, y, tol_));
        v_.evidence.push_back({name, x - y});
    }

    void gt(const std::string& name, std::string predicate, const Matrix& x, const Matrix& y) {
        add(name, std::move(predicate), compare_gt(x, y, tol_));
        v_.evidence.push_back({name, x - y});
    }

    // Evaluates `test` at each window point (largest λ first, smallest
    // last). Holds only if every point holds; a mixed outcome is noted.
    template <class Point>
    void window(const std::string& name, std::string predicate, const std::vector<Point>& pts,
                const std::function<OrderResult(const Point&)>& test) {
        std::size_t passed = 0;
        OrderResult smallest, first_fail;
        bool have_fail = false;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            OrderResult r = test(pts[k]);
            if (r.holds) {
                ++passed;
            } else if (!have_fail) {
                first_fail = r;
                have_fail = true;
            }
            if (k + 1 == pts.size()) smallest = r;
        }
        Hypothesis h{name, std::move(predicate), passed == pts.size(), std::nullopt, {}};
        if (!h.holds) h.witness = smallest.holds ? first_fail.witness : smallest.witness;
        if (passed != 0 && passed != pts.size()) h.note = "verdict changes across the last three lambda values";
        target_->push_back(std::move(h));
    }

    template <class Point>
    void window_geq(const std::string& name, std::string predicate, const std::vector<Point>& pts,
                    const std::function<std::pair<Matrix, Matrix>(const Point&)>& sides) {
        window<Point>(name, std::move(predicate), pts, [&](const Point& p) {
            const auto [x, y] = sides(p);
            return compare_geq(x, y, tol_);
        });
        const auto [x, y] = sides(pts.back());
        v_.evidence.push_back({name, x - y});
    }

    void evidence(std::string name, Matrix value) { v_.evidence.push_back({std::move(name), std::move(value)}); }

    const Tolerances& tol() const { return tol_; }

private:
    void add(const std::string& name, std::string predicate, const OrderResult& r) {
        target_->push_back({name, std::move(predicate), r.holds, r.witness, {}});
    }

    TheoremVerdict& v_;
    const Tolerances& tol_;
    std::vector<Hypothesis>* target_ = &v_.hypotheses;
};

std::vector<double> window_schedule(const std::vector<double>& sweep) {
    validate_schedule(sweep);
    const std::size_t k = std::min(kStabilityWindow, sweep.size());
    return {sweep.end() - static_cast<std::ptrdiff_t>(k), sweep.end()};
}

// One regularized single splitting with the limit-side products.
struct SinglePoint {
    RegularizedSystem sys;
    SingleSplitting s;
    Matrix Binv_N;  // B_λ⁻¹N_λ
    Matrix N_Binv;  // N_λB_λ⁻¹
    Matrix iter;    // M_λ⁻¹N_λ
    Matrix second;  // N_λM_λ⁻¹
};

std::vector<SinglePoint> single_points(const Matrix& A, const SingleFamily& reg, const std::vector<double>& sweep,
                                       const Tolerances& tol) {
    std::vector<SinglePoint> pts;
    for (double lambda : window_schedule(sweep)) {
        RegularizedSystem sys(A, lambda, tol);
        SingleSplitting s = reg(sys);
        if (s.A().rows() != sys.n() || s.A().cols() != sys.n())
            throw DimensionError("regularized splitting must split the " + sys.B().shape_string() + " matrix B");
        Matrix Binv_N = solve_normal_extended(A, lambda, s.V());
        Matrix N_Binv = solve_normal_extended(A, lambda, s.V().transpose()).transpose();
        Matrix iter = s.iteration_matrix();
        Matrix second = s.second_type_matrix();
        pts.push_back({std::move(sys), std::move(s), std::move(Binv_N), std::move(N_Binv), std::move(iter),
                       std::move(second)});
    }
    return pts;
}

struct DoublePoint {
    RegularizedSystem sys;
    DoubleSplitting d;
    Matrix Pinv;
};

std::vector<DoublePoint> double_points(const Matrix& A, const DoubleFamily& reg, const std::vector<double>& sweep,
                                       const Tolerances& tol) {
    std::vector<DoublePoint> pts;
    for (double lambda : window_schedule(sweep)) {
        RegularizedSystem sys(A, lambda, tol);
        DoubleSplitting d = reg(sys);
        if (d.A().rows() != sys.n() || d.A().cols() != sys.n())
            throw DimensionError("regularized splitting must split the " + sys.B().shape_string() + " matrix B");
        Matrix Pinv = d.p_inverse_strict();
        pts.push_back({std::move(sys), std::move(d), std::move(Pinv)});
    }
    return pts;
}

std::string shape_of(const Matrix& a) { return a.shape_string(); }

bool square_singular(const Matrix& A, const Tolerances& tol) {
    return A.square() && numerical_rank(A, tol) < A.rows();
}

double rho_hat(const DoubleSplitting& d, const Tolerances& tol) {
    d.p_inverse_strict();
    return build_double_iteration_matrix(d, Variant::HatW, tol).rho;
}

double rho_tilde(const DoubleSplitting& d, const Tolerances& tol) {
    return build_double_iteration_matrix(d, Variant::TildeW, tol).rho;
}

// Matrices of a type II splitting: RP⁻¹, −SP⁻¹ and the block radius.
struct TypeTwoView {
    Matrix RPinv, mSPinv, Pinv;
    double rho = 0.0;
};

TypeTwoView type_two_view(const DoubleSplitting& d, const Tolerances& tol) {
    if (!d.type2_admissible()) d.type2();  // throws with the reason
    TypeTwoView t;
    t.Pinv = d.p_inverse();
    t.RPinv = d.R() * t.Pinv;
    t.mSPinv = -(d.S() * t.Pinv);
    t.rho = rho_tilde(d, tol);
    return t;
}

struct TypeOneView {
    Matrix PinvR, mPinvS, Pinv;
    double rho = 0.0;
};

TypeOneView type_one_view(const DoubleSplitting& d, const Tolerances& tol) {
    TypeOneView t;
    t.Pinv = d.p_inverse_strict();
    t.PinvR = t.Pinv * d.R();
    t.mPinvS = -(t.Pinv * d.S());
    t.rho = rho_hat(d, tol);
    return t;
}

void record_type_two(Recorder& rec, const TypeTwoView& t, const std::string& tag) {
    const std::string i = tag.empty() ? "" : "_" + tag;
    rec.geq("type2_R" + i, "R" + tag + "P" + tag + "^-1 >= 0", t.RPinv, zeros_like(t.RPinv));
    rec.geq("type2_S" + i, "-S" + tag + "P" + tag + "^-1 >= 0", t.mSPinv, zeros_like(t.mSPinv));
}

void record_type_one(Recorder& rec, const TypeOneView& t, const std::string& tag) {
    const std::string i = tag.empty() ? "" : "_" + tag;
    rec.geq("type1_R" + i, "P" + tag + "^-1 R" + tag + " >= 0", t.PinvR, zeros_like(t.PinvR));
    rec.geq("type1_S" + i, "-P" + tag + "^-1 S" + tag + " >= 0", t.mPinvS, zeros_like(t.mPinvS));
}

void require_shared_matrix(const DoubleSplitting& d1, const DoubleSplitting& d2, TheoremId id) {
    require_same_shape(d1.A(), d2.A(), to_string(id));
    if (!nearly_equal(d1.A(), d2.A(), d1.tolerances()))
        throw ConsistencyError(std::string(to_string(id)) + " compares two splittings of one matrix; got different matrices");
}

}  // namespace

const char* to_string(TheoremId id) {
    for (const auto& n : kNames)
        if (n.id == id) return n.name;
    return "?";
}

TheoremId parse_theorem(const std::string& name) {
    for (const auto& n : kNames)
        if (name == n.name) return n.id;
    throw UsageError("unknown theorem id '" + name + "'");
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = [] {
        std::vector<TheoremId> v;
        for (const auto& n : kNames) v.push_back(n.id);
        return v;
    }();
    return ids;
}

bool TheoremVerdict::hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

const Matrix* TheoremVerdict::find_evidence(const std::string& name) const {
    for (const auto& e : evidence)
        if (e.name == name) return &e.value;
    return nullptr;
}

TheoremVerdict check_single_convergence(const Matrix& A, const SingleFamily& reg, const std::vector<double>& sweep,
                                        SplittingType type, const Tolerances& tol) {
    TheoremVerdict v;
    v.id = TheoremId::SingleConv;
    v.shape = shape_of(A);
    Recorder rec(v, tol);
    const auto pts = single_points(A, reg, sweep, tol);
    using F = std::function<OrderResult(const SinglePoint&)>;
    if (type == SplittingType::First) {
        rec.window<SinglePoint>("reg_weak1", "M_lambda^-1 N_lambda >= 0", pts,
                                F([&](const SinglePoint& p) { return compare_geq(p.iter, zeros_like(p.iter), tol); }));
        rec.window_geq<SinglePoint>("lim_Binv_N", "lim B_lambda^-1 N_lambda >= 0", pts, [](const SinglePoint& p) {
            return std::pair{p.Binv_N, zeros_like(p.Binv_N)};
        });
    } else {
        rec.window<SinglePoint>("reg_weak2", "N_lambda M_lambda^-1 >= 0", pts, F([&](const SinglePoint& p) {
                                    return compare_geq(p.second, zeros_like(p.second), tol);
                                }));
        rec.window_geq<SinglePoint>("lim_N_Binv", "lim N_lambda B_lambda^-1 >= 0", pts, [](const SinglePoint& p) {
            return std::pair{p.N_Binv, zeros_like(p.N_Binv)};
        });
    }
    const SinglePoint& lo = pts.back();
    rec.evidence("B", lo.sys.B());
    v.lambda_used = lo.sys.lambda();
    v.rho_left = rho(lo.iter, tol);
    v.rho_right = 1.0;
    v.conclusion_holds = below_one(v.rho_left);
    return v;
}

TheoremVerdict check_comparison_single(TheoremId id, const SingleSplitting& s, const SingleFamily& reg,
                                       const std::vector<double>& sweep, const Tolerances& tol) {
    switch (id) {
        case TheoremId::CmpFirst:
        case TheoremId::CmpSecond:
        case TheoremId::CmpMixA:
        case TheoremId::CmpMixB:
        case TheoremId::CmpSameI:
        case TheoremId::CmpSameIAlt:
        case TheoremId::CmpIToII:
            break;
        default:
            throw UsageError(std::string(to_string(id)) + " is not a single-splitting comparison");
    }
    TheoremVerdict v;
    v.id = id;
    const Matrix& A = s.A();
    v.shape = shape_of(A);
    Recorder rec(v, tol);
    const auto pts = single_points(A, reg, sweep, tol);
    const SinglePoint& lo = pts.back();
    const Matrix Ap = pseudoinverse(A, tol);
    const Matrix& Mp = s.u_inverse();
    const Matrix& N = s.V();
    const Matrix MpN = Mp * N, NMp = N * Mp;
    const bool square = A.square();
    using F = std::function<OrderResult(const SinglePoint&)>;
    using Sides = std::function<std::pair<Matrix, Matrix>(const SinglePoint&)>;

    auto singular_square = [&] { rec.flag("A_singular_square", "A square and singular", square_singular(A, tol)); };
    auto proper = [&] { rec.flag("proper", "R(M) = R(A), N(M) = N(A)", s.flags().proper); };
    auto weak1 = [&] { rec.geq("weak1", "M^+ N >= 0", MpN, zeros_like(MpN)); };
    auto weak2 = [&] { rec.geq("weak2", "N M^+ >= 0", NMp, zeros_like(NMp)); };
    auto reg_weak1 = [&] {
        rec.window<SinglePoint>("reg_weak1", "M_lambda^-1 N_lambda >= 0", pts,
                                F([&](const SinglePoint& p) { return compare_geq(p.iter, zeros_like(p.iter), tol); }));
    };
    auto reg_weak2 = [&] {
        rec.window<SinglePoint>("reg_weak2", "N_lambda M_lambda^-1 >= 0", pts, F([&](const SinglePoint& p) {
                                    return compare_geq(p.second, zeros_like(p.second), tol);
                                }));
    };
    auto lim_binv_n = [&] {
        rec.window_geq<SinglePoint>("lim_Binv_N", "lim B_lambda^-1 N_lambda >= 0", pts, Sides([](const SinglePoint& p) {
                                        return std::pair{p.Binv_N, zeros_like(p.Binv_N)};
                                    }));
    };
    auto lim_n_binv = [&] {
        rec.window_geq<SinglePoint>("lim_N_Binv", "lim N_lambda B_lambda^-1 >= 0", pts, Sides([](const SinglePoint& p) {
                                        return std::pair{p.N_Binv, zeros_like(p.N_Binv)};
                                    }));
    };
    // Products that need A square are recorded false with a note otherwise.
    auto square_only = [&](const std::string& name, const std::string& predicate, const Sides& sides) {
        if (!square) {
            rec.flag(name, predicate, false, "undefined for rectangular A");
            return;
        }
        rec.window_geq<SinglePoint>(name, predicate, pts, sides);
    };

    switch (id) {
        case TheoremId::CmpFirst: {
            const Matrix ApN = Ap * N;
            proper();
            weak1();
            reg_weak1();
            rec.window_geq<SinglePoint>("dominance", "A^+ N >= lim B_lambda^-1 N_lambda", pts,
                                        Sides([&](const SinglePoint& p) { return std::pair{ApN, p.Binv_N}; }));
            lim_binv_n();
            break;
        }
        case TheoremId::CmpSecond: {
            const Matrix NAp = N * Ap;
            singular_square();
            proper();
            weak2();
            reg_weak2();
            square_only("dominance", "N A^+ >= lim N_lambda B_lambda^-1",
                        Sides([&](const SinglePoint& p) { return std::pair{NAp, p.N_Binv}; }));
            lim_n_binv();
            break;
        }
        case TheoremId::CmpMixA: {
            const Matrix NAp = N * Ap;
            singular_square();
            rec.geq("semi_monotone", "A^+ >= 0", Ap, zeros_like(Ap));
            proper();
            weak2();
            rec.geq("NAp_nonneg", "N A^+ >= 0", NAp, zeros_like(NAp));
            reg_weak1();
            lim_binv_n();
            rec.window_geq<SinglePoint>("mixed_bound", "lim M_lambda^-1 A^T >= M^+", pts, Sides([&](const SinglePoint& p) {
                                            // M_λ⁻¹Aᵀ = (I − M_λ⁻¹N_λ)·B_λ⁻¹Aᵀ keeps the extended-precision map.
                                            const Matrix I = Matrix::identity(p.iter.rows());
                                            return std::pair{Matrix((I - p.iter) * p.sys.rhs_map()), Mp};
                                        }));
            break;
        }
        case TheoremId::CmpMixB: {
            const Matrix NAp = N * Ap;
            const Matrix bound = Ap * N * Mp;
            proper();
            weak2();
            rec.geq("NAp_nonneg", "N A^+ >= 0", NAp, zeros_like(NAp));
            reg_weak1();
            lim_binv_n();
            rec.window_geq<SinglePoint>("converse_bound", "A^+ N M^+ >= lim M_lambda^-1 N_lambda A^+", pts,
                                        Sides([&](const SinglePoint& p) { return std::pair{bound, p.iter * Ap}; }));
            break;
        }
        case TheoremId::CmpSameI:
        case TheoremId::CmpSameIAlt: {
            const Matrix ApN = Ap * N;
            const bool as_stated = id == TheoremId::CmpSameI;
            singular_square();
            proper();
            weak1();
            rec.geq("ApN_nonneg", "A^+ N >= 0", ApN, zeros_like(ApN));
            reg_weak1();
            lim_binv_n();
            if (square) {
                const Matrix bound = as_stated ? Matrix(Ap * Mp * N) : Matrix(Ap * N * Mp);
                square_only("same_type_bound",
                            as_stated ? "A^+ M^+ N >= lim M_lambda^-1 N_lambda A^+" : "A^+ N M^+ >= lim M_lambda^-1 N_lambda A^+",
                            Sides([&](const SinglePoint& p) { return std::pair{bound, p.iter * Ap}; }));
            } else {
                rec.flag("same_type_bound", "A^+ M^+ N >= lim M_lambda^-1 N_lambda A^+", false,
                         "undefined for rectangular A");
            }
            break;
        }
        case TheoremId::CmpIToII: {
            const Matrix ApN = Ap * N;
            proper();
            weak1();
            rec.geq("ApN_nonneg", "A^+ N >= 0", ApN, zeros_like(ApN));
            reg_weak2();
            lim_n_binv();
            rec.window_geq<SinglePoint>("cross_bound", "M^+ N >= lim N_lambda M_lambda^-1", pts,
                                        Sides([&](const SinglePoint& p) { return std::pair{MpN, p.second}; }));
            break;
        }
        default:
            break;
    }
    rec.evidence("B", lo.sys.B());
    rec.evidence("Binv_N", lo.Binv_N);
    v.lambda_used = lo.sys.lambda();
    v.rho_left = rho(lo.iter, tol);
    v.rho_right = rho(MpN, tol);
    v.conclusion_holds = le_and_below_one(v.rho_left, v.rho_right);
    return v;
}

TheoremVerdict check_power_dominance(const Matrix& M1, const Matrix& M2, const Matrix& A, unsigned j, double alpha,
                                     const Tolerances& tol) {
    require_square(A, "power dominance");
    require_same_shape(A, M1, "power dominance");
    require_same_shape(A, M2, "power dominance");
    if (j == 0) throw ParameterError("power index must be at least 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
    TheoremVerdict v;
    v.id = TheoremId::PowerDominance;
    v.shape = shape_of(A);
    Recorder rec(v, tol);
    const Matrix Ainv = inverse(A, tol);
    const Matrix M1inv = inverse(M1, tol), M2inv = inverse(M2, tol);
    const Matrix N1 = M1 - A, N2 = M2 - A;
    const Matrix T1 = M1 * Ainv, T2 = M2 * Ainv;
    const Matrix H1 = N1 * M1inv, H2 = N2 * M2inv;
    Matrix P1 = T1, P2 = T2;
    for (unsigned k = 1; k < j; ++k) {
        P1 = P1 * T1;
        P2 = P2 * T2;
    }
    rec.geq("weak2_1", "N1 M1^-1 >= 0", H1, zeros_like(H1));
    rec.geq("weak2_2", "N2 M2^-1 >= 0", H2, zeros_like(H2));
    rec.geq("M1Ainv_nonneg", "M1 A^-1 >= 0", T1, zeros_like(T1));
    rec.geq("M2Ainv_nonneg", "M2 A^-1 >= 0", T2, zeros_like(T2));
    rec.geq("power_bound", "alpha (M2 A^-1)^j >= (M1 A^-1)^j", alpha * P2, P1);
    v.rho_left = rho(H1, tol);
    v.rho_right = rho(H2, tol);
    v.conclusion_holds = alpha < 1.0 ? v.rho_left + kConclusionSlack < v.rho_right
                                     : v.rho_left <= v.rho_right + kConclusionSlack;
    return v;
}

TheoremVerdict check_double_equivalences(const DoubleSplitting& d, EquivalenceForm form, const Tolerances& tol) {
    const Matrix& A = d.A();
    require_square(A, "equivalence check");
    TheoremVerdict v;
    v.shape = shape_of(A);
    Recorder rec(v, tol);
    const Matrix Ainv = inverse(A, tol);
    const std::size_t n = A.rows();
    const Matrix I = Matrix::identity(n), Z = Matrix::zeros(n, n);
    const Matrix RmS = d.R() - d.S();
    if (form == EquivalenceForm::TypeI) {
        v.id = TheoremId::EqTypeI;
        rec.flag("A_nonsingular", "A nonsingular", true);
        const TypeOneView t = type_one_view(d, tol);
        record_type_one(rec, t, "");
        const Matrix AinvP = Ainv * d.P();
        rec.into_conditions(true);
        rec.flag("(i)", "rho(hatW) < 1", below_one(t.rho));
        const double r2 = rho(t.Pinv * RmS, tol);
        rec.flag("(ii)", "rho(P^-1 (R - S)) < 1", below_one(r2));
        rec.geq("(iii)", "A^-1 P >= 0", AinvP, Z);
        rec.geq("(iv)", "A^-1 P >= I", AinvP, I);
        v.rho_left = t.rho;
        v.rho_right = r2;
    } else {
        v.id = form == EquivalenceForm::TypeII ? TheoremId::EqTypeII : TheoremId::EqTypeIIAlt;
        rec.flag("A_symmetric", "A = A^T", is_symmetric(A, tol));
        rec.flag("A_nonsingular", "A nonsingular", true);
        const TypeTwoView t = type_two_view(d, tol);
        record_type_two(rec, t, "");
        const Matrix PAinv = d.P() * Ainv, RSAinv = RmS * Ainv;
        rec.into_conditions(true);
        rec.flag("(i)", "rho(tildeW) < 1", below_one(t.rho));
        rec.geq("(ii)", "P A^-1 >= 0", PAinv, Z);
        rec.geq("(iii)", "P A^-1 >= I", PAinv, I);
        rec.geq("(iv)", "(R - S) A^-1 >= 0", RSAinv, Z);
        rec.geq("(v)", "(R - S) A^-1 >= -I", RSAinv, -I);
        const bool as_stated = form == EquivalenceForm::TypeII;
        const Matrix inner = as_stated ? Matrix(I - RmS.transpose() * t.Pinv.transpose())
                                     : Matrix(I - t.Pinv.transpose() * RmS.transpose());
        const std::string lhs = as_stated ? "(I - (R-S)^T P^-T)^-1" : "(I - P^-T (R-S)^T)^-1";
        if (is_nonsingular(inner, tol)) {
            const Matrix res = inverse(inner, tol);
            rec.geq("(vi)", lhs + " >= 0", res, Z);
            rec.geq("(vii)", lhs + " >= I", res, I);
        } else {
            rec.flag("(vi)", lhs + " >= 0", false, "inner matrix is singular");
            rec.flag("(vii)", lhs + " >= I", false, "inner matrix is singular");
        }
        v.rho_left = t.rho;
        v.rho_right = rho(RmS * t.Pinv, tol);
    }
    rec.into_conditions(false);
    const bool first = v.conditions.front().holds;
    v.conclusion_holds = std::all_of(v.conditions.begin(), v.conditions.end(),
                                     [&](const Hypothesis& c) { return c.holds == first; });
    return v;
}

TheoremVerdict check_double_comparison(TheoremId id, const DoubleSplitting& d1, const DoubleSplitting& d2,
                                       const Tolerances& tol) {
    TheoremVerdict v;
    v.id = id;
    v.shape = shape_of(d1.A());
    Recorder rec(v, tol);
    auto symmetric = [&](const std::string& name, const Matrix& a) { rec.flag(name, "A = A^T", is_symmetric(a, tol)); };
    auto convergent = [&](const std::string& name, const std::string& what, double r) {
        rec.flag(name, what + " < 1", below_one(r));
    };

    switch (id) {
        case TheoremId::Dw2Mono:
        case TheoremId::Dw2Scaled:
        case TheoremId::Dw2Rate:
        case TheoremId::Dw2Psd: {
            require_shared_matrix(d1, d2, id);
            const Matrix& A = d1.A();
            const TypeTwoView t1 = type_two_view(d1, tol), t2 = type_two_view(d2, tol);
            const Matrix Ainv = inverse(A, tol);
            symmetric("A_symmetric", A);
            if (id == TheoremId::Dw2Mono) rec.geq("monotone", "A^-1 >= 0", Ainv, zeros_like(Ainv));
            record_type_two(rec, t1, "1");
            record_type_two(rec, t2, "2");
            if (id != TheoremId::Dw2Scaled) {
                convergent("convergent_1", "rho(tildeW1)", t1.rho);
                convergent("convergent_2", "rho(tildeW2)", t2.rho);
            }
            if (id == TheoremId::Dw2Mono) {
                rec.geq("P_order", "P2 >= P1", d2.P(), d1.P());
                rec.geq("S_order", "S1 >= S2", d1.S(), d2.S());
            } else if (id == TheoremId::Dw2Scaled) {
                const Matrix P1A = d1.P() * Ainv, P2A = d2.P() * Ainv, S1A = d1.S() * Ainv, S2A = d2.S() * Ainv;
                rec.geq("P_scaled_order", "P2 A^-1 >= P1 A^-1", P2A, P1A);
                rec.geq("P_scaled_nonneg", "P1 A^-1 >= 0", P1A, zeros_like(P1A));
                rec.geq("S_scaled_order", "S1 A^-1 >= S2 A^-1", S1A, S2A);
                rec.geq("S_scaled_nonpos", "0 >= S1 A^-1", zeros_like(S1A), S1A);
                rec.evidence("P1Ainv", P1A);
                rec.evidence("P2Ainv", P2A);
                rec.evidence("S1Ainv", S1A);
                rec.evidence("S2Ainv", S2A);
            } else if (id == TheoremId::Dw2Rate) {
                rec.geq("rate_order", "R1 P1^-1 >= R2 P2^-1", t1.RPinv, t2.RPinv);
                rec.geq("scale_order", "A P1^-1 >= A P2^-1", A * t1.Pinv, A * t2.Pinv);
            } else {
                const Matrix I = Matrix::identity(A.rows());
                const OrderResult a1 = compare_geq(d2.P() * t1.Pinv, I, tol);
                const OrderResult a2 = compare_geq(d1.S() * t1.Pinv, d2.S() * t1.Pinv, tol);
                const OrderResult b1 = compare_geq(I, d1.P() * t2.Pinv, tol);
                const OrderResult b2 = compare_geq(d1.S() * t2.Pinv, d2.S() * t2.Pinv, tol);
                const bool ci = a1.holds && a2.holds, cii = b1.holds && b2.holds;
                Hypothesis h{"either_condition",
                             "(i) P2 P1^-1 >= I and S1 P1^-1 >= S2 P1^-1, or (ii) P1 P2^-1 <= I and S1 P2^-1 >= S2 P2^-1",
                             ci || cii, std::nullopt, {}};
                if (ci) h.note = "(i) holds";
                if (cii) h.note += h.note.empty() ? "(ii) holds" : ", (ii) holds";
                if (!h.holds) h.witness = !a1.holds ? a1.witness : a2.witness;
                v.hypotheses.push_back(std::move(h));
                rec.evidence("P2P1inv", d2.P() * t1.Pinv);
                rec.evidence("P1P2inv", d1.P() * t2.Pinv);
            }
            v.rho_left = t1.rho;
            v.rho_right = t2.rho;
            break;
        }
        case TheoremId::Dw2TwoMat: {
            const TypeTwoView t1 = type_two_view(d1, tol), t2 = type_two_view(d2, tol);
            symmetric("A1_symmetric", d1.A());
            symmetric("A2_symmetric", d2.A());
            record_type_two(rec, t1, "1");
            record_type_two(rec, t2, "2");
            convergent("convergent_1", "rho(tildeW1)", t1.rho);
            convergent("convergent_2", "rho(tildeW2)", t2.rho);
            rec.geq("rate_order", "R1 P1^-1 >= R2 P2^-1", t1.RPinv, t2.RPinv);
            rec.geq("scale_order", "A1 P1^-1 >= A2 P2^-1", d1.A() * t1.Pinv, d2.A() * t2.Pinv);
            v.rho_left = t1.rho;
            v.rho_right = t2.rho;
            break;
        }
        case TheoremId::DwIIvsI: {
            const TypeTwoView t1 = type_two_view(d1, tol);
            const TypeOneView t2 = type_one_view(d2, tol);
            symmetric("A1_symmetric", d1.A());
            symmetric("A2_symmetric", d2.A());
            rec.flag("A2_nonsingular", "A2 nonsingular", is_nonsingular(d2.A(), tol));
            record_type_two(rec, t1, "1");
            convergent("convergent_1", "rho(tildeW1)", t1.rho);
            record_type_one(rec, t2, "2");
            convergent("convergent_2", "rho(hatW2)", t2.rho);
            rec.geq("rate_order", "(R1 P1^-1)^T >= P2^-1 R2", t1.RPinv.transpose(), t2.PinvR);
            rec.geq("scale_order", "P1^-T A1 >= P2^-1 A2", t1.Pinv.transpose() * d1.A(), t2.Pinv * d2.A());
            v.rho_left = t1.rho;
            v.rho_right = t2.rho;
            break;
        }
        case TheoremId::DwIvsII: {
            const TypeOneView t1 = type_one_view(d1, tol);
            const TypeTwoView t2 = type_two_view(d2, tol);
            symmetric("A1_symmetric", d1.A());
            symmetric("A2_symmetric", d2.A());
            rec.flag("A1_nonsingular", "A1 nonsingular", is_nonsingular(d1.A(), tol));
            record_type_one(rec, t1, "1");
            convergent("convergent_1", "rho(hatW1)", t1.rho);
            record_type_two(rec, t2, "2");
            convergent("convergent_2", "rho(tildeW2)", t2.rho);
            rec.geq("rate_order", "P1^-1 R1 >= (R2 P2^-1)^T", t1.PinvR, t2.RPinv.transpose());
            rec.geq("scale_order", "P1^-1 A1 >= P2^-T A2", t1.Pinv * d1.A(), t2.Pinv.transpose() * d2.A());
            v.rho_left = t1.rho;
            v.rho_right = t2.rho;
            break;
        }
        default:
            throw UsageError(std::string(to_string(id)) + " is not a double-splitting comparison");
    }
    v.conclusion_holds = le_and_below_one(v.rho_left, v.rho_right);
    return v;
}

TheoremVerdict check_regularized_double(TheoremId id, const DoubleSplitting& d, const DoubleFamily& reg,
                                        const std::vector<double>& sweep, const Tolerances& tol,
                                        EquivalenceForm form) {
    return check_regularized_double(id, d.A(), d, reg, sweep, tol, form);
}

TheoremVerdict check_regularized_double(TheoremId id, const Matrix& A, const DoubleSplitting& d,
                                        const DoubleFamily& reg, const std::vector<double>& sweep,
                                        const Tolerances& tol, EquivalenceForm form) {
    if (id != TheoremId::RdConv && id != TheoremId::RdCmpI && id != TheoremId::RdCmpII)
        throw UsageError(std::string(to_string(id)) + " is not a regularized double-splitting theorem");
    require_same_shape(A, d.A(), "regularized double splitting");
    TheoremVerdict v;
    v.id = id;
    v.shape = shape_of(A);
    Recorder rec(v, tol);
    if (id != TheoremId::RdConv) rec.flag("parts_sum", "P - R + S = A", nearly_equal(d.A(), A, tol));
    const auto pts = double_points(A, reg, sweep, tol);
    const DoublePoint& lo = pts.back();
    v.lambda_used = lo.sys.lambda();
    rec.evidence("B", lo.sys.B());
    using F = std::function<OrderResult(const DoublePoint&)>;
    using Sides = std::function<std::pair<Matrix, Matrix>(const DoublePoint&)>;
    const auto zero = [](const Matrix& x) { return zeros_like(x); };

    auto reg_type_one = [&] {
        rec.window<DoublePoint>("reg_type1_R", "P_lambda^-1 R_lambda >= 0", pts, F([&](const DoublePoint& p) {
                                    const Matrix x = p.Pinv * p.d.R();
                                    return compare_geq(x, zero(x), tol);
                                }));
        rec.window<DoublePoint>("reg_type1_S", "-P_lambda^-1 S_lambda >= 0", pts, F([&](const DoublePoint& p) {
                                    const Matrix x = -(p.Pinv * p.d.S());
                                    return compare_geq(x, zero(x), tol);
                                }));
    };
    auto reg_type_two = [&] {
        rec.window<DoublePoint>("reg_type2_R", "R_lambda P_lambda^-1 >= 0", pts, F([&](const DoublePoint& p) {
                                    const Matrix x = p.d.R() * p.Pinv;
                                    return compare_geq(x, zero(x), tol);
                                }));
        rec.window<DoublePoint>("reg_type2_S", "-S_lambda P_lambda^-1 >= 0", pts, F([&](const DoublePoint& p) {
                                    const Matrix x = -(p.d.S() * p.Pinv);
                                    return compare_geq(x, zero(x), tol);
                                }));
    };
    auto hat_rho = [&](const DoublePoint& p) { return build_double_iteration_matrix(p.d, Variant::HatW, tol).rho; };
    auto tilde_rho = [&](const DoublePoint& p) { return build_double_iteration_matrix(p.d, Variant::TildeW, tol).rho; };

    if (id == TheoremId::RdConv) {
        if (form == EquivalenceForm::TypeI) {
            reg_type_one();
            rec.window_geq<DoublePoint>("lim_Binv_P", "lim B_lambda^-1 P_lambda >= 0", pts, Sides([&](const DoublePoint& p) {
                                            Matrix x = solve_normal_extended(A, p.sys.lambda(), p.d.P());
                                            Matrix z = zero(x);
                                            return std::pair{std::move(x), std::move(z)};
                                        }));
            v.rho_left = hat_rho(lo);
        } else {
            reg_type_two();
            rec.window_geq<DoublePoint>("lim_P_Binv", "lim P_lambda B_lambda^-1 >= 0", pts, Sides([&](const DoublePoint& p) {
                                            Matrix x = solve_normal_extended(A, p.sys.lambda(), p.d.P().transpose()).transpose();
                                            Matrix z = zero(x);
                                            return std::pair{std::move(x), std::move(z)};
                                        }));
            v.rho_left = tilde_rho(lo);
        }
        v.rho_right = 1.0;
        v.conclusion_holds = below_one(v.rho_left);
        return v;
    }

    // Original side: W = [[P†R, −P†S], [I, 0]] with P† in place of P⁻¹.
    const Matrix& Pp = d.p_inverse();
    const Matrix PpR = Pp * d.R(), mPpS = -(Pp * d.S());
    const double rho_w = rho(assemble_block(PpR, -(Pp * d.S())), tol);
    const Matrix Ap = pseudoinverse(A, tol);

    if (id == TheoremId::RdCmpI) {
        rec.flag("double_proper", "R(P) = R(A), N(P) = N(A)", projectors_match(A, d.P(), tol));
        rec.geq("type1_R", "P^+ R >= 0", PpR, zero(PpR));
        rec.geq("type1_S", "-P^+ S >= 0", mPpS, zero(mPpS));
        const Matrix ApP = Ap * d.P();
        rec.geq("ApP_nonneg", "A^+ P >= 0", ApP, zero(ApP));
        reg_type_one();
        rec.window_geq<DoublePoint>("Binv_P", "B_lambda^-1 P_lambda >= 0", pts, Sides([&](const DoublePoint& p) {
                                        Matrix x = solve_normal_extended(A, p.sys.lambda(), p.d.P());
                                        Matrix z = zero(x);
                                        return std::pair{std::move(x), std::move(z)};
                                    }));
        // (i) is a limit condition, (ii) is not.
        TheoremVerdict scratch;
        Recorder sub(scratch, tol);
        sub.window_geq<DoublePoint>("right_diff", "P^+ R >= lim P_lambda^-1 R_lambda", pts,
                                    Sides([&](const DoublePoint& p) { return std::pair{PpR, p.Pinv * p.d.R()}; }));
        sub.window_geq<DoublePoint>("left_diff", "lim P_lambda^-1 S_lambda >= P^+ S", pts,
                                    Sides([&](const DoublePoint& p) { return std::pair{p.Pinv * p.d.S(), Pp * d.S()}; }));
        const Matrix I = Matrix::identity(PpR.rows());
        sub.geq("second_condition", "P^+ (R - S) >= I", Pp * (d.R() - d.S()), I);
        const bool ci = scratch.hypotheses[0].holds && scratch.hypotheses[1].holds;
        const bool cii = scratch.hypotheses[2].holds;
        Hypothesis h{"either_condition",
                     "(i) P^+ R >= lim P_lambda^-1 R_lambda and lim P_lambda^-1 S_lambda >= P^+ S, or (ii) P^+ (R - S) >= I",
                     ci || cii, std::nullopt, {}};
        if (ci) h.note = "(i) holds";
        if (cii) h.note += h.note.empty() ? "(ii) holds" : ", (ii) holds";
        if (!h.holds)
            h.witness = !scratch.hypotheses[0].holds ? scratch.hypotheses[0].witness : scratch.hypotheses[1].witness;
        v.hypotheses.push_back(std::move(h));
        for (auto& e : scratch.evidence) v.evidence.push_back(std::move(e));
        v.rho_left = hat_rho(lo);
    } else {
        rec.flag("A_singular_square", "A square and singular", square_singular(A, tol));
        rec.flag("A_symmetric", "A = A^T", A.square() && is_symmetric(A, tol));
        rec.flag("double_proper", "R(P) = R(A), N(P) = N(A)", projectors_match(A, d.P(), tol));
        rec.geq("type1_R", "P^+ R >= 0", PpR, zero(PpR));
        rec.geq("type1_S", "-P^+ S >= 0", mPpS, zero(mPpS));
        rec.flag("convergent", "rho(W) < 1", below_one(rho_w));
        reg_type_two();
        rec.window<DoublePoint>("reg_convergent", "rho(tildeW_lambda) < 1", pts,
                                F([&](const DoublePoint& p) { return flag_result(below_one(tilde_rho(p))); }));
        rec.window_geq<DoublePoint>("rate_bound", "lim (R_lambda P_lambda^-1)^T >= P^+ R", pts, Sides([&](const DoublePoint& p) {
                                        return std::pair{Matrix((p.d.R() * p.Pinv).transpose()), PpR};
                                    }));
        const Matrix PpA = Pp * A;
        rec.window_geq<DoublePoint>("scale_bound", "lim P_lambda^-T B_lambda^T >= P^+ A", pts, Sides([&](const DoublePoint& p) {
                                        return std::pair{Matrix(p.Pinv.transpose() * p.sys.B().transpose()), PpA};
                                    }));
        rec.gt("positive_R", "P^+ R > 0", PpR, zero(PpR));
        rec.gt("positive_S", "-P^+ S > 0", mPpS, zero(mPpS));
        v.rho_left = tilde_rho(lo);
    }
    v.rho_right = rho_w;
    v.conclusion_holds = le_and_below_one(v.rho_left, v.rho_right);
    return v;
}

BlockEmbedding block_embed(const DoubleSplitting& d, const Tolerances& tol) {
    const Matrix& A = d.A();
    require_square(A, "block embedding");
    const Matrix Ainv = inverse(A, tol);
    const Matrix Pinv = d.p_inverse_strict();
    const std::size_t n = A.rows();
    const Matrix I = Matrix::identity(n), Z = Matrix::zeros(n, n);
    BlockEmbedding b;
    b.Abb = block2x2(A, -I, Z, I);
    b.M = block2x2(d.P(), Z, -d.S(), I);
    b.N = block2x2(d.R() - d.S(), I, -d.S(), Z);
    b.split_residual = max_abs(b.Abb - (b.M - b.N));
    b.inverse_residual = max_abs(inverse(b.Abb, tol) - block2x2(Ainv, Ainv, Z, I));
    b.W_direct = assemble_block((d.R() * Pinv).transpose(), -((d.S() * Pinv).transpose()));
    b.W_embedded = (b.N * inverse(b.M, tol)).transpose();
    b.identity_residual = max_abs(b.W_direct - b.W_embedded);
    b.rho_direct = rho(b.W_direct, tol);
    b.rho_embedded = rho(b.W_embedded.transpose(), tol);
    return b;
}

std::pair<BlockEmbedding, BlockEmbedding> block_embed(const DoubleSplitting& d1, const DoubleSplitting& d2,
                                                      const Tolerances& tol) {
    return {block_embed(d1, tol), block_embed(d2, tol)};
}

}  // namespace splitlab
