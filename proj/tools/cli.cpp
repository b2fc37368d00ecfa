#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report_json.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/fixtures.hpp"
#include "splitlab/io.hpp"
#include "splitlab/problems.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/reproduce.hpp"
#include "splitlab/solve.hpp"
#include "splitlab/solvers.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/svd.hpp"
#include "splitlab/theorem_lab.hpp"

#ifndef SPLITLAB_VERSION
#define SPLITLAB_VERSION "0.0.0"
#endif

namespace splitlab::cli {

namespace {

namespace fs = std::filesystem;
using report::Json;
using report::to_json;

struct CommonOptions {
    std::string out_dir;
    std::optional<double> tol_nonneg, tol_spectral, tol_rank, tol_equal;

    Tolerances tolerances() const {
        Tolerances t = Tolerances::from_environment();
        if (tol_nonneg) t.nonneg_eps = *tol_nonneg;
        if (tol_spectral) t.spectral_eps = *tol_spectral;
        if (tol_rank) t.rank_eps = *tol_rank;
        if (tol_equal) t.equal_eps = *tol_equal;
        t.validate();
        return t;
    }
};

// Data-source flags shared by analyze, solve, compare and sweep.
struct InputOptions {
    std::string bundle, bundle2, reg_bundle, matrix, rhs, x0, example, problem;
    std::size_t n = 32;
    double width = 0.1;
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::optional<double> lambda;
    std::vector<double> sweep;
    std::string strategy;  // empty when not given

    ProblemSpec problem_spec() const {
        ProblemSpec p;
        p.kind = parse_problem_kind(problem);
        p.n = n;
        p.kernel_width = width;
        p.seed = seed;
        p.noise_level = noise;
        p.validate();
        return p;
    }
};

// Collects reports and input/output paths; writes manifest.json last.
class Session {
public:
    Session(std::string command, const CommonOptions& common, std::ostream& out)
        : command_(std::move(command)), dir_(common.out_dir), out_(out) {
        if (!dir_.empty()) {
            std::error_code ec;
            fs::create_directories(dir_, ec);
            if (ec) throw IoError("cannot create output directory " + dir_ + ": " + ec.message());
        }
    }

    bool has_dir() const { return !dir_.empty(); }
    void input(const std::string& path) {
        if (!path.empty()) inputs_.push_back(path);
    }
    void set(const std::string& key, Json value) { extra_[key] = std::move(value); }

    // Report JSON goes to <dir>/<name> with --out, to stdout otherwise.
    void emit(const std::string& name, const Json& j) {
        const std::string text = j.dump(2) + "\n";
        if (dir_.empty()) {
            out_ << text;
            return;
        }
        const fs::path p = fs::path(dir_) / name;
        io::write_text(p, text);
        outputs_.push_back(p.string());
    }
    void save_matrix(const std::string& name, const Matrix& m) { track(name, [&](const fs::path& p) { io::save_matrix(p, m); }); }
    void save_vector(const std::string& name, const Vector& v) { track(name, [&](const fs::path& p) { io::save_vector(p, v); }); }
    void save_bundle(const std::string& name, const std::vector<Matrix>& ms) {
        track(name, [&](const fs::path& p) { io::save_bundle(p, ms); });
    }

    void finish() {
        if (dir_.empty()) return;
        for (const auto& f : inputs_)
            if (!fs::exists(f)) throw IoError("manifest input no longer exists: " + f);
        for (const auto& f : outputs_)
            if (!fs::exists(f)) throw IoError("manifest output missing: " + f);
        Json m{{"schema", report::schema("manifest")}, {"command", command_}, {"inputs", inputs_}};
        for (const char* key : {"lambda", "sweep", "strategy", "config"}) m[key] = extra_.contains(key) ? extra_[key] : Json();
        m["outputs"] = outputs_;
        m["tool_version"] = SPLITLAB_VERSION;
        io::write_text(fs::path(dir_) / "manifest.json", m.dump(2) + "\n");
    }

private:
    void track(const std::string& name, const std::function<void(const fs::path&)>& write) {
        if (dir_.empty()) throw UsageError("--out is required to write " + name);
        const fs::path p = fs::path(dir_) / name;
        write(p);
        outputs_.push_back(p.string());
    }

    std::string command_, dir_;
    std::ostream& out_;
    std::vector<std::string> inputs_, outputs_;
    Json extra_ = Json::object();
};

void add_common(CLI::App* app, CommonOptions& c) {
    app->add_option("--out", c.out_dir, "Directory for reports and manifest.json (stdout when absent)");
    app->add_option("--tol-nonneg", c.tol_nonneg, "Relative slack for entrywise order tests");
    app->add_option("--tol-spectral", c.tol_spectral, "Spectral radius tolerance");
    app->add_option("--tol-rank", c.tol_rank, "Relative singular value cutoff for numerical rank");
    app->add_option("--tol-equal", c.tol_equal, "Relative slack for matrix equality tests");
}

void add_sources(CLI::App* app, InputOptions& in) {
    app->add_option("--bundle", in.bundle, "Splitting bundle: A,U,V (single) or A,P,R,S (double)");
    app->add_option("--matrix", in.matrix, "Matrix file for A");
    app->add_option("--example", in.example, "Embedded worked example (ex-3-2, ex-3-5, ex-3-13, ex-conv, ex-pe121)");
    app->add_option("--problem", in.problem, "Generated problem: fredholm-gauss or poisson-neumann");
    app->add_option("--n", in.n, "Grid size for --problem");
    app->add_option("--width", in.width, "Kernel width for fredholm-gauss");
    app->add_option("--seed", in.seed, "Noise seed for fredholm-gauss");
    app->add_option("--noise", in.noise, "Relative noise level for fredholm-gauss");
}

void add_regularization(CLI::App* app, InputOptions& in) {
    app->add_option("--lambda", in.lambda, "Regularization parameter");
    app->add_option("--strategy", in.strategy, "Splitting of B_lambda: jacobi, tridiag or custom")
        ->check(CLI::IsMember({"jacobi", "tridiag", "custom"}));
    app->add_option("--reg-bundle", in.reg_bundle, "Parts of the splitting of B_lambda (custom strategy)");
}

std::size_t count_sources(const InputOptions& in) {
    return !in.bundle.empty() + !in.matrix.empty() + !in.example.empty() + !in.problem.empty();
}

std::vector<Matrix> load_bundle(const std::string& path, Session& s) {
    s.input(path);
    return io::load_bundle(path);
}

// A, and b when the source supplies one.
struct ProblemData {
    Matrix A;
    std::optional<Vector> b;
};

ProblemData load_matrix_source(const InputOptions& in, Session& s) {
    if (count_sources(in) != 1) throw UsageError("give exactly one of --bundle, --matrix, --example, --problem");
    if (!in.matrix.empty()) {
        s.input(in.matrix);
        return {io::load_matrix(in.matrix), std::nullopt};
    }
    if (!in.bundle.empty()) return {load_bundle(in.bundle, s).at(0), std::nullopt};
    if (!in.problem.empty()) {
        const ProblemSpec spec = in.problem_spec();
        s.set("problem", to_json(spec));
        if (spec.kind == ProblemKind::FredholmGauss) {
            FredholmProblem p = gen_fredholm(spec);
            return {std::move(p.A), std::move(p.b)};
        }
        if (spec.kind == ProblemKind::PoissonNeumann) return {gen_poisson_neumann(spec.n), std::nullopt};
        throw UsageError("--problem file is spelled --matrix FILE");
    }
    switch (parse_example(in.example)) {
        case ExampleId::Ex32:
        case ExampleId::Ex35: return {fixtures::rectangular_weak().A, std::nullopt};
        case ExampleId::Ex313:
        case ExampleId::ExConv: return {fixtures::type_two_pair().A, std::nullopt};
        case ExampleId::ExPe121: return {fixtures::regularized_double().A, std::nullopt};
    }
    throw UsageError("unknown example");
}

Vector load_rhs(const InputOptions& in, const ProblemData& pd, Session& s) {
    if (!in.rhs.empty()) {
        s.input(in.rhs);
        Vector b = io::load_vector(in.rhs);
        if (b.size() != pd.A.rows())
            throw DimensionError("rhs has length " + std::to_string(b.size()) + ", A has " + std::to_string(pd.A.rows()) + " rows");
        return b;
    }
    if (pd.b) return *pd.b;
    return Vector(pd.A.rows(), 1.0);
}

std::vector<double> schedule_of(const InputOptions& in, const std::vector<double>& fallback) {
    if (!in.sweep.empty() && in.lambda) throw UsageError("--lambda and --sweep are mutually exclusive");
    if (!in.sweep.empty()) return in.sweep;
    if (in.lambda) return {*in.lambda};
    return fallback;
}

void require_lambda(const InputOptions& in, const char* why) {
    if (!in.lambda) throw UsageError(std::string(why) + " needs --lambda");
    if (!(*in.lambda > 0.0)) throw ParameterError("--lambda must be positive");
}

std::string strategy_or_default(const InputOptions& in) {
    if (!in.strategy.empty()) {
        if (in.strategy != "custom" && !in.reg_bundle.empty())
            throw UsageError("--reg-bundle only applies to --strategy custom");
        if (in.strategy == "custom" && in.reg_bundle.empty()) throw UsageError("--strategy custom needs --reg-bundle");
        return in.strategy;
    }
    return in.reg_bundle.empty() ? "jacobi" : "custom";
}

SingleFamily single_family(const InputOptions& in, Session& s) {
    const std::string strategy = strategy_or_default(in);
    s.set("strategy", strategy);
    if (strategy == "jacobi") return family::jacobi();
    if (strategy == "tridiag")
        return [](const RegularizedSystem& sys) { return split_regularized(sys, SplitStrategy::Tridiag); };
    const auto parts = load_bundle(in.reg_bundle, s);
    if (parts.size() > 2) throw UsageError("single regularized bundle holds M_lambda or M_lambda,N_lambda");
    return family::fixed_preconditioner(parts.at(0));
}

DoubleFamily double_family(const InputOptions& in, Session& s) {
    const std::string strategy = strategy_or_default(in);
    s.set("strategy", strategy);
    if (strategy == "jacobi")
        return [](const RegularizedSystem& sys) {
            const Matrix P = Matrix::diagonal(sys.B().diag());
            return split_regularized(sys, P, P - sys.B(), Matrix(P.rows(), P.cols()));
        };
    if (strategy == "tridiag") throw UsageError("tridiag is a single-splitting strategy");
    const auto parts = load_bundle(in.reg_bundle, s);
    if (parts.size() != 2 && parts.size() != 3)
        throw UsageError("double regularized bundle holds R_lambda,S_lambda or P_lambda,R_lambda,S_lambda");
    return family::fixed_remainders(parts[parts.size() - 2], parts[parts.size() - 1]);
}

// ---- analyze ---------------------------------------------------------------

Json analyze_single(const std::string& label, const SingleSplitting& s, const Tolerances& tol) {
    Json j{{"label", label}, {"kind", "single"}, {"shape", s.A().shape_string()}, {"flags", to_json(s.flags())}};
    j["iteration"] = to_json(spectral_radius(s.iteration_matrix(), tol));
    j["second_type_radius"] = rho(s.second_type_matrix(), tol);
    try {
        j["perron_link"] = to_json(perron_link(s, tol));
    } catch (const HypothesisError& e) {
        j["perron_link"] = Json{{"unavailable", e.what()}};
    }
    return j;
}

Json analyze_double(const std::string& label, const DoubleSplitting& d, const Tolerances& tol) {
    Json j{{"label", label}, {"kind", "double"}, {"shape", d.A().shape_string()}, {"flags", to_json(d.flags())}};
    Json schemes = Json::array();
    for (Variant v : {Variant::HatW, Variant::TildeW, Variant::ProperW}) {
        try {
            const BlockIterationMatrix w = build_double_iteration_matrix(d, v, tol);
            schemes.push_back(Json{{"variant", to_string(v)}, {"rho", w.rho}, {"convergent", w.rho < 1.0}});
        } catch (const HypothesisError& e) {
            schemes.push_back(Json{{"variant", to_string(v)}, {"unavailable", e.what()}});
        }
    }
    j["schemes"] = std::move(schemes);
    return j;
}

Json analyze_bundle(const std::string& label, const std::vector<Matrix>& ms, const Tolerances& tol) {
    if (ms.size() == 3) return analyze_single(label, single_from_bundle(ms, tol), tol);
    if (ms.size() == 4) return analyze_double(label, double_from_bundle(ms, tol), tol);
    throw UsageError("a bundle holds 3 (A,U,V) or 4 (A,P,R,S) matrices, got " + std::to_string(ms.size()));
}

int cmd_analyze(const InputOptions& in, const CommonOptions& common, std::ostream& out) {
    const Tolerances tol = common.tolerances();
    Session s("analyze", common, out);
    Json entries = Json::array();
    if (!in.example.empty()) {
        if (count_sources(in) != 1) throw UsageError("--example cannot be combined with other sources");
        switch (parse_example(in.example)) {
            case ExampleId::Ex32:
            case ExampleId::Ex35: {
                const auto& ex = fixtures::rectangular_weak();
                entries.push_back(analyze_single("original", SingleSplitting::create(ex.A, ex.M, ex.N, tol), tol));
                entries.push_back(analyze_single(
                    "regularized", split_regularized(build_regularized(ex.A, ex.lambda, tol), ex.M_lambda, ex.N_lambda), tol));
                s.set("lambda", ex.lambda);
                break;
            }
            case ExampleId::Ex313:
            case ExampleId::ExConv: {
                const auto& ex = fixtures::type_two_pair();
                entries.push_back(analyze_double("first", DoubleSplitting::create(ex.A, ex.P1, ex.R1, ex.S1, tol), tol));
                entries.push_back(analyze_double("second", DoubleSplitting::create(ex.A, ex.P2, ex.R2, ex.S2, tol), tol));
                break;
            }
            case ExampleId::ExPe121: {
                const auto& ex = fixtures::regularized_double();
                entries.push_back(analyze_double("original", DoubleSplitting::create(ex.P - ex.R + ex.S, ex.P, ex.R, ex.S, tol), tol));
                entries.push_back(analyze_double(
                    "regularized",
                    split_regularized(build_regularized(ex.A, ex.lambda, tol), ex.P_lambda, ex.R_lambda, ex.S_lambda), tol));
                s.set("lambda", ex.lambda);
                break;
            }
        }
    } else if (!in.bundle.empty() && !in.lambda) {
        if (count_sources(in) != 1) throw UsageError("give exactly one of --bundle, --matrix, --example, --problem");
        entries.push_back(analyze_bundle("bundle", load_bundle(in.bundle, s), tol));
        if (!in.bundle2.empty()) entries.push_back(analyze_bundle("bundle2", load_bundle(in.bundle2, s), tol));
    } else {
        require_lambda(in, "analyzing a regularized splitting");
        const ProblemData pd = load_matrix_source(in, s);
        const RegularizedSystem sys = build_regularized(pd.A, *in.lambda, tol);
        s.set("lambda", *in.lambda);
        const std::string strategy = strategy_or_default(in);
        s.set("strategy", strategy);
        if (strategy == "custom") {
            const auto parts = load_bundle(in.reg_bundle, s);
            if (parts.size() == 3)
                entries.push_back(analyze_double("regularized", split_regularized(sys, parts[0], parts[1], parts[2]), tol));
            else if (parts.size() == 2)
                entries.push_back(analyze_single("regularized", split_regularized(sys, parts[0], parts[1]), tol));
            else
                entries.push_back(analyze_single("regularized", split_regularized(sys, parts.at(0)), tol));
        } else {
            const SplitStrategy st = strategy == "jacobi" ? SplitStrategy::Jacobi : SplitStrategy::Tridiag;
            entries.push_back(analyze_single("regularized", split_regularized(sys, st), tol));
        }
    }
    s.emit("analyze.json", Json{{"schema", report::schema("analyze")}, {"tolerances", to_json(tol)}, {"splittings", entries}});
    s.finish();
    return kOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveSetup {
    std::function<IterationReport(const SolverConfig&)> run;
    Matrix iteration;  // for the spectral radius
    Vector oracle;
    std::string oracle_kind;
};

int cmd_solve(const InputOptions& in, const CommonOptions& common, const std::string& variant_name, SolverConfig cfg,
              std::ostream& out) {
    const Tolerances tol = common.tolerances();
    const Variant variant = parse_variant(variant_name);
    Session s("solve", common, out);
    if (!in.x0.empty()) {
        s.input(in.x0);
        cfg.x0 = io::load_vector(in.x0);
    }
    SolveSetup setup;
    Json meta = Json::object();
    const bool regularized = in.lambda.has_value();
    if (variant == Variant::LambdaW || (variant == Variant::Single && regularized)) {
        require_lambda(in, "a regularized scheme");
        const ProblemData pd = load_matrix_source(in, s);
        if (!in.bundle.empty()) throw UsageError("regularized schemes take A from --matrix, --problem or --example");
        const Vector b = load_rhs(in, pd, s);
        const RegularizedSystem sys = build_regularized(pd.A, *in.lambda, tol);
        s.set("lambda", *in.lambda);
        const Vector rhs = sys.rhs(b);
        setup.oracle = sys.rhs_map() * b;
        setup.oracle_kind = "tikhonov";
        if (variant == Variant::Single) {
            const SingleSplitting split = single_family(in, s)(sys);
            setup.iteration = split.iteration_matrix();
            setup.run = [split, rhs](const SolverConfig& c) { return iterate_single(split, rhs, c); };
        } else {
            const DoubleSplitting split = double_family(in, s)(sys);
            setup.iteration = build_double_iteration_matrix(split, Variant::LambdaW, tol).W;
            setup.run = [split, rhs](const SolverConfig& c) { return iterate_double(split, rhs, Variant::LambdaW, c); };
        }
    } else {
        if (in.bundle.empty()) throw UsageError("unregularized schemes need --bundle (or --lambda for a regularized one)");
        if (!in.strategy.empty() || !in.reg_bundle.empty()) throw UsageError("--strategy and --reg-bundle need --lambda");
        const auto ms = load_bundle(in.bundle, s);
        const ProblemData pd{ms.at(0), std::nullopt};
        const Vector b = load_rhs(in, pd, s);
        if (variant == Variant::Single) {
            if (ms.size() != 3) throw UsageError("variant single needs a single-splitting bundle A,U,V");
            const SingleSplitting split = single_from_bundle(ms, tol);
            setup.iteration = split.iteration_matrix();
            setup.oracle = pseudoinverse(split.A(), tol) * b;
            setup.oracle_kind = "pseudoinverse";
            setup.run = [split, b](const SolverConfig& c) { return iterate_single(split, b, c); };
        } else {
            if (ms.size() != 4) throw UsageError(std::string("variant ") + variant_name + " needs a double-splitting bundle A,P,R,S");
            const DoubleSplitting split = double_from_bundle(ms, tol);
            setup.iteration = build_double_iteration_matrix(split, variant, tol).W;
            if (variant == Variant::ProperW) {
                setup.oracle = pseudoinverse(split.A(), tol) * b;
                setup.oracle_kind = "pseudoinverse";
            } else {
                setup.oracle = solve_dense(split.A(), b, tol);
                setup.oracle_kind = "direct";
            }
            setup.run = [split, b, variant](const SolverConfig& c) { return iterate_double(split, b, variant, c); };
        }
    }
    cfg.validate(setup.oracle.size());
    s.set("config", to_json(cfg));
    const IterationReport rep = setup.run(cfg);
    Json j{{"schema", report::schema("solve")}, {"variant", to_string(variant)}};
    j["lambda"] = in.lambda ? Json(*in.lambda) : Json();
    j["config"] = to_json(cfg);
    j["rho_iteration"] = rho(setup.iteration, tol);
    j["asymptotic_rate"] = rep.step_norms.size() >= 30 ? Json(asymptotic_rate(rep)) : Json();
    j["report"] = to_json(rep);
    const std::size_t n = setup.oracle.size();
    const Vector head(rep.limit.begin(), rep.limit.begin() + static_cast<std::ptrdiff_t>(std::min(n, rep.limit.size())));
    j["oracle"] = Json{{"kind", setup.oracle_kind}, {"solution", to_json(setup.oracle)}, {"error", norm2(subtract(head, setup.oracle))}};
    s.emit("solve.json", j);
    s.finish();
    return rep.converged ? kOk : kNonConvergence;
}

// ---- compare ---------------------------------------------------------------

struct CompareOptions {
    std::string theorem;
    std::string type = "first";
    std::string form = "typeI";
    unsigned power = 1;
    double alpha = 1.0;
};

EquivalenceForm parse_form(const std::string& f) {
    if (f == "typeI") return EquivalenceForm::TypeI;
    if (f == "typeII") return EquivalenceForm::TypeII;
    if (f == "typeII-alt") return EquivalenceForm::TypeIIAlt;
    throw UsageError("--form must be typeI, typeII or typeII-alt");
}

bool single_comparison(TheoremId id) {
    switch (id) {
        case TheoremId::CmpFirst:
        case TheoremId::CmpSecond:
        case TheoremId::CmpMixA:
        case TheoremId::CmpMixB:
        case TheoremId::CmpSameI:
        case TheoremId::CmpSameIAlt:
        case TheoremId::CmpIToII: return true;
        default: return false;
    }
}

bool double_comparison(TheoremId id) {
    switch (id) {
        case TheoremId::Dw2Mono:
        case TheoremId::Dw2Scaled:
        case TheoremId::Dw2Rate:
        case TheoremId::Dw2Psd:
        case TheoremId::Dw2TwoMat:
        case TheoremId::DwIIvsI:
        case TheoremId::DwIvsII: return true;
        default: return false;
    }
}

TheoremVerdict compare_example(TheoremId id, ExampleId ex_id, const CompareOptions& co, const InputOptions& in,
                               const Tolerances& tol, Session& s) {
    const std::vector<double> sweep = schedule_of(in, example_schedule());
    s.set("sweep", to_json(sweep));
    switch (ex_id) {
        case ExampleId::Ex32:
        case ExampleId::Ex35: {
            const auto& ex = fixtures::rectangular_weak();
            const SingleFamily fam = family::fixed_preconditioner(ex.M_lambda);
            s.set("strategy", "custom");
            if (id == TheoremId::SingleConv)
                return check_single_convergence(ex.A, fam, sweep, co.type == "second" ? SplittingType::Second : SplittingType::First, tol);
            if (!single_comparison(id)) break;
            return check_comparison_single(id, SingleSplitting::create(ex.A, ex.M, ex.N, tol), fam, sweep, tol);
        }
        case ExampleId::Ex313:
        case ExampleId::ExConv: {
            const auto& ex = fixtures::type_two_pair();
            const DoubleSplitting d1 = DoubleSplitting::create(ex.A, ex.P1, ex.R1, ex.S1, tol);
            const DoubleSplitting d2 = DoubleSplitting::create(ex.A, ex.P2, ex.R2, ex.S2, tol);
            if (double_comparison(id)) return check_double_comparison(id, d1, d2, tol);
            if (id == TheoremId::EqTypeI) return check_double_equivalences(d1, EquivalenceForm::TypeI, tol);
            if (id == TheoremId::EqTypeII) return check_double_equivalences(d1, EquivalenceForm::TypeII, tol);
            if (id == TheoremId::EqTypeIIAlt) return check_double_equivalences(d1, EquivalenceForm::TypeIIAlt, tol);
            break;
        }
        case ExampleId::ExPe121: {
            const auto& ex = fixtures::regularized_double();
            const DoubleSplitting d = DoubleSplitting::create(ex.P - ex.R + ex.S, ex.P, ex.R, ex.S, tol);
            s.set("strategy", "custom");
            if (id == TheoremId::RdCmpI || id == TheoremId::RdCmpII || id == TheoremId::RdConv)
                return check_regularized_double(id, ex.A, d, family::fixed_remainders(ex.R_lambda, ex.S_lambda), sweep, tol,
                                                parse_form(co.form));
            break;
        }
    }
    throw UsageError(std::string(to_string(id)) + " does not apply to example " + to_string(ex_id));
}

TheoremVerdict compare_files(TheoremId id, const CompareOptions& co, const InputOptions& in, const Tolerances& tol,
                             Session& s) {
    const std::vector<double> sweep = schedule_of(in, default_schedule());
    if (id == TheoremId::SingleConv) {
        const ProblemData pd = load_matrix_source(in, s);
        s.set("sweep", to_json(sweep));
        return check_single_convergence(pd.A, single_family(in, s), sweep,
                                        co.type == "second" ? SplittingType::Second : SplittingType::First, tol);
    }
    if (count_sources(in) != 1 || in.bundle.empty()) throw UsageError(std::string(to_string(id)) + " needs --bundle");
    const auto ms = load_bundle(in.bundle, s);
    if (single_comparison(id)) {
        if (ms.size() != 3) throw UsageError("single comparisons need a bundle A,M,N");
        s.set("sweep", to_json(sweep));
        return check_comparison_single(id, single_from_bundle(ms, tol), single_family(in, s), sweep, tol);
    }
    if (id == TheoremId::PowerDominance) {
        if (ms.size() != 3) throw UsageError("POWER_DOMINANCE needs a bundle A,M1,M2");
        return check_power_dominance(ms[1], ms[2], ms[0], co.power, co.alpha, tol);
    }
    if (ms.size() != 4) throw UsageError(std::string(to_string(id)) + " needs a double-splitting bundle A,P,R,S");
    const DoubleSplitting d = double_from_bundle(ms, tol);
    switch (id) {
        case TheoremId::EqTypeI: return check_double_equivalences(d, EquivalenceForm::TypeI, tol);
        case TheoremId::EqTypeII: return check_double_equivalences(d, EquivalenceForm::TypeII, tol);
        case TheoremId::EqTypeIIAlt: return check_double_equivalences(d, EquivalenceForm::TypeIIAlt, tol);
        case TheoremId::RdConv:
        case TheoremId::RdCmpI:
        case TheoremId::RdCmpII: {
            Matrix A = d.A();
            if (!in.matrix.empty()) throw UsageError("give the regularized matrix through the bundle");
            s.set("sweep", to_json(sweep));
            return check_regularized_double(id, A, d, double_family(in, s), sweep, tol, parse_form(co.form));
        }
        default: break;
    }
    if (in.bundle2.empty()) throw UsageError(std::string(to_string(id)) + " needs --bundle2");
    const auto ms2 = load_bundle(in.bundle2, s);
    if (ms2.size() != 4) throw UsageError("--bundle2 must hold A,P,R,S");
    return check_double_comparison(id, d, double_from_bundle(ms2, tol), tol);
}

int cmd_compare(const InputOptions& in, const CompareOptions& co, const CommonOptions& common, std::ostream& out) {
    const Tolerances tol = common.tolerances();
    const TheoremId id = parse_theorem(co.theorem);
    if (co.type != "first" && co.type != "second") throw UsageError("--type must be first or second");
    Session s("compare", common, out);
    const TheoremVerdict v = in.example.empty() ? compare_files(id, co, in, tol, s)
                                                : compare_example(id, parse_example(in.example), co, in, tol, s);
    if (count_sources(in) > 1 && !in.example.empty()) throw UsageError("--example cannot be combined with other sources");
    s.emit("compare.json", Json{{"schema", report::schema("compare")}, {"tolerances", to_json(tol)}, {"verdict", to_json(v)}});
    s.finish();
    return v.conclusion_holds ? kOk : kFailure;
}

// ---- reproduce, sweep, fuzz, gen -------------------------------------------

int cmd_reproduce(const std::string& example, const std::string& format, const CommonOptions& common, std::ostream& out) {
    const Tolerances tol = common.tolerances();
    const ExampleId id = parse_example(example);
    Session s("reproduce", common, out);
    const Reproduction r = reproduce(id, tol);
    Json j{{"schema", report::schema("reproduce")}, {"tolerances", to_json(tol)}};
    j.update(to_json(r));
    if (format == "json" && !s.has_dir()) {
        s.emit("reproduce.json", j);
    } else {
        out << format_table(r);
        if (s.has_dir()) s.emit("reproduce.json", j);
    }
    s.set("sweep", to_json(example_schedule()));
    s.finish();
    return r.all_pass() ? kOk : kFailure;
}

int cmd_sweep(const InputOptions& in, const CommonOptions& common, std::ostream& out) {
    const Tolerances tol = common.tolerances();
    Session s("sweep", common, out);
    const ProblemData pd = load_matrix_source(in, s);
    const std::vector<double> schedule = schedule_of(in, default_schedule());
    s.set("sweep", to_json(schedule));
    const LambdaSweep sw = limit_sweep(pd.A, schedule, tol);
    bool nonincreasing = true;
    for (std::size_t k = 1; k < sw.errors.size(); ++k) nonincreasing = nonincreasing && sw.errors[k] <= 1.1 * sw.errors[k - 1];
    Json j{{"schema", report::schema("sweep")}, {"shape", pd.A.shape_string()}, {"sweep", to_json(sw)}};
    j["nonincreasing"] = nonincreasing;
    j["pinv_norm"] = frobenius(pseudoinverse(pd.A, tol));
    s.emit("sweep.json", j);
    s.finish();
    return kOk;
}

int cmd_fuzz(const std::vector<std::string>& theorems, FuzzOptions opts, const CommonOptions& common, std::ostream& out) {
    opts.tol = common.tolerances();
    Session s("fuzz", common, out);
    std::vector<TheoremId> ids;
    if (theorems.empty() || (theorems.size() == 1 && theorems[0] == "all"))
        ids = all_theorems();
    else
        for (const auto& t : theorems) ids.push_back(parse_theorem(t));
    s.set("sweep", to_json(opts.sweep));
    Json summaries = Json::array();
    std::size_t total = 0;
    for (TheoremId id : ids) {
        const FuzzSummary sum = fuzz_theorem(id, opts);
        total += sum.counterexamples;
        summaries.push_back(to_json(sum));
    }
    Json j{{"schema", report::schema("fuzz")},
           {"options", Json{{"instances", opts.instances}, {"max_n", opts.max_n}, {"seed", opts.seed}, {"sweep", to_json(opts.sweep)}}},
           {"summaries", std::move(summaries)},
           {"total_counterexamples", total}};
    s.emit("fuzz.json", j);
    s.finish();
    return total == 0 ? kOk : kFailure;
}

int cmd_gen(const std::string& kind, const InputOptions& in, const CommonOptions& common, std::ostream& out) {
    if (common.out_dir.empty()) throw UsageError("gen needs --out");
    Session s("gen", common, out);
    Json j{{"schema", report::schema("gen")}, {"kind", kind}};
    if (kind == "fixture") {
        switch (parse_example(in.example)) {
            case ExampleId::Ex32:
            case ExampleId::Ex35: {
                const auto& ex = fixtures::rectangular_weak();
                s.save_bundle("single.txt", {ex.A, ex.M, ex.N});
                s.save_bundle("reg.txt", {ex.M_lambda, ex.N_lambda});
                s.save_matrix("A.txt", ex.A);
                j["lambda"] = ex.lambda;
                break;
            }
            case ExampleId::Ex313:
            case ExampleId::ExConv: {
                const auto& ex = fixtures::type_two_pair();
                s.save_bundle("double1.txt", {ex.A, ex.P1, ex.R1, ex.S1});
                s.save_bundle("double2.txt", {ex.A, ex.P2, ex.R2, ex.S2});
                break;
            }
            case ExampleId::ExPe121: {
                const auto& ex = fixtures::regularized_double();
                s.save_bundle("double.txt", {ex.P - ex.R + ex.S, ex.P, ex.R, ex.S});
                s.save_bundle("reg.txt", {ex.P_lambda, ex.R_lambda, ex.S_lambda});
                s.save_matrix("A.txt", ex.A);
                j["lambda"] = ex.lambda;
                break;
            }
        }
        j["example"] = in.example;
    } else {
        InputOptions spec_in = in;
        spec_in.problem = kind;
        const ProblemSpec spec = spec_in.problem_spec();
        j["spec"] = to_json(spec);
        if (spec.kind == ProblemKind::FredholmGauss) {
            const FredholmProblem p = gen_fredholm(spec);
            const Vector sv = singular_values(p.A);
            s.save_matrix("A.txt", p.A);
            s.save_vector("b.txt", p.b);
            s.save_vector("x_true.txt", p.x_true);
            j["singular_value_ratio"] = sv.back() > 0.0 ? Json(sv.front() / sv.back()) : Json();
        } else if (spec.kind == ProblemKind::PoissonNeumann) {
            const Matrix A = gen_poisson_neumann(spec.n);
            s.save_matrix("A.txt", A);
            j["size"] = A.rows();
        } else {
            throw UsageError("gen takes fredholm-gauss, poisson-neumann or fixture");
        }
    }
    s.emit("gen.json", j);
    s.finish();
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matrix splitting analysis, iteration and theorem checking"};
    app.set_version_flag("--version", SPLITLAB_VERSION);
    app.require_subcommand(1);

    CommonOptions common;
    InputOptions in;
    CompareOptions co;
    std::string variant = "single", example, format = "table", gen_kind;
    SolverConfig cfg;
    FuzzOptions fuzz;
    std::vector<std::string> fuzz_ids;

    auto* analyze = app.add_subcommand("analyze", "Classify splittings and report iteration radii");
    add_common(analyze, common);
    add_sources(analyze, in);
    add_regularization(analyze, in);
    analyze->add_option("--bundle2", in.bundle2, "Second splitting bundle");

    auto* solve = app.add_subcommand("solve", "Run a stationary scheme and compare with the direct oracle");
    add_common(solve, common);
    add_sources(solve, in);
    add_regularization(solve, in);
    solve->add_option("--variant", variant, "single, hatW, tildeW, properW or lambdaW");
    solve->add_option("--rhs", in.rhs, "Right-hand side vector file (default: problem rhs or ones)");
    solve->add_option("--x0", in.x0, "Initial iterate file");
    solve->add_option("--stop-eps", cfg.stop_eps, "Stop when the step norm falls to this value");
    solve->add_option("--max-iter", cfg.max_iter, "Iteration budget");

    auto* compare = app.add_subcommand("compare", "Check one comparison theorem on given splittings");
    add_common(compare, common);
    add_sources(compare, in);
    add_regularization(compare, in);
    compare->add_option("--theorem", co.theorem, "Theorem id, e.g. CMP_FIRST or DW2_SCALED")->required();
    compare->add_option("--bundle2", in.bundle2, "Second double-splitting bundle");
    compare->add_option("--sweep", in.sweep, "Decreasing lambda schedule, comma separated")->delimiter(',');
    compare->add_option("--type", co.type, "Splitting type for SINGLE_CONV: first or second");
    compare->add_option("--form", co.form, "Scheme for RD_CONV: typeI or typeII");
    compare->add_option("--power", co.power, "Power j for POWER_DOMINANCE");
    compare->add_option("--alpha", co.alpha, "Factor alpha in (0, 1] for POWER_DOMINANCE");

    auto* repro = app.add_subcommand("reproduce", "Recompute a worked example against its reference values");
    add_common(repro, common);
    repro->add_option("example", example, "ex-3-2, ex-3-5, ex-3-13, ex-conv or ex-pe121")->required();
    repro->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* sweep = app.add_subcommand("sweep", "Distance of the Tikhonov map to the pseudoinverse along a schedule");
    add_common(sweep, common);
    add_sources(sweep, in);
    sweep->add_option("--sweep", in.sweep, "Decreasing lambda schedule, comma separated")->delimiter(',');

    auto* gen = app.add_subcommand("gen", "Write test problems or example bundles");
    add_common(gen, common);
    gen->add_option("kind", gen_kind, "fredholm-gauss, poisson-neumann or fixture")->required();
    gen->add_option("--n", in.n, "Grid size");
    gen->add_option("--width", in.width, "Kernel width for fredholm-gauss");
    gen->add_option("--seed", in.seed, "Noise seed for fredholm-gauss");
    gen->add_option("--noise", in.noise, "Relative noise level for fredholm-gauss");
    gen->add_option("--example", in.example, "Example id for fixture bundles");

    auto* fz = app.add_subcommand("fuzz", "Search random instances for theorem counterexamples");
    add_common(fz, common);
    fz->add_option("--theorem", fuzz_ids, "Theorem ids (default: all)");
    fz->add_option("--instances", fuzz.instances, "Instances per theorem");
    fz->add_option("--seed", fuzz.seed, "Base seed");
    fz->add_option("--max-n", fuzz.max_n, "Largest matrix dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) return cmd_analyze(in, common, out);
        if (*solve) return cmd_solve(in, common, variant, cfg, out);
        if (*compare) return cmd_compare(in, co, common, out);
        if (*repro) return cmd_reproduce(example, format, common, out);
        if (*sweep) return cmd_sweep(in, common, out);
        if (*gen) return cmd_gen(gen_kind, in, common, out);
        if (*fz) return cmd_fuzz(fuzz_ids, fuzz, common, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const SingularityError& e) {
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const InsufficiencyError& e) {
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace splitlab::cli
