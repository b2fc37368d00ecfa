#include "report_json.hpp"

namespace splitlab::report {

std::string schema(const std::string& kind) { return "splitlab." + kind + "/" + std::to_string(kSchemaVersion); }

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vector& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json to_json(const Tolerances& t) {
    return Json{{"nonneg_eps", t.nonneg_eps}, {"spectral_eps", t.spectral_eps}, {"rank_eps", t.rank_eps},
                {"equal_eps", t.equal_eps}};
}

Json to_json(const SpectralReport& r) {
    Json j{{"radius", r.radius}, {"method", to_string(r.method)}, {"iterations", r.iterations}, {"residual", r.residual}};
    j["dominant_eigvec"] = r.dominant_eigvec ? to_json(*r.dominant_eigvec) : Json();
    return j;
}

Json to_json(const SingleClass& c) { return Json{{"proper", c.proper}, {"weak1", c.weak1}, {"weak2", c.weak2}}; }

Json to_json(const DoubleClass& c) {
    Json j{{"double_proper", c.double_proper}, {"type1", c.type1}};
    j["type2"] = c.type2 ? Json(*c.type2) : Json();
    return j;
}

Json to_json(const PerronLink& p) {
    return Json{{"rho_iter", p.rho_iter},
                {"rho_aux", p.rho_aux},
                {"relation_residual", p.relation_residual},
                {"second_type", p.second_type}};
}

Json to_json(const SolverConfig& c) {
    Json j{{"stop_eps", c.stop_eps}, {"max_iter", c.max_iter}};
    j["x0"] = c.x0 ? to_json(*c.x0) : Json();
    j["x1"] = c.x1 ? to_json(*c.x1) : Json();
    return j;
}

Json to_json(const IterationReport& r, std::size_t tail) {
    Json j{{"variant", to_string(r.variant)},
           {"k_final", r.k_final},
           {"converged", r.converged},
           {"diverged", r.diverged},
           {"rate_estimate", r.rate_estimate}};
    const std::size_t n = r.step_norms.size(), from = n > tail ? n - tail : 0;
    j["step_norms"] = Json{{"count", n},
                           {"first_index", from},
                           {"values", to_json(Vector(r.step_norms.begin() + static_cast<std::ptrdiff_t>(from),
                                                     r.step_norms.end()))}};
    j["limit"] = to_json(r.limit);
    j["iterates_kept"] = Json::array({to_json(r.iterates_kept[0]), to_json(r.iterates_kept[1])});
    return j;
}

Json to_json(const Hypothesis& h) {
    Json j{{"name", h.name}, {"predicate", h.predicate}, {"holds", h.holds}};
    if (h.witness)
        j["witness"] = Json{{"row", h.witness->row}, {"col", h.witness->col}, {"value", h.witness->value}};
    else
        j["witness"] = Json();
    j["note"] = h.note;
    return j;
}

Json to_json(const TheoremVerdict& v) {
    Json j{{"theorem", to_string(v.id)}, {"shape", v.shape}};
    Json hyps = Json::array(), conds = Json::array(), ev = Json::object();
    for (const auto& h : v.hypotheses) hyps.push_back(to_json(h));
    for (const auto& c : v.conditions) conds.push_back(to_json(c));
    for (const auto& e : v.evidence) ev[e.name] = to_json(e.value);
    j["hypotheses"] = std::move(hyps);
    j["conditions"] = std::move(conds);
    j["hypotheses_hold"] = v.hypotheses_hold();
    j["rho_left"] = v.rho_left;
    j["rho_right"] = v.rho_right;
    j["conclusion_holds"] = v.conclusion_holds;
    j["counterexample"] = v.counterexample();
    j["lambda_used"] = v.lambda_used ? Json(*v.lambda_used) : Json();
    j["evidence"] = std::move(ev);
    return j;
}

Json to_json(const FuzzSummary& s) {
    Json j{{"theorem", to_string(s.id)},
           {"instances", s.instances},
           {"hypotheses_true", s.hypotheses_true},
           {"conclusions_true", s.conclusions_true},
           {"counterexamples", s.counterexamples},
           {"structural_errors", s.structural_errors},
           {"auxiliary_failures", s.auxiliary_failures},
           {"worst_gap", s.worst_gap}};
    j["first_counterexample_seed"] = s.first_counterexample_seed ? Json(*s.first_counterexample_seed) : Json();
    return j;
}

Json to_json(const LambdaSweep& s) {
    return Json{{"schedule", to_json(s.schedule)}, {"errors", to_json(s.errors)}, {"limit_estimate", to_json(s.limit_estimate)}};
}

Json to_json(const Reproduction& r) {
    Json values = Json::array(), checks = Json::array(), verdicts = Json::array();
    for (const auto& row : r.values)
        values.push_back(Json{{"quantity", row.quantity},
                              {"computed", to_json(row.computed)},
                              {"reference", to_json(row.reference)},
                              {"deviation", row.deviation},
                              {"tolerance", row.tolerance},
                              {"pass", row.pass}});
    for (const auto& c : r.checks)
        checks.push_back(Json{{"predicate", c.predicate}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass()}});
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    return Json{{"example", to_string(r.id)},
                {"values", std::move(values)},
                {"checks", std::move(checks)},
                {"verdicts", std::move(verdicts)},
                {"all_pass", r.all_pass()}};
}

Json to_json(const ProblemSpec& p) {
    return Json{{"kind", to_string(p.kind)},
                {"n", p.n},
                {"kernel_width", p.kernel_width},
                {"seed", p.seed},
                {"noise_level", p.noise_level}};
}

}  // namespace splitlab::report
