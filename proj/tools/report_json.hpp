#pragma once

#include <string>

#include "json.hpp"
#include "splitlab/matrix.hpp"
#include "splitlab/problems.hpp"
#include "splitlab/regularization.hpp"
#include "splitlab/reproduce.hpp"
#include "splitlab/solvers.hpp"
#include "splitlab/spectral.hpp"
#include "splitlab/splittings.hpp"
#include "splitlab/theorem_lab.hpp"
#include "splitlab/tolerances.hpp"

// JSON encodings of library results. Key order is fixed, so equal inputs
// give byte-identical reports.
namespace splitlab::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// "splitlab.<kind>/<version>".
std::string schema(const std::string& kind);

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const Tolerances& t);
Json to_json(const SpectralReport& r);
Json to_json(const SingleClass& c);
Json to_json(const DoubleClass& c);
Json to_json(const PerronLink& p);
Json to_json(const SolverConfig& c);
// Step norms are summarized: count plus the last `tail` values.
Json to_json(const IterationReport& r, std::size_t tail = 50);
Json to_json(const Hypothesis& h);
Json to_json(const TheoremVerdict& v);
Json to_json(const FuzzSummary& s);
Json to_json(const LambdaSweep& s);
Json to_json(const Reproduction& r);
Json to_json(const ProblemSpec& p);

}  // namespace splitlab::report
