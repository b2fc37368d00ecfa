#pragma once

#include <string>
#include <vector>

#include "splitlab/matrix.hpp"
#include "splitlab/theorem_lab.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

enum class ExampleId { Ex32, Ex35, Ex313, ExConv, ExPe121 };

const char* to_string(ExampleId id);
// Throws UsageError for unknown names.
ExampleId parse_example(const std::string& name);
const std::vector<ExampleId>& all_examples();

inline constexpr double kRadiusTolerance = 5e-4;
inline constexpr double kEntryTolerance = 1e-3;
// λ schedule for theorem verdicts on the worked examples; ends at the reference λ.
std::vector<double> example_schedule();

// A reference value (1×1 for scalars) against its recomputation.
struct ReproductionRow {
    std::string quantity;
    Matrix computed, reference;
    double tolerance = 0.0;
    double deviation = 0.0;  // max |computed − reference|
    bool pass = false;
};

// A reference order relation or verdict outcome.
struct ReproductionCheck {
    std::string predicate;
    bool expected = false;
    bool observed = false;
    bool pass() const { return expected == observed; }
};

struct Reproduction {
    ExampleId id = ExampleId::Ex32;
    std::vector<ReproductionRow> values;
    std::vector<ReproductionCheck> checks;
    std::vector<TheoremVerdict> verdicts;

    bool all_pass() const;
    const ReproductionRow* find_value(const std::string& quantity) const;
    const ReproductionCheck* find_check(const std::string& predicate) const;
};

Reproduction reproduce(ExampleId id, const Tolerances& tol = {});

// Computed-vs-reference table; deterministic byte for byte.
std::string format_table(const Reproduction& r);

}  // namespace splitlab
