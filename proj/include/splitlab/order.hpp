#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "splitlab/matrix.hpp"
#include "splitlab/tolerances.hpp"

namespace splitlab {

// Entry that breaks a comparison: value = (X − Y)(row, col) or the
// deviation that exceeded slack.
struct Witness {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
    std::string to_string() const;
};

struct OrderResult {
    bool holds = true;
    std::optional<Witness> witness;  // most negative offender when !holds
    explicit operator bool() const { return holds; }
};

OrderResult compare_geq(const Matrix& x, const Matrix& y, const Tolerances& tol);
OrderResult compare_gt(const Matrix& x, const Matrix& y, const Tolerances& tol);
OrderResult compare_equal(const Matrix& x, const Matrix& y, const Tolerances& tol);

bool entrywise_geq(const Matrix& x, const Matrix& y, const Tolerances& tol);
bool entrywise_gt(const Matrix& x, const Matrix& y, const Tolerances& tol);
bool nearly_equal(const Matrix& x, const Matrix& y, const Tolerances& tol);

// Slack applied by compare_geq: nonneg_eps · max(|x|_max, |y|_max).
double order_slack(const Matrix& x, const Matrix& y, const Tolerances& tol);

bool is_symmetric(const Matrix& a, const Tolerances& tol);

}  // namespace splitlab
