#include "splitlab/order.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "splitlab/errors.hpp"

namespace splitlab {

std::string Witness::to_string() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%zu,%zu) = %.6g", row + 1, col + 1, value);
    return buf;
}

double order_slack(const Matrix& x, const Matrix& y, const Tolerances& tol) {
    return tol.nonneg_eps * std::max(max_abs(x), max_abs(y));
}

namespace {

// Scans x − y for the most negative entry relative to `floor`.
OrderResult scan(const Matrix& x, const Matrix& y, double floor, bool strict) {
    OrderResult r;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const double d = x(i, j) - y(i, j);
            const bool bad = strict ? !(d > floor) : (d < floor);
            if (bad && (r.holds || d < worst)) {
                r.holds = false;
                worst = d;
                r.witness = Witness{i, j, d};
            }
        }
    }
    return r;
}

}  // namespace

OrderResult compare_geq(const Matrix& x, const Matrix& y, const Tolerances& tol) {
    require_same_shape(x, y, "entrywise order");
    return scan(x, y, -order_slack(x, y, tol), false);
}

OrderResult compare_gt(const Matrix& x, const Matrix& y, const Tolerances& tol) {
    require_same_shape(x, y, "entrywise order");
    return scan(x, y, order_slack(x, y, tol), true);
}

OrderResult compare_equal(const Matrix& x, const Matrix& y, const Tolerances& tol) {
    require_same_shape(x, y, "matrix equality");
    const double slack = tol.equal_eps * std::max({1.0, max_abs(x), max_abs(y)});
    OrderResult r;
    double worst = slack;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const double d = x(i, j) - y(i, j);
            if (std::abs(d) > worst) {
                r.holds = false;
                worst = std::abs(d);
                r.witness = Witness{i, j, d};
            }
        }
    return r;
}

bool entrywise_geq(const Matrix& x, const Matrix& y, const Tolerances& tol) { return compare_geq(x, y, tol).holds; }
bool entrywise_gt(const Matrix& x, const Matrix& y, const Tolerances& tol) { return compare_gt(x, y, tol).holds; }
bool nearly_equal(const Matrix& x, const Matrix& y, const Tolerances& tol) { return compare_equal(x, y, tol).holds; }

bool is_symmetric(const Matrix& a, const Tolerances& tol) {
    return a.square() && compare_equal(a, a.transpose(), tol).holds;
}

}  // namespace splitlab
