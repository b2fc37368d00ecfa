#include "splitlab/tolerances.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "splitlab/errors.hpp"

namespace splitlab {

Tolerances Tolerances::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw ParameterError("tolerance scale must be positive and finite");
    Tolerances t = *this;
    t.nonneg_eps *= factor;
    t.spectral_eps *= factor;
    t.rank_eps *= factor;
    t.equal_eps *= factor;
    return t;
}

void Tolerances::validate() const {
    for (double v : {nonneg_eps, spectral_eps, rank_eps, equal_eps})
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("tolerances must be nonnegative and finite");
}

Tolerances Tolerances::from_environment() {
    const char* raw = std::getenv("SPLITLAB_TOL_SCALE");
    if (!raw || !*raw) return {};
    char* end = nullptr;
    double factor = std::strtod(raw, &end);
    if (end == raw || *end != '\0')
        throw ParameterError(std::string("SPLITLAB_TOL_SCALE is not a number: ") + raw);
    return Tolerances{}.scaled(factor);
}

}  // namespace splitlab
