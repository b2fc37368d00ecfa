#pragma once

namespace splitlab {

// nonneg_eps and equal_eps are relative to the largest entry magnitude of
// the operands; rank_eps is relative to the largest singular value.
struct Tolerances {
    double nonneg_eps = 1e-9;
    double spectral_eps = 1e-10;
    double rank_eps = 1e-12;
    double equal_eps = 1e-9;

    Tolerances scaled(double factor) const;
    void validate() const;

    // Defaults multiplied by SPLITLAB_TOL_SCALE when that variable is set.
    static Tolerances from_environment();
};

}  // namespace splitlab
