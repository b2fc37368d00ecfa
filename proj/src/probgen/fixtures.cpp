#include "splitlab/fixtures.hpp"

namespace splitlab::fixtures {

const SingleExample& rectangular_weak() {
    static const SingleExample ex = [] {
        SingleExample e;
        e.A = {{4, 0, 2}, {0, 4, 2}, {2, 2, -4}, {2, 2, 0}};
        e.M = {{160, 80, 60}, {120, 160, 60}, {80, 80, -4}, {80, 80, 0}};
        e.N = {{156, 80, 58}, {120, 156, 58}, {78, 78, 0}, {78, 78, 0}};
        e.M_lambda = {{100, 20, 2}, {35, 40, 1}, {5, 3, 40}};
        e.N_lambda = {{75.9999, 12, 2}, {27, 15.9999, 1}, {5, 3, 15.9999}};
        e.B_reference = {{24.0001, 8, 0}, {8, 24.0001, 0}, {0, 0, 24.0001}};
        e.NMpinv_reference = {{0.9556, 0.0112, 0.0013, 0.0208},
                            {0.0222, 0.9445, 0.0003, 0.0385},
                            {0.0108, 0.0215, 0.4843, 0.4369},
                            {0.0108, 0.0215, 0.4843, 0.4369}};
        e.converse_diff_reference = {{0.0393, -0.0168, 0.0123, 0.0058},
                                   {-0.0346, 0.1124, 0.0384, 0.0375},
                                   {0.0436, 0.0368, -0.0187, -0.0724}};
        return e;
    }();
    return ex;
}

const DoublePairExample& type_two_pair() {
    static const DoublePairExample ex = [] {
        DoublePairExample e;
        e.A = {{10, -4}, {-4, 6}};
        e.P1 = {{12, 0}, {0, 8}};
        e.R1 = {{2, 2}, {4, 2}};
        e.S1 = {{0, -2}, {0, 0}};
        e.P2 = {{16, 0}, {0, 10}};
        e.R2 = {{6, 2}, {0, 4}};
        e.S2 = {{0, -2}, {-4, 0}};
        e.P2Ainv_reference = {{2.1818, 1.4545}, {0.9091, 2.2727}};
        e.P1Ainv_reference = {{1.6364, 1.0909}, {0.7273, 1.8182}};
        e.S2Ainv_reference = {{-0.1818, -0.4545}, {-0.5455, -0.3636}};
        e.S1Ainv_reference = {{-0.1818, -0.4545}, {0, 0}};
        e.rate_diff_reference = {{-0.2083, 0.0500}, {0.3333, -0.1500}};
        e.scale_diff_reference = {{0.2083, -0.1000}, {-0.0833, 0.1500}};
        return e;
    }();
    return ex;
}

const RegularizedDoubleExample& regularized_double() {
    static const RegularizedDoubleExample ex = [] {
        RegularizedDoubleExample e;
        e.A = {{4, 2, 0}, {2, 1, 0}, {0, 0, 2}};
        e.P = {{12, 6, 0}, {4, 2, 0}, {0, 0, 3}};
        e.R = {{7, 3, 0}, {3, 0.5, 0}, {0, 0, 0.5}};
        e.S = {{-1, -1, 0}, {-1, -0.5, 0}, {0, 0, -0.5}};
        e.P_lambda = {{24.0001, 12, 0}, {12, 6.0001, 0}, {0, 0, 4.5001}};
        e.R_lambda = {{2, 0, 0}, {1, 0, 0}, {0, 0, 0.5}};
        e.S_lambda = {{-2, -2, 0}, {-1, -1, 0}, {0, 0, 0}};
        e.B_reference = {{20.0001, 10, 0}, {10, 5.0001, 0}, {0, 0, 4.0001}};
        e.right_diff_reference = {{0.4133, 0.1900, 0}, {0.2067, 0.0950, 0}, {0, 0, 0.0556}};
        e.left_diff_reference = {{0.0133, 0.0033, 0}, {0.0067, 0.0017, 0}, {0, 0, 0.1667}};
        return e;
    }();
    return ex;
}

}  // namespace splitlab::fixtures
