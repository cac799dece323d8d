#pragma once

#include "mtsep/params.hpp"

#include <vector>

namespace test_support {

inline double frac(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

inline mtsep::SystemParams make_params(int n_cells, double alpha,
                                       std::vector<mtsep::TypeSpec> types) {
    mtsep::SystemParams params;
    params.n_cells = n_cells;
    params.alpha = alpha;
    params.types = std::move(types);
    return params;
}

// Reference-table row 1: alpha=2/5, a=(3/7,4/7), p=(3/5,4/5), beta=(3/10,2/5).
inline mtsep::SystemParams row1_params() {
    return make_params(2, frac(2, 5),
                       {{frac(3, 7), frac(3, 5), frac(3, 10)},
                        {frac(4, 7), frac(4, 5), frac(2, 5)}});
}

// Reference-table row 2: alpha=1/5, a=(2/5,3/5), p=(2/5,3/5), beta=(1/5,3/10).
inline mtsep::SystemParams row2_params() {
    return make_params(2, frac(1, 5),
                       {{frac(2, 5), frac(2, 5), frac(1, 5)},
                        {frac(3, 5), frac(3, 5), frac(3, 10)}});
}

} // namespace test_support
