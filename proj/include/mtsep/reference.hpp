#pragma once

#include "mtsep/params.hpp"

#include <array>
#include <vector>

namespace mtsep {

// Reproduction targets: the published two-cell reference table (five
// two-type instances) and the published three-cell example. Parameters are
// embedded as integer ratios, never re-rounded decimals. Reference values
// are printed to four decimals, so reproduction allows one unit in the
// last digit.
inline constexpr double kReferenceTol = 5e-5;

struct ReferenceRow {
    int id = 0;
    SystemParams params;
    std::array<double, 3> exact_ref{};   // rho_1, rho_2, J
    std::array<double, 3> approx_ref{};  // surrogate rho_1*, rho_2*, J*
};

const std::vector<ReferenceRow>& reference_rows();

struct ThreeCellReference {
    SystemParams params;
    std::array<double, 4> exact_ref{};   // rho_1..rho_3, J
    std::array<double, 4> approx_ref{};
};

const ThreeCellReference& three_cell_reference();

// Round-half-to-even at `digits` decimal places (display rounding for the
// reproduction table).
double round_half_to_even(double value, int digits);

struct CellComparison {
    double computed = 0.0;
    double rounded = 0.0;
    double reference = 0.0;
    bool match = false;  // |computed - reference| <= kReferenceTol
};

struct Table1RowResult {
    int id = 0;
    std::array<CellComparison, 3> exact{};
    std::array<CellComparison, 3> approx{};

    bool all_match() const;
};

// Runs the exact and surrogate pipelines for every reference row and
// compares against the printed values.
std::vector<Table1RowResult> reproduce_table1();

} // namespace mtsep
