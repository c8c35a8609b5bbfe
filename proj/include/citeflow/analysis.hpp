#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "citeflow/indicators.hpp"

namespace citeflow {

// ============================================================================
// Regression and correlation
// ============================================================================

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

// Ordinary least squares y = intercept + slope * x. Throws SemanticError on
// size mismatch, fewer than two points, or constant x. A constant y yields
// r_squared = 0 by convention.
FitResult ols_fit(std::span<const double> x, std::span<const double> y);

// Sample correlation coefficient. Throws SemanticError when either input is
// constant (or on size mismatch / fewer than two points).
double pearson(std::span<const double> x, std::span<const double> y);

// ============================================================================
// Pair records
// ============================================================================

// One row of the citing x target table, as produced by profile computation
// or read back from a pair table file.
struct PairRecord {
    std::string citing;
    std::string cited;
    IkfTriple counts;
};

// Keeps, per citing entity, the ceil(percentile * group size) rows with the
// highest citation volume. Ties break by citation count descending, then
// target id ascending. Groups are ordered by citing id; rows within a group
// by the same rule.
std::vector<PairRecord> top_percentile_pairs(std::span<const PairRecord> records,
                                             double percentile);

// ============================================================================
// Empirical distribution
// ============================================================================

struct CdfPoint {
    double value = 0.0;
    double fraction = 0.0; // share of observations <= value
};

// Empirical CDF of `values`. grid_points == 0 emits one row per observation
// (at its value); otherwise rows at grid_points evenly spaced values from min
// to max. Fractions are non-decreasing and end at 1.
std::vector<CdfPoint> cdf_table(std::span<const double> values,
                                std::size_t grid_points = 0);

} // namespace citeflow
