#pragma once

#include "giniflow/dynamics.hpp"
#include "giniflow/indicators.hpp"

#include <span>
#include <string>
#include <vector>

namespace giniflow {

struct SensitivityRow {
    double increase_pct = 0.0;
    double gini_rate_change = 0.0;
};

/// Linear sweep: change = slope_per_pct * increase_pct. Rows sorted by increase_pct.
std::vector<SensitivityRow> sensitivity_sweep(double slope_per_pct, std::span<const double> increases);

// Model-consistent sweep: the rate is re-evaluated with the adoption level
// scaled by (1 + p/100) and reported against the base rate, which reduces to
// beta * G * A * p/100 and is exactly linear in p.
std::vector<SensitivityRow> sensitivity_from_model(const GiniModelCoefficients& c,
                                                   const DynamicsTerms& base_terms,
                                                   std::span<const double> increases);

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  // in [0,1]; defined 0 when SST == 0
    double z_stat = 0.0;     // slope / SE(slope), residual variance with n-2 denominator
    double p_value = 1.0;    // two-tailed normal tail probability of |z|
    int n_obs = 0;
};

// Least squares of y on x. Throws DomainError on length mismatch / n < 3 /
// non-finite input and DegenerateDataError when x is constant.
RegressionResult ols_fit(std::span<const double> x, std::span<const double> y);

enum class R2Band { below, in_band, above };  // in_band = [0.80, 0.90]

struct IndicatorSeries {
    IndicatorId id{};
    std::vector<double> values;
};

struct CalibrationEntry {
    IndicatorId id{};
    bool ok = false;
    RegressionResult fit{};
    R2Band band = R2Band::below;
    bool significant = false;  // p < 0.05
    std::string error;         // per-indicator failure; empty when ok
};

// One fit per indicator against the GDP series; per-indicator failures become
// error entries, results merged in canonical indicator order. A degenerate
// GDP series (constant or too short) fails the whole calibration.
std::vector<CalibrationEntry> calibrate_indicators(std::span<const IndicatorSeries> panel,
                                                   std::span<const double> gdp);

}  // namespace giniflow
