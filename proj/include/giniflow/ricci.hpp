#pragma once

#include "giniflow/indicators.hpp"

#include <array>
#include <string>
#include <vector>

namespace giniflow {

struct RicciTerm {
    IndicatorId id{};
    double alpha_weight = 0.0;
    double ln_value = 0.0;
    double contribution = 0.0;  // alpha_weight * ln_value
};

struct RicciAggregate {
    std::array<RicciTerm, kIndicatorCount> terms{};  // canonical order
    double sum_ln = 0.0;
    double sum_ricci = 0.0;  // the scalar curvature surrogate R
};

// The published columns weight the log-transformed value; the raw-linear
// variant weights the untransformed value instead and reproduces none of them.
enum class RicciForm { log_weighted, raw_linear };

/// Per-indicator contribution alpha * ln. Throws DomainError on non-finite input.
double ricci_term(double alpha_weight, double ln_value);

// Terms in canonical order; both sums accumulated in that fixed order.
RicciAggregate ricci_aggregate(const Dataset& d, RicciForm form = RicciForm::log_weighted);

struct Table1Row {
    std::string indicator;
    std::string raw;
    std::string ln;         // 6 decimals
    std::string alpha_pct;  // percent, 1 decimal
    std::string ricci;      // 2 decimals
};

/// 16 formatted rows plus a trailing sum row (indicator = "sum").
std::vector<Table1Row> table1_rows(const RicciAggregate& agg, const Dataset& d);

}  // namespace giniflow
