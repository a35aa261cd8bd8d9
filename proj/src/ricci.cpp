#include "giniflow/ricci.hpp"

#include "giniflow/errors.hpp"
#include "giniflow/report.hpp"

#include <cmath>

namespace giniflow {

double ricci_term(double alpha_weight, double ln_value) {
    if (!std::isfinite(alpha_weight) || !std::isfinite(ln_value)) {
        throw DomainError("ricci_term requires finite inputs");
    }
    return alpha_weight * ln_value;
}

RicciAggregate ricci_aggregate(const Dataset& d, RicciForm form) {
    RicciAggregate agg;
    const auto& records = d.records();
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        const auto& rec = records[i];
        const double value = form == RicciForm::log_weighted ? rec.ln_value : rec.raw_value;
        RicciTerm term;
        term.id = rec.id;
        term.alpha_weight = rec.alpha_weight;
        term.ln_value = rec.ln_value;
        term.contribution = ricci_term(rec.alpha_weight, value);
        agg.terms[i] = term;
        agg.sum_ln += rec.ln_value;
        agg.sum_ricci += term.contribution;
    }
    return agg;
}

std::vector<Table1Row> table1_rows(const RicciAggregate& agg, const Dataset& d) {
    std::vector<Table1Row> rows;
    rows.reserve(kIndicatorCount + 1);
    const auto& records = d.records();
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        const auto& rec = records[i];
        const auto& term = agg.terms[i];
        Table1Row row;
        row.indicator = std::string(indicator_name(rec.id));
        row.raw = rec.raw_display.empty() ? format_double(rec.raw_value) : rec.raw_display;
        row.ln = format_fixed(term.ln_value, 6);
        row.alpha_pct = format_fixed(term.alpha_weight * 100.0, 1);
        row.ricci = format_fixed(term.contribution, 2);
        rows.push_back(std::move(row));
    }
    Table1Row sum;
    sum.indicator = "sum";
    sum.ln = format_fixed(agg.sum_ln, 6);
    sum.ricci = format_fixed(agg.sum_ricci, 6);
    rows.push_back(std::move(sum));
    return rows;
}

}  // namespace giniflow
