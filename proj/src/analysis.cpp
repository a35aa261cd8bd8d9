#include "giniflow/analysis.hpp"

#include "giniflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace giniflow {

std::vector<SensitivityRow> sensitivity_sweep(double slope_per_pct, std::span<const double> increases) {
    if (increases.empty()) throw DomainError("sensitivity sweep needs at least one increase");
    if (!std::isfinite(slope_per_pct)) throw DomainError("slope must be finite");
    std::vector<SensitivityRow> rows;
    rows.reserve(increases.size());
    for (double p : increases) {
        if (!std::isfinite(p)) throw DomainError("increase values must be finite");
        rows.push_back({p, slope_per_pct * p});
    }
    std::sort(rows.begin(), rows.end(),
              [](const SensitivityRow& a, const SensitivityRow& b) { return a.increase_pct < b.increase_pct; });
    return rows;
}

std::vector<SensitivityRow> sensitivity_from_model(const GiniModelCoefficients& c,
                                                   const DynamicsTerms& base_terms,
                                                   std::span<const double> increases) {
    if (increases.empty()) throw DomainError("sensitivity sweep needs at least one increase");
    (void)gini_rate(c, base_terms);  // validates coefficients and terms
    // Only the technology term responds to the scaling, so the change reduces
    // to beta * G * A * p/100; computing it directly keeps linearity exact.
    const double per_unit = c.beta_c * base_terms.gini_level * base_terms.adoption_level;
    std::vector<SensitivityRow> rows;
    rows.reserve(increases.size());
    for (double p : increases) {
        if (!std::isfinite(p)) throw DomainError("increase values must be finite");
        rows.push_back({p, per_unit * (p / 100.0)});
    }
    std::sort(rows.begin(), rows.end(),
              [](const SensitivityRow& a, const SensitivityRow& b) { return a.increase_pct < b.increase_pct; });
    return rows;
}

RegressionResult ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("ols_fit: x and y lengths differ");
    const std::size_t n = x.size();
    if (n < 3) throw DomainError("ols_fit needs at least 3 observations");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw DomainError("ols_fit requires finite observations");
        }
    }

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (y[i] - mean_y);
    }
    if (sxx == 0.0) throw DegenerateDataError("ols_fit: constant x (degenerate design)");

    RegressionResult r;
    r.n_obs = static_cast<int>(n);
    r.slope = sxy / sxx;
    r.intercept = mean_y - r.slope * mean_x;

    double ssr = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = y[i] - (r.intercept + r.slope * x[i]);
        ssr += res * res;
        const double dy = y[i] - mean_y;
        sst += dy * dy;
    }
    r.r_squared = sst == 0.0 ? 0.0 : std::clamp(1.0 - ssr / sst, 0.0, 1.0);

    const double se = std::sqrt((ssr / static_cast<double>(n - 2)) / sxx);
    if (se == 0.0) {
        r.z_stat = r.slope == 0.0 ? 0.0 : std::copysign(HUGE_VAL, r.slope);
    } else {
        r.z_stat = r.slope / se;
    }
    // Two-tailed normal tail, per the published Z vocabulary (not Student-t).
    r.p_value = std::isinf(r.z_stat) ? 0.0 : std::erfc(std::abs(r.z_stat) / std::sqrt(2.0));
    return r;
}

std::vector<CalibrationEntry> calibrate_indicators(std::span<const IndicatorSeries> panel,
                                                   std::span<const double> gdp) {
    if (gdp.size() < 3) throw DegenerateDataError("GDP series needs at least 3 observations");
    for (double v : gdp) {
        if (!std::isfinite(v)) throw DomainError("GDP series must be finite");
    }
    const double first = gdp.front();
    if (std::all_of(gdp.begin(), gdp.end(), [first](double v) { return v == first; })) {
        throw DegenerateDataError("constant GDP series (degenerate design)");
    }

    std::vector<CalibrationEntry> entries;
    entries.reserve(panel.size());
    for (const auto& series : panel) {
        CalibrationEntry entry;
        entry.id = series.id;
        if (series.values.size() != gdp.size()) {
            entry.error = "series length " + std::to_string(series.values.size()) +
                          " does not match GDP length " + std::to_string(gdp.size());
        } else {
            try {
                entry.fit = ols_fit(gdp, series.values);
                entry.ok = true;
                entry.band = entry.fit.r_squared < 0.80  ? R2Band::below
                             : entry.fit.r_squared <= 0.90 ? R2Band::in_band
                                                           : R2Band::above;
                entry.significant = entry.fit.p_value < 0.05;
            } catch (const std::exception& e) {
                entry.error = e.what();
            }
        }
        entries.push_back(std::move(entry));
    }
    std::sort(entries.begin(), entries.end(), [](const CalibrationEntry& a, const CalibrationEntry& b) {
        return static_cast<int>(a.id) < static_cast<int>(b.id);
    });
    return entries;
}

}  // namespace giniflow
