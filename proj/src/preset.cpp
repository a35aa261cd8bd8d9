#include "giniflow/preset.hpp"

#include <vector>

namespace giniflow {

namespace {

struct PresetRow {
    IndicatorId id;
    double raw;
    double ln;        // stored exactly as published
    double alpha;     // published percent / 100
    const char* unit;
    const char* display;
    bool rounded;     // raw display too coarse to invert to the published ln
};

// Percent-typed indicators are stored as fractions (0.164, not 16.4); the
// published ln column follows that convention. Migration is stored as the
// positive magnitude with the negative sense carried by its alpha weight.
constexpr PresetRow kRows[] = {
    {IndicatorId::income_distribution, 0.36, -1.01015, -0.208, "ratio", "0.36", true},
    {IndicatorId::productivity, 11.0007463, 2.397963, 0.243, "GEL per hour", "11.0007463", false},
    {IndicatorId::unemployment, 0.164, -1.80809, -0.196, "percent", "16.4%", true},
    {IndicatorId::investment, 0.062, -2.77593, 0.234, "percent", "6.2%", true},
    {IndicatorId::inflation, 0.025, -3.68888, -0.146, "percent", "2.5%", true},
    {IndicatorId::migration, 39207.0, 10.57661, -0.056, "persons", "39,207", false},
    {IndicatorId::education, 1128.35, 7.028508, 0.132, "index", "1,128.35", false},
    {IndicatorId::social_mobility, 55.60, 4.018183, 0.063, "index", "55.60", false},
    {IndicatorId::trade_infrastructure, 2.7, 0.993252, 0.177, "index", "2.7", false},
    {IndicatorId::capital_flows, 272.46, 5.607492, -0.164, "GEL", "272.46", false},
    {IndicatorId::innovation, 29.9, 3.397858, 0.217, "index", "29.9", false},
    {IndicatorId::healthcare_access, 75.0, 4.317488, 0.034, "index", "75", false},
    {IndicatorId::fiscal_policy, 0.025, -3.70145, -0.148, "percent", "2.5%", true},
    {IndicatorId::international_trade, 0.27, -1.30825, 0.112, "percent", "27.0%", true},
    {IndicatorId::social_protection, 5340.3, 8.583037, 0.253, "GEL", "5340.3", false},
    {IndicatorId::technological_access, 0.793, -0.23193, 0.224, "percent", "79.30%", false},
};

ReferencePreset build_preset() {
    std::vector<IndicatorRecord> records;
    records.reserve(kIndicatorCount);
    for (const auto& row : kRows) {
        IndicatorRecord rec;
        rec.id = row.id;
        rec.raw_value = row.raw;
        rec.ln_value = row.ln;
        rec.alpha_weight = row.alpha;
        rec.unit_label = row.unit;
        rec.raw_display = row.display;
        rec.raw_rounded = row.rounded;
        records.push_back(std::move(rec));
    }
    ReferencePreset preset{
        Dataset(std::move(records), "georgia-2023", 2023),
        GiniRateParams{
            224288.0,  // income dispersion
            -0.058,    // alpha
            -0.118,    // gamma
            0.234,     // delta
            262.0,     // unemployment rate
            -0.057,    // beta
            198.0,     // |grad f|^2
            15.0,      // tau
            0.0,       // f
            16,        // n
        },
        WOverrides{1.01, 0.927, 2795.0, 13219.0},
        32.39573,  // published ln sum
        4.284181,  // published ricci sum
        0.36,      // G level
        2795.0,    // adoption level bound to the reported W
        2795.0,    // curvature integral bound to the reported W
        -0.66,     // sensitivity slope per percent
    };
    return preset;
}

}  // namespace

const ReferencePreset& georgia_2023() {
    static const ReferencePreset preset = build_preset();
    return preset;
}

}  // namespace giniflow
