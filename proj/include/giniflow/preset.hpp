#pragma once

#include "giniflow/indicators.hpp"

namespace giniflow {

// Published parameter set behind the georgia-2023 tables. Values are stored
// exactly as printed in the source tables; coefficients printed as percents
// (-5.8, -11.8, 23.4, -5.7) are stored as fractions.
struct GiniRateParams {
    double income_dispersion = 0.0;  // 224288
    double alpha_c = 0.0;            // -0.058
    double gamma_c = 0.0;            // -0.118
    double delta_u = 0.0;            // 0.234
    double unemployment = 0.0;       // 262
    double beta_c = 0.0;             // -0.057
    double grad_f_sq = 0.0;          // 198
    double tau = 0.0;                // 15
    double f_potential = 0.0;        // 0
    int n_dim = 0;                   // 16
};

// Published W factors. The printed normalization/weight pair is inconsistent
// with the closed forms; reproduction uses norm 1.0 + weight 0.927 (see the
// wfunctional module), and the printed 1.01 is retained here for disclosure.
struct WOverrides {
    double normalization = 0.0;       // 1.01 as published
    double weight = 0.0;              // 0.927 (printed as 92.7)
    double w_reported = 0.0;          // 2795
    double gini_rate_reported = 0.0;  // 13219
};

struct ReferencePreset {
    Dataset dataset;  // all 16 rows, ln and alpha stored as published
    GiniRateParams gini_params;
    WOverrides w_overrides;
    double ln_sum_reported = 0.0;         // 32.39573
    double ricci_sum_reported = 0.0;      // 4.284181
    double gini_level = 0.0;              // 0.36
    double adoption_binding = 0.0;        // 2795, A(t) bound to the reported W
    double ricci_integral_binding = 0.0;  // 2795, same binding
    double sensitivity_slope = 0.0;       // -0.66 per percent, from the sensitivity table
};

/// The bundled read-only georgia-2023 preset.
const ReferencePreset& georgia_2023();

}  // namespace giniflow
