#pragma once

#include <optional>
#include <string>

namespace giniflow {

enum class FactorMode { formula, override_value };

// Scalar reduction of the entropy functional: the economic space integral
// collapses to multiplication by `volume`. Override factors exist because the
// published normalization/weight constants cannot be derived from the closed
// forms; results always record which mode produced each factor.
struct WParams {
    double tau = 1.0;        // time scale, > 0
    double f_potential = 0.0;
    int n_dim = 1;           // factor count, >= 1
    double grad_f_sq = 0.0;  // |grad f|^2, >= 0
    double ricci_scalar = 0.0;
    double volume = 1.0;     // > 0
    std::optional<double> norm_override;
    std::optional<double> weight_override;
};

struct WResult {
    double core = 0.0;  // tau*(R + |grad f|^2) + f - n
    double normalization = 0.0;
    double weight = 0.0;
    double volume = 1.0;
    double w_value = 0.0;  // core * normalization * weight * volume
    FactorMode norm_mode = FactorMode::formula;
    FactorMode weight_mode = FactorMode::formula;
};

double w_core(double tau, double ricci_scalar, double grad_f_sq, double f_potential, double n_dim);
double w_normalization(double tau, double n_dim);  // (4*pi*tau)^(-n/2)
double w_weight(double f_potential);               // exp(-f)
WResult evaluate_w(const WParams& p);

/// Exponential growth potential: base * exp(rate * t).
double rd_potential(double base, double rate, double t);

/// JSON serialization with all four factors and the mode flags.
std::string w_result_json(const WResult& r);

}  // namespace giniflow
