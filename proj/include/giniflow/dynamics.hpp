#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace giniflow {

struct GiniModelCoefficients {
    double alpha_c = 0.0;  // income-dispersion sensitivity
    double beta_c = 0.0;   // technology coefficient
    double gamma_c = 0.0;  // curvature-integral coefficient
    double delta_u = 0.0;  // unemployment coefficient
};

struct DynamicsTerms {
    double income_dispersion = 0.0;   // >= 0
    double adoption_level = 0.0;      // A(t)
    double gini_level = 0.0;          // G(t) in [0,1]
    double ricci_integral = 0.0;      // scalar surrogate of the curvature integral
    double unemployment_level = 0.0;  // >= 0
};

enum class CurveOrientation {
    as_printed,  // eta * (1 - 1/(1 + e^{-k (t - t0)})), decreasing in t
    increasing,  // eta * 1/(1 + e^{-k (t - t0)})
};

struct AdoptionCurve {
    double eta = 1.0;        // scale, treated as a constant
    double steepness = 1.0;  // spread, > 0
    double t_zero = 0.0;     // inflection time
    CurveOrientation orientation = CurveOrientation::as_printed;
};

struct GiniRateBreakdown {
    double dispersion_term = 0.0;    // -alpha * dispersion
    double technology_term = 0.0;    // beta * (A * G)
    double ricci_term = 0.0;         // -gamma * curvature integral
    double unemployment_term = 0.0;  // -delta * U
    double total = 0.0;
};

/// Arithmetic mean of a non-empty income series.
double mean_income(std::span<const double> incomes);

/// Sum of squared consecutive changes of the mean-income series (>= 2 samples).
double income_dispersion_from_series(std::span<const double> mean_income_by_year);

double adoption_level(const AdoptionCurve& c, double t);

/// Rate of change of the Gini coefficient:
/// -alpha*D + beta*(A*G) - gamma*Ric - delta*U.
double gini_rate(const GiniModelCoefficients& c, const DynamicsTerms& terms);
GiniRateBreakdown gini_rate_breakdown(const GiniModelCoefficients& c, const DynamicsTerms& terms);

// Per-time term sources for integration; the Gini level itself always comes
// from the integration state.
struct TermProviders {
    std::function<double(double)> income_dispersion;
    std::function<double(double)> adoption_level;
    std::function<double(double)> ricci_integral;
    std::function<double(double)> unemployment_level;
};

TermProviders constant_terms(double income_dispersion, double adoption, double ricci_integral,
                             double unemployment);

struct TrajectorySample {
    double t = 0.0;
    double gini = 0.0;
    bool clamped = false;
};

struct GiniTrajectory {
    std::vector<TrajectorySample> samples;  // strictly increasing t, both endpoints included
    double step = 0.0;
    int clamp_events = 0;
};

// Explicit Euler: G_{k+1} = clamp(G_k + h * rate, 0, 1). The final step is
// shortened to land exactly on t_end.
GiniTrajectory integrate_gini(double g0, const GiniModelCoefficients& c, const TermProviders& providers,
                              std::pair<double, double> t_span, double step);

std::string trajectory_csv(const GiniTrajectory& traj);  // t,G,clamped
std::string trajectory_json(const GiniTrajectory& traj);

// Scenario definition file (JSON): coefficients, adoption curve, term
// overrides (or an income series for the dispersion estimator), span, step.
struct Scenario {
    std::string label;
    double g0 = 0.0;
    GiniModelCoefficients coefficients;
    std::optional<AdoptionCurve> adoption;
    std::optional<double> adoption_override;  // constant A(t); takes precedence over the curve
    std::optional<double> income_dispersion;
    std::vector<double> income_series;  // when non-empty, dispersion is estimated from it
    double ricci_integral = 0.0;
    double unemployment_level = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    double step = 0.0;
    std::optional<double> eval_t;  // point-evaluation time; defaults to t_start
};

Scenario load_scenario(std::istream& source);
double scenario_dispersion(const Scenario& s);
TermProviders scenario_terms(const Scenario& s);

}  // namespace giniflow
