#include "giniflow/dynamics.hpp"

#include "giniflow/errors.hpp"
#include "giniflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "json.hpp"

namespace giniflow {

namespace {

void validate_terms(const DynamicsTerms& t) {
    if (!std::isfinite(t.income_dispersion) || !std::isfinite(t.adoption_level) ||
        !std::isfinite(t.gini_level) || !std::isfinite(t.ricci_integral) ||
        !std::isfinite(t.unemployment_level)) {
        throw DomainError("dynamics terms must be finite");
    }
    if (t.income_dispersion < 0.0) throw DomainError("income_dispersion must be nonnegative");
    if (t.unemployment_level < 0.0) throw DomainError("unemployment_level must be nonnegative");
    if (t.gini_level < 0.0 || t.gini_level > 1.0) throw DomainError("gini_level must be in [0, 1]");
}

}  // namespace

double mean_income(std::span<const double> incomes) {
    if (incomes.empty()) throw DomainError("mean_income requires at least one value");
    double sum = 0.0;
    for (double v : incomes) {
        if (!std::isfinite(v)) throw DomainError("mean_income requires finite values");
        sum += v;
    }
    return sum / static_cast<double>(incomes.size());
}

double income_dispersion_from_series(std::span<const double> mean_income_by_year) {
    if (mean_income_by_year.size() < 2) {
        throw DomainError("income dispersion needs at least two samples");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < mean_income_by_year.size(); ++i) {
        if (!std::isfinite(mean_income_by_year[i]) || !std::isfinite(mean_income_by_year[i + 1])) {
            throw DomainError("income series must be finite");
        }
        const double step = mean_income_by_year[i + 1] - mean_income_by_year[i];
        sum += step * step;
    }
    return sum;
}

double adoption_level(const AdoptionCurve& c, double t) {
    if (!(c.steepness > 0.0) || !std::isfinite(c.steepness)) {
        throw DomainError("adoption curve steepness must be positive");
    }
    if (!std::isfinite(c.eta) || !std::isfinite(c.t_zero) || !std::isfinite(t)) {
        throw DomainError("adoption curve inputs must be finite");
    }
    // as_printed: eta*(1 - 1/(1+e^{-x})) == eta/(1+e^{x}); the algebraic form
    // avoids the cancellation that would collapse the tail to exactly zero.
    const double x = c.steepness * (t - c.t_zero);
    const double z = c.orientation == CurveOrientation::as_printed ? x : -x;
    return c.eta / (1.0 + std::exp(z));
}

GiniRateBreakdown gini_rate_breakdown(const GiniModelCoefficients& c, const DynamicsTerms& terms) {
    if (!std::isfinite(c.alpha_c) || !std::isfinite(c.beta_c) || !std::isfinite(c.gamma_c) ||
        !std::isfinite(c.delta_u)) {
        throw DomainError("coefficients must be finite");
    }
    validate_terms(terms);
    GiniRateBreakdown b;
    b.dispersion_term = -c.alpha_c * terms.income_dispersion;
    b.technology_term = c.beta_c * (terms.adoption_level * terms.gini_level);
    b.ricci_term = -c.gamma_c * terms.ricci_integral;
    b.unemployment_term = -c.delta_u * terms.unemployment_level;
    b.total = b.dispersion_term + b.technology_term + b.ricci_term + b.unemployment_term;
    return b;
}

double gini_rate(const GiniModelCoefficients& c, const DynamicsTerms& terms) {
    return gini_rate_breakdown(c, terms).total;
}

TermProviders constant_terms(double income_dispersion, double adoption, double ricci_integral,
                             double unemployment) {
    TermProviders p;
    p.income_dispersion = [income_dispersion](double) { return income_dispersion; };
    p.adoption_level = [adoption](double) { return adoption; };
    p.ricci_integral = [ricci_integral](double) { return ricci_integral; };
    p.unemployment_level = [unemployment](double) { return unemployment; };
    return p;
}

GiniTrajectory integrate_gini(double g0, const GiniModelCoefficients& c, const TermProviders& providers,
                              std::pair<double, double> t_span, double step) {
    const auto [t_start, t_end] = t_span;
    if (!(t_end > t_start)) throw DomainError("t_end must exceed t_start");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("step must be positive");
    if (!(g0 >= 0.0 && g0 <= 1.0)) throw DomainError("g0 must be in [0, 1]");
    if (!providers.income_dispersion || !providers.adoption_level || !providers.ricci_integral ||
        !providers.unemployment_level) {
        throw DomainError("all term providers must be set");
    }

    GiniTrajectory traj;
    traj.step = step;
    traj.samples.push_back({t_start, g0, false});

    double g = g0;
    double t = t_start;
    std::size_t k = 0;
    while (t < t_end) {
        double t_next = t_start + static_cast<double>(k + 1) * step;
        if (t_next >= t_end - step * 1e-9) t_next = t_end;  // land exactly on t_end
        const double h = t_next - t;

        DynamicsTerms terms;
        terms.income_dispersion = providers.income_dispersion(t);
        terms.adoption_level = providers.adoption_level(t);
        terms.gini_level = g;
        terms.ricci_integral = providers.ricci_integral(t);
        terms.unemployment_level = providers.unemployment_level(t);
        double rate = 0.0;
        try {
            rate = gini_rate(c, terms);
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at t = " + format_double(t));
        }
        if (!std::isfinite(rate)) {
            throw DomainError("non-finite rate at t = " + format_double(t));
        }

        double next = g + h * rate;
        bool clamped = false;
        if (next < 0.0) {
            next = 0.0;
            clamped = true;
        } else if (next > 1.0) {
            next = 1.0;
            clamped = true;
        }
        if (clamped) ++traj.clamp_events;
        g = next;
        t = t_next;
        ++k;
        traj.samples.push_back({t, g, clamped});
    }
    return traj;
}

std::string trajectory_csv(const GiniTrajectory& traj) {
    std::string out = "t,G,clamped\n";
    for (const auto& s : traj.samples) {
        out += format_double(s.t);
        out += ',';
        out += format_double(s.gini);
        out += ',';
        out += s.clamped ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string trajectory_json(const GiniTrajectory& traj) {
    nlohmann::ordered_json obj;
    obj["step"] = traj.step;
    obj["clamp_events"] = traj.clamp_events;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& s : traj.samples) {
        samples.push_back({{"t", s.t}, {"G", s.gini}, {"clamped", s.clamped}});
    }
    obj["samples"] = std::move(samples);
    return obj.dump(2) + "\n";
}

namespace {

double require_number(const nlohmann::json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw SchemaError(std::string("scenario ") + where + ": missing numeric '" + key + "'");
    }
    return obj[key].get<double>();
}

}  // namespace

Scenario load_scenario(std::istream& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid scenario JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("scenario must be a JSON object");

    Scenario s;
    s.label = doc.value("label", std::string{});
    s.g0 = require_number(doc, "g0", "root");
    if (!(s.g0 >= 0.0 && s.g0 <= 1.0)) throw DomainError("scenario g0 must be in [0, 1]");

    if (!doc.contains("coefficients") || !doc["coefficients"].is_object()) {
        throw SchemaError("scenario root: missing 'coefficients' object");
    }
    const auto& coeff = doc["coefficients"];
    s.coefficients.alpha_c = require_number(coeff, "alpha", "coefficients");
    s.coefficients.beta_c = require_number(coeff, "beta", "coefficients");
    s.coefficients.gamma_c = require_number(coeff, "gamma", "coefficients");
    s.coefficients.delta_u = require_number(coeff, "delta", "coefficients");

    if (doc.contains("adoption")) {
        if (!doc["adoption"].is_object()) throw SchemaError("scenario 'adoption' must be an object");
        const auto& curve = doc["adoption"];
        AdoptionCurve c;
        c.eta = require_number(curve, "eta", "adoption");
        c.steepness = require_number(curve, "steepness", "adoption");
        c.t_zero = require_number(curve, "t0", "adoption");
        const std::string orientation = curve.value("orientation", std::string("as_printed"));
        if (orientation == "as_printed") {
            c.orientation = CurveOrientation::as_printed;
        } else if (orientation == "increasing") {
            c.orientation = CurveOrientation::increasing;
        } else {
            throw SchemaError("scenario adoption orientation must be 'as_printed' or 'increasing'");
        }
        s.adoption = c;
    }

    if (doc.contains("terms")) {
        if (!doc["terms"].is_object()) throw SchemaError("scenario 'terms' must be an object");
        const auto& terms = doc["terms"];
        if (terms.contains("income_dispersion")) {
            s.income_dispersion = require_number(terms, "income_dispersion", "terms");
        }
        if (terms.contains("adoption_level")) {
            s.adoption_override = require_number(terms, "adoption_level", "terms");
        }
        s.ricci_integral = terms.contains("ricci_integral")
                               ? require_number(terms, "ricci_integral", "terms")
                               : 0.0;
        s.unemployment_level = terms.contains("unemployment_level")
                                   ? require_number(terms, "unemployment_level", "terms")
                                   : 0.0;
    }

    if (doc.contains("income_series")) {
        if (!doc["income_series"].is_array()) {
            throw SchemaError("scenario 'income_series' must be an array of numbers");
        }
        for (const auto& v : doc["income_series"]) {
            if (!v.is_number()) throw SchemaError("scenario 'income_series' must be numeric");
            s.income_series.push_back(v.get<double>());
        }
    }

    if (!doc.contains("span") || !doc["span"].is_array() || doc["span"].size() != 2 ||
        !doc["span"][0].is_number() || !doc["span"][1].is_number()) {
        throw SchemaError("scenario root: 'span' must be a [t_start, t_end] number pair");
    }
    s.t_start = doc["span"][0].get<double>();
    s.t_end = doc["span"][1].get<double>();
    s.step = require_number(doc, "step", "root");
    if (doc.contains("t")) s.eval_t = require_number(doc, "t", "root");

    if (!s.adoption && !s.adoption_override) {
        throw SchemaError("scenario needs an 'adoption' curve or a terms.adoption_level override");
    }
    if (!s.income_dispersion && s.income_series.empty()) {
        throw SchemaError("scenario needs terms.income_dispersion or an income_series");
    }
    return s;
}

double scenario_dispersion(const Scenario& s) {
    if (!s.income_series.empty()) {
        return income_dispersion_from_series(s.income_series);
    }
    return *s.income_dispersion;
}

TermProviders scenario_terms(const Scenario& s) {
    TermProviders p;
    const double dispersion = scenario_dispersion(s);
    p.income_dispersion = [dispersion](double) { return dispersion; };
    if (s.adoption_override) {
        const double a = *s.adoption_override;
        p.adoption_level = [a](double) { return a; };
    } else {
        const AdoptionCurve curve = *s.adoption;
        p.adoption_level = [curve](double t) { return adoption_level(curve, t); };
    }
    p.ricci_integral = [r = s.ricci_integral](double) { return r; };
    p.unemployment_level = [u = s.unemployment_level](double) { return u; };
    return p;
}

}  // namespace giniflow
