#include "giniflow/analysis.hpp"
#include "giniflow/dynamics.hpp"
#include "giniflow/errors.hpp"
#include "giniflow/indicators.hpp"
#include "giniflow/preset.hpp"
#include "giniflow/ricci.hpp"
#include "giniflow/wfunctional.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <variant>

namespace py = pybind11;
using namespace giniflow;

namespace {

DataFormat parse_format(const std::string& format) {
    if (format == "csv") return DataFormat::csv;
    if (format == "json") return DataFormat::json;
    throw DomainError("format must be 'csv' or 'json'");
}

CurveOrientation parse_orientation(const std::string& orientation) {
    if (orientation == "as_printed") return CurveOrientation::as_printed;
    if (orientation == "increasing") return CurveOrientation::increasing;
    throw DomainError("orientation must be 'as_printed' or 'increasing'");
}

const char* mode_name(FactorMode mode) {
    return mode == FactorMode::formula ? "formula" : "override";
}

const char* band_name(R2Band band) {
    switch (band) {
        case R2Band::below: return "below-band";
        case R2Band::in_band: return "in-band";
        case R2Band::above: return "above-band";
    }
    return "below-band";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Inequality-dynamics model: weighted log-indicator aggregate, entropy-style "
              "functional, Gini rate equation, sensitivity sweeps and OLS calibration.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DegenerateDataError>(m, "DegenerateDataError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const SchemaError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::enum_<IndicatorId> indicator_id(m, "IndicatorId");
    for (IndicatorId id : canonical_indicators()) {
        indicator_id.value(std::string(indicator_name(id)).c_str(), id);
    }

    py::class_<IndicatorRecord>(m, "IndicatorRecord")
        .def_readonly("id", &IndicatorRecord::id)
        .def_readonly("raw_value", &IndicatorRecord::raw_value)
        .def_readonly("ln_value", &IndicatorRecord::ln_value)
        .def_readonly("alpha_weight", &IndicatorRecord::alpha_weight)
        .def_readonly("unit_label", &IndicatorRecord::unit_label)
        .def_readonly("raw_display", &IndicatorRecord::raw_display)
        .def_readonly("raw_rounded", &IndicatorRecord::raw_rounded)
        .def("__repr__", [](const IndicatorRecord& r) {
            std::ostringstream out;
            out << "IndicatorRecord(" << indicator_name(r.id) << ", raw=" << r.raw_value
                << ", ln=" << r.ln_value << ", alpha=" << r.alpha_weight << ")";
            return out.str();
        });

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("records", &Dataset::records)
        .def_property_readonly("label", &Dataset::label)
        .def_property_readonly("year", &Dataset::year)
        .def("record", &Dataset::record, py::arg("id"), py::return_value_policy::copy)
        .def("__repr__", [](const Dataset& d) {
            return "Dataset(" + d.label() + ", year=" + std::to_string(d.year()) + ")";
        });

    py::class_<ValidationEntry>(m, "ValidationEntry")
        .def_readonly("id", &ValidationEntry::id)
        .def_readonly("check", &ValidationEntry::check)
        .def_readonly("passed", &ValidationEntry::passed)
        .def_readonly("detail", &ValidationEntry::detail);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("entries", &ValidationReport::entries)
        .def_readonly("ok", &ValidationReport::ok);

    py::class_<GiniRateParams>(m, "GiniRateParams")
        .def_readonly("income_dispersion", &GiniRateParams::income_dispersion)
        .def_readonly("alpha", &GiniRateParams::alpha_c)
        .def_readonly("gamma", &GiniRateParams::gamma_c)
        .def_readonly("delta", &GiniRateParams::delta_u)
        .def_readonly("unemployment", &GiniRateParams::unemployment)
        .def_readonly("beta", &GiniRateParams::beta_c)
        .def_readonly("grad_f_sq", &GiniRateParams::grad_f_sq)
        .def_readonly("tau", &GiniRateParams::tau)
        .def_readonly("f_potential", &GiniRateParams::f_potential)
        .def_readonly("n_dim", &GiniRateParams::n_dim);

    py::class_<WOverrides>(m, "WOverrides")
        .def_readonly("normalization", &WOverrides::normalization)
        .def_readonly("weight", &WOverrides::weight)
        .def_readonly("w_reported", &WOverrides::w_reported)
        .def_readonly("gini_rate_reported", &WOverrides::gini_rate_reported);

    py::class_<ReferencePreset>(m, "ReferencePreset")
        .def_readonly("dataset", &ReferencePreset::dataset)
        .def_readonly("gini_params", &ReferencePreset::gini_params)
        .def_readonly("w_overrides", &ReferencePreset::w_overrides)
        .def_readonly("ln_sum_reported", &ReferencePreset::ln_sum_reported)
        .def_readonly("ricci_sum_reported", &ReferencePreset::ricci_sum_reported)
        .def_readonly("gini_level", &ReferencePreset::gini_level)
        .def_readonly("adoption_binding", &ReferencePreset::adoption_binding)
        .def_readonly("ricci_integral_binding", &ReferencePreset::ricci_integral_binding)
        .def_readonly("sensitivity_slope", &ReferencePreset::sensitivity_slope);

    m.def("georgia_2023", &georgia_2023, py::return_value_policy::copy,
          "The bundled read-only georgia-2023 preset.");

    m.def("log_transform", &log_transform, py::arg("raw"));
    m.def(
        "load_dataset",
        [](const std::string& text, const std::string& format, const std::string& label) {
            std::istringstream in(text);
            return load_dataset(in, parse_format(format), label);
        },
        py::arg("text"), py::arg("format") = "csv", py::arg("label") = "dataset",
        "Parse a dataset from CSV or JSON text.");
    m.def("load_dataset_file", &load_dataset_file, py::arg("path"), py::arg("label") = "");
    m.def("dataset_csv", &dataset_csv, py::arg("dataset"));
    m.def("dataset_json", &dataset_json, py::arg("dataset"));
    m.def("validate_dataset", &validate_dataset, py::arg("dataset"));

    py::class_<RicciTerm>(m, "RicciTerm")
        .def_readonly("id", &RicciTerm::id)
        .def_readonly("alpha_weight", &RicciTerm::alpha_weight)
        .def_readonly("ln_value", &RicciTerm::ln_value)
        .def_readonly("contribution", &RicciTerm::contribution);

    py::class_<RicciAggregate>(m, "RicciAggregate")
        .def_property_readonly("terms",
                               [](const RicciAggregate& agg) {
                                   return std::vector<RicciTerm>(agg.terms.begin(), agg.terms.end());
                               })
        .def_readonly("sum_ln", &RicciAggregate::sum_ln)
        .def_readonly("sum_ricci", &RicciAggregate::sum_ricci);

    m.def("ricci_term", &ricci_term, py::arg("alpha_weight"), py::arg("ln_value"));
    m.def(
        "ricci_aggregate",
        [](const Dataset& d, const std::string& form) {
            if (form == "log_weighted") return ricci_aggregate(d, RicciForm::log_weighted);
            if (form == "raw_linear") return ricci_aggregate(d, RicciForm::raw_linear);
            throw DomainError("form must be 'log_weighted' or 'raw_linear'");
        },
        py::arg("dataset"), py::arg("form") = "log_weighted");

    py::class_<WResult>(m, "WResult")
        .def_readonly("core", &WResult::core)
        .def_readonly("normalization", &WResult::normalization)
        .def_readonly("weight", &WResult::weight)
        .def_readonly("volume", &WResult::volume)
        .def_readonly("w_value", &WResult::w_value)
        .def_property_readonly("normalization_mode",
                               [](const WResult& r) { return mode_name(r.norm_mode); })
        .def_property_readonly("weight_mode",
                               [](const WResult& r) { return mode_name(r.weight_mode); })
        .def("__repr__", [](const WResult& r) {
            std::ostringstream out;
            out << "WResult(core=" << r.core << ", w_value=" << r.w_value << ")";
            return out.str();
        });

    m.def("w_core", &w_core, py::arg("tau"), py::arg("ricci_scalar"), py::arg("grad_f_sq"),
          py::arg("f_potential"), py::arg("n_dim"));
    m.def("w_normalization", &w_normalization, py::arg("tau"), py::arg("n_dim"));
    m.def("w_weight", &w_weight, py::arg("f_potential"));
    m.def(
        "evaluate_w",
        [](double tau, double ricci_scalar, double grad_f_sq, double f_potential, int n_dim,
           double volume, std::optional<double> norm_override, std::optional<double> weight_override) {
            WParams p;
            p.tau = tau;
            p.ricci_scalar = ricci_scalar;
            p.grad_f_sq = grad_f_sq;
            p.f_potential = f_potential;
            p.n_dim = n_dim;
            p.volume = volume;
            p.norm_override = norm_override;
            p.weight_override = weight_override;
            return evaluate_w(p);
        },
        py::arg("tau"), py::arg("ricci_scalar"), py::arg("grad_f_sq") = 0.0,
        py::arg("f_potential") = 0.0, py::arg("n_dim") = 1, py::arg("volume") = 1.0,
        py::arg("norm_override") = std::nullopt, py::arg("weight_override") = std::nullopt);
    m.def("rd_potential", &rd_potential, py::arg("base"), py::arg("rate"), py::arg("t"));

    py::class_<GiniModelCoefficients>(m, "GiniModelCoefficients")
        .def(py::init([](double alpha, double beta, double gamma, double delta) {
                 return GiniModelCoefficients{alpha, beta, gamma, delta};
             }),
             py::arg("alpha") = 0.0, py::arg("beta") = 0.0, py::arg("gamma") = 0.0,
             py::arg("delta") = 0.0)
        .def_readonly("alpha", &GiniModelCoefficients::alpha_c)
        .def_readonly("beta", &GiniModelCoefficients::beta_c)
        .def_readonly("gamma", &GiniModelCoefficients::gamma_c)
        .def_readonly("delta", &GiniModelCoefficients::delta_u);

    py::class_<DynamicsTerms>(m, "DynamicsTerms")
        .def(py::init([](double income_dispersion, double adoption_level, double gini_level,
                         double ricci_integral, double unemployment_level) {
                 return DynamicsTerms{income_dispersion, adoption_level, gini_level, ricci_integral,
                                      unemployment_level};
             }),
             py::arg("income_dispersion") = 0.0, py::arg("adoption_level") = 0.0,
             py::arg("gini_level") = 0.0, py::arg("ricci_integral") = 0.0,
             py::arg("unemployment_level") = 0.0)
        .def_readonly("income_dispersion", &DynamicsTerms::income_dispersion)
        .def_readonly("adoption_level", &DynamicsTerms::adoption_level)
        .def_readonly("gini_level", &DynamicsTerms::gini_level)
        .def_readonly("ricci_integral", &DynamicsTerms::ricci_integral)
        .def_readonly("unemployment_level", &DynamicsTerms::unemployment_level);

    py::class_<AdoptionCurve>(m, "AdoptionCurve")
        .def(py::init([](double eta, double steepness, double t_zero, const std::string& orientation) {
                 return AdoptionCurve{eta, steepness, t_zero, parse_orientation(orientation)};
             }),
             py::arg("eta") = 1.0, py::arg("steepness") = 1.0, py::arg("t_zero") = 0.0,
             py::arg("orientation") = "as_printed")
        .def_readonly("eta", &AdoptionCurve::eta)
        .def_readonly("steepness", &AdoptionCurve::steepness)
        .def_readonly("t_zero", &AdoptionCurve::t_zero);

    py::class_<GiniRateBreakdown>(m, "GiniRateBreakdown")
        .def_readonly("dispersion_term", &GiniRateBreakdown::dispersion_term)
        .def_readonly("technology_term", &GiniRateBreakdown::technology_term)
        .def_readonly("ricci_term", &GiniRateBreakdown::ricci_term)
        .def_readonly("unemployment_term", &GiniRateBreakdown::unemployment_term)
        .def_readonly("total", &GiniRateBreakdown::total);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("gini", &TrajectorySample::gini)
        .def_readonly("clamped", &TrajectorySample::clamped)
        .def("__repr__", [](const TrajectorySample& s) {
            std::ostringstream out;
            out << "TrajectorySample(t=" << s.t << ", gini=" << s.gini << ")";
            return out.str();
        });

    py::class_<GiniTrajectory>(m, "GiniTrajectory")
        .def_readonly("samples", &GiniTrajectory::samples)
        .def_readonly("step", &GiniTrajectory::step)
        .def_readonly("clamp_events", &GiniTrajectory::clamp_events);

    m.def("mean_income",
          [](const std::vector<double>& incomes) { return mean_income(incomes); },
          py::arg("incomes"));
    m.def("income_dispersion_from_series",
          [](const std::vector<double>& series) { return income_dispersion_from_series(series); },
          py::arg("mean_income_by_year"));
    m.def("adoption_level", &adoption_level, py::arg("curve"), py::arg("t"));
    m.def("gini_rate", &gini_rate, py::arg("coefficients"), py::arg("terms"));
    m.def("gini_rate_breakdown", &gini_rate_breakdown, py::arg("coefficients"), py::arg("terms"));
    m.def(
        "integrate_gini",
        [](double g0, const GiniModelCoefficients& c, std::pair<double, double> span, double step,
           double income_dispersion, std::variant<double, AdoptionCurve> adoption,
           double ricci_integral, double unemployment) {
            TermProviders providers;
            providers.income_dispersion = [income_dispersion](double) { return income_dispersion; };
            if (std::holds_alternative<double>(adoption)) {
                const double level = std::get<double>(adoption);
                providers.adoption_level = [level](double) { return level; };
            } else {
                const AdoptionCurve curve = std::get<AdoptionCurve>(adoption);
                providers.adoption_level = [curve](double t) { return adoption_level(curve, t); };
            }
            providers.ricci_integral = [ricci_integral](double) { return ricci_integral; };
            providers.unemployment_level = [unemployment](double) { return unemployment; };
            return integrate_gini(g0, c, providers, span, step);
        },
        py::arg("g0"), py::arg("coefficients"), py::arg("span"), py::arg("step"),
        py::arg("income_dispersion") = 0.0, py::arg("adoption") = 0.0,
        py::arg("ricci_integral") = 0.0, py::arg("unemployment") = 0.0,
        "Explicit-Euler trajectory; `adoption` is a constant level or an AdoptionCurve.");
    m.def("trajectory_csv", &trajectory_csv, py::arg("trajectory"));
    m.def("trajectory_json", &trajectory_json, py::arg("trajectory"));

    py::class_<SensitivityRow>(m, "SensitivityRow")
        .def_readonly("increase_pct", &SensitivityRow::increase_pct)
        .def_readonly("gini_rate_change", &SensitivityRow::gini_rate_change)
        .def("__repr__", [](const SensitivityRow& r) {
            std::ostringstream out;
            out << "SensitivityRow(" << r.increase_pct << "%, " << r.gini_rate_change << ")";
            return out.str();
        });

    m.def("sensitivity_sweep",
          [](double slope, const std::vector<double>& increases) {
              return sensitivity_sweep(slope, increases);
          },
          py::arg("slope_per_pct"), py::arg("increases"));
    m.def("sensitivity_from_model",
          [](const GiniModelCoefficients& c, const DynamicsTerms& terms,
             const std::vector<double>& increases) {
              return sensitivity_from_model(c, terms, increases);
          },
          py::arg("coefficients"), py::arg("base_terms"), py::arg("increases"));

    py::class_<RegressionResult>(m, "RegressionResult")
        .def_readonly("slope", &RegressionResult::slope)
        .def_readonly("intercept", &RegressionResult::intercept)
        .def_readonly("r_squared", &RegressionResult::r_squared)
        .def_readonly("z_stat", &RegressionResult::z_stat)
        .def_readonly("p_value", &RegressionResult::p_value)
        .def_readonly("n_obs", &RegressionResult::n_obs)
        .def("__repr__", [](const RegressionResult& r) {
            std::ostringstream out;
            out << "RegressionResult(slope=" << r.slope << ", r2=" << r.r_squared << ")";
            return out.str();
        });

    m.def("ols_fit",
          [](const std::vector<double>& x, const std::vector<double>& y) { return ols_fit(x, y); },
          py::arg("x"), py::arg("y"));

    py::class_<CalibrationEntry>(m, "CalibrationEntry")
        .def_readonly("id", &CalibrationEntry::id)
        .def_readonly("ok", &CalibrationEntry::ok)
        .def_readonly("fit", &CalibrationEntry::fit)
        .def_property_readonly("band", [](const CalibrationEntry& e) { return band_name(e.band); })
        .def_readonly("significant", &CalibrationEntry::significant)
        .def_readonly("error", &CalibrationEntry::error);

    m.def(
        "calibrate_indicators",
        [](const std::map<std::string, std::vector<double>>& panel, const std::vector<double>& gdp) {
            std::vector<IndicatorSeries> series;
            for (const auto& [name, values] : panel) {
                auto id = indicator_from_name(name);
                if (!id) throw SchemaError("unknown indicator '" + name + "'");
                series.push_back({*id, values});
            }
            return calibrate_indicators(series, gdp);
        },
        py::arg("panel"), py::arg("gdp"),
        "Fit each named indicator series against the GDP series.");
}
