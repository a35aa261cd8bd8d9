#include "giniflow/report.hpp"

#include "giniflow/analysis.hpp"
#include "giniflow/dynamics.hpp"
#include "giniflow/errors.hpp"
#include "giniflow/indicators.hpp"
#include "giniflow/preset.hpp"
#include "giniflow/ricci.hpp"
#include "giniflow/wfunctional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace giniflow {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const double magnitude = std::abs(v);
    if (magnitude >= 1e-4 && magnitude < 1e16) {
        for (int dec = 0; dec <= 17; ++dec) {
            std::snprintf(buf, sizeof(buf), "%.*f", dec, v);
            if (std::strtod(buf, nullptr) == v) return buf;
        }
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s = buf;
    if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) {
        s.erase(0, 1);  // -0.00 reads as 0.00
    }
    return s;
}

std::string align_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) {
                line.append(widths[i] - row[i].size() + 2, ' ');
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

namespace {

using nlohmann::ordered_json;

std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += csv_cell(cells[i]);
    }
    line += '\n';
    return line;
}

std::string note_block(const std::vector<std::string>& notes) {
    std::string out;
    for (const auto& note : notes) {
        out += "# ";
        out += note;
        out += '\n';
    }
    return out;
}

ordered_json provenance_json(const std::vector<std::string>& notes) {
    ordered_json arr = ordered_json::array();
    for (const auto& note : notes) arr.push_back(note);
    return arr;
}

double parse_cli_double(std::string_view text, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw SchemaError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_steps_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= spec.size(); ++i) {
        if (i == spec.size() || spec[i] == ':') {
            parts.push_back(spec.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 3) throw SchemaError("--steps expects A:B:S");
    const double from = parse_cli_double(parts[0], "--steps start");
    const double to = parse_cli_double(parts[1], "--steps end");
    const double by = parse_cli_double(parts[2], "--steps stride");
    if (!(by > 0.0)) throw SchemaError("--steps stride must be positive");
    if (to < from) throw SchemaError("--steps end must not precede start");
    std::vector<double> values;
    for (double p = from; p <= to + by * 1e-9; p += by) {
        values.push_back(p);
        if (values.size() > 10000) throw SchemaError("--steps expands to too many rows");
    }
    return values;
}

std::pair<double, double> parse_span_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos || spec.find(':', colon + 1) != std::string::npos) {
        throw SchemaError("--span expects A:B");
    }
    const double a = parse_cli_double(spec.substr(0, colon), "--span start");
    const double b = parse_cli_double(spec.substr(colon + 1), "--span end");
    if (!(b > a)) throw SchemaError("--span end must exceed start");
    return {a, b};
}

Dataset dataset_for(const CommandConfig& cfg) {
    if (!cfg.input_path.empty()) return load_dataset_file(cfg.input_path);
    return georgia_2023().dataset;
}

Scenario scenario_for(const CommandConfig& cfg) {
    if (cfg.input_path.empty()) {
        throw SchemaError(cfg.command + " in faithful mode requires --input <scenario.json>");
    }
    std::ifstream in(cfg.input_path);
    if (!in) throw ParseError("cannot open '" + cfg.input_path + "'");
    return load_scenario(in);
}

// ---------------------------------------------------------------- table1

std::string cmd_table1(const CommandConfig& cfg) {
    const auto& preset = georgia_2023();
    const Dataset dataset = cfg.mode == RunMode::reproduce ? preset.dataset : dataset_for(cfg);
    const RicciAggregate agg = ricci_aggregate(dataset);
    const auto rows = table1_rows(agg, dataset);

    std::vector<std::string> notes;
    if (cfg.mode == RunMode::reproduce) {
        notes.push_back("mode: reproduce (georgia-2023 preset; ln and alpha columns stored as published)");
        notes.push_back("published column sums: ln " + format_double(preset.ln_sum_reported) + ", ricci " +
                        format_double(preset.ricci_sum_reported) + "; stored-column sums: ln " +
                        format_double(agg.sum_ln) + ", ricci " + format_double(agg.sum_ricci) +
                        " (published alpha rounded to 0.1%)");
    } else {
        notes.push_back("mode: faithful");
    }

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "table1";
        doc["mode"] = cfg.mode == RunMode::reproduce ? "reproduce" : "faithful";
        doc["label"] = dataset.label();
        doc["year"] = dataset.year();
        ordered_json out_rows = ordered_json::array();
        for (std::size_t i = 0; i < kIndicatorCount; ++i) {
            const auto& term = agg.terms[i];
            const auto& rec = dataset.records()[i];
            out_rows.push_back({{"indicator", std::string(indicator_name(term.id))},
                                {"raw", rec.raw_value},
                                {"ln", term.ln_value},
                                {"alpha_pct", term.alpha_weight * 100.0},
                                {"ricci", term.contribution}});
        }
        doc["rows"] = std::move(out_rows);
        doc["sum"] = {{"ln", agg.sum_ln}, {"ricci", agg.sum_ricci}};
        doc["provenance"] = provenance_json(notes);
        return doc.dump(2) + "\n";
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"indicator", "raw", "ln", "alpha_pct", "ricci"});
    for (const auto& row : rows) {
        cells.push_back({row.indicator, row.raw, row.ln, row.alpha_pct, row.ricci});
    }
    std::string body;
    if (cfg.format == OutputFormat::csv) {
        for (const auto& row : cells) body += csv_line(row);
    } else {
        body = align_table(cells);
    }
    return body + note_block(notes);
}

// ----------------------------------------------------------------- wfunc

std::string cmd_wfunc(const CommandConfig& cfg) {
    const auto& preset = georgia_2023();
    const auto& gp = preset.gini_params;

    WParams params;
    params.f_potential = gp.f_potential;
    params.n_dim = gp.n_dim;
    params.grad_f_sq = gp.grad_f_sq;
    std::vector<std::string> notes;
    if (cfg.mode == RunMode::reproduce) {
        params.tau = gp.tau;
        params.ricci_scalar = preset.ricci_sum_reported;
        params.norm_override = 1.0;
        params.weight_override = preset.w_overrides.weight;
        notes.push_back("mode: reproduce; normalization and weight overridden to " +
                        format_double(*params.norm_override) + " and " +
                        format_double(*params.weight_override) +
                        " (published constants: normalization " +
                        format_double(preset.w_overrides.normalization) + ", e^-f " +
                        format_double(preset.w_overrides.weight * 100.0) + "%, W " +
                        format_double(preset.w_overrides.w_reported) + ")");
        notes.push_back(
            "published W factors are mutually inconsistent with the closed forms (f = 0 implies "
            "weight 1); the weight-only override lands within 0.15% of the published W");
    } else {
        params.tau = cfg.tau.value_or(gp.tau);
        const Dataset dataset = dataset_for(cfg);
        params.ricci_scalar = ricci_aggregate(dataset).sum_ricci;
        notes.push_back("mode: faithful (factors from the closed forms; curvature scalar computed from '" +
                        dataset.label() + "')");
    }
    const WResult result = evaluate_w(params);

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "wfunc";
        doc["mode"] = cfg.mode == RunMode::reproduce ? "reproduce" : "faithful";
        doc["params"] = {{"tau", params.tau},
                         {"f_potential", params.f_potential},
                         {"n_dim", params.n_dim},
                         {"grad_f_sq", params.grad_f_sq},
                         {"ricci_scalar", params.ricci_scalar},
                         {"volume", params.volume}};
        doc["result"] = ordered_json::parse(w_result_json(result));
        doc["provenance"] = provenance_json(notes);
        return doc.dump(2) + "\n";
    }

    const char* norm_mode = result.norm_mode == FactorMode::formula ? "formula" : "override";
    const char* weight_mode = result.weight_mode == FactorMode::formula ? "formula" : "override";
    std::vector<std::vector<std::string>> cells;
    if (cfg.format == OutputFormat::csv) {
        cells.push_back({"key", "value"});
    }
    cells.push_back({"tau", format_double(params.tau)});
    cells.push_back({"f_potential", format_double(params.f_potential)});
    cells.push_back({"n_dim", std::to_string(params.n_dim)});
    cells.push_back({"grad_f_sq", format_double(params.grad_f_sq)});
    cells.push_back({"ricci_scalar", format_double(params.ricci_scalar)});
    cells.push_back({"volume", format_double(params.volume)});
    cells.push_back({"core", format_double(result.core)});
    if (cfg.format == OutputFormat::csv) {
        cells.push_back({"normalization", format_double(result.normalization)});
        cells.push_back({"normalization_mode", norm_mode});
        cells.push_back({"weight", format_double(result.weight)});
        cells.push_back({"weight_mode", weight_mode});
    } else {
        cells.push_back({"normalization", format_double(result.normalization) + " (" + norm_mode + ")"});
        cells.push_back({"weight", format_double(result.weight) + " (" + weight_mode + ")"});
    }
    cells.push_back({"w_value", format_double(result.w_value)});

    std::string body;
    if (cfg.format == OutputFormat::csv) {
        for (const auto& row : cells) body += csv_line(row);
    } else {
        body = "w-functional report\n" + align_table(cells);
    }
    return body + note_block(notes);
}

// -------------------------------------------------------------- gini-rate

std::string cmd_gini_rate(const CommandConfig& cfg) {
    const auto& preset = georgia_2023();
    GiniModelCoefficients coeff;
    DynamicsTerms terms;
    std::vector<std::string> notes;
    if (cfg.mode == RunMode::reproduce) {
        const auto& gp = preset.gini_params;
        coeff = {gp.alpha_c, gp.beta_c, gp.gamma_c, gp.delta_u};
        terms.income_dispersion = gp.income_dispersion;
        terms.adoption_level = preset.adoption_binding;
        terms.gini_level = preset.gini_level;
        terms.ricci_integral = preset.ricci_integral_binding;
        terms.unemployment_level = gp.unemployment;
        notes.push_back("mode: reproduce; adoption level and curvature integral both bound to the "
                        "published W value " +
                        format_double(preset.adoption_binding) + "; published rate " +
                        format_double(preset.w_overrides.gini_rate_reported));
    } else {
        const Scenario scenario = scenario_for(cfg);
        const double t = cfg.eval_t ? *cfg.eval_t : scenario.eval_t.value_or(scenario.t_start);
        const TermProviders providers = scenario_terms(scenario);
        coeff = scenario.coefficients;
        terms.income_dispersion = providers.income_dispersion(t);
        terms.adoption_level = providers.adoption_level(t);
        terms.gini_level = scenario.g0;
        terms.ricci_integral = providers.ricci_integral(t);
        terms.unemployment_level = providers.unemployment_level(t);
        notes.push_back("mode: faithful; terms from scenario '" + scenario.label + "' at t = " +
                        format_double(t));
    }
    const GiniRateBreakdown b = gini_rate_breakdown(coeff, terms);

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "gini-rate";
        doc["mode"] = cfg.mode == RunMode::reproduce ? "reproduce" : "faithful";
        doc["coefficients"] = {{"alpha", coeff.alpha_c},
                               {"beta", coeff.beta_c},
                               {"gamma", coeff.gamma_c},
                               {"delta", coeff.delta_u}};
        doc["terms"] = {{"income_dispersion", terms.income_dispersion},
                        {"adoption_level", terms.adoption_level},
                        {"gini_level", terms.gini_level},
                        {"ricci_integral", terms.ricci_integral},
                        {"unemployment_level", terms.unemployment_level}};
        doc["breakdown"] = {{"dispersion_term", b.dispersion_term},
                            {"technology_term", b.technology_term},
                            {"ricci_term", b.ricci_term},
                            {"unemployment_term", b.unemployment_term}};
        doc["gini_rate"] = b.total;
        doc["provenance"] = provenance_json(notes);
        return doc.dump(2) + "\n";
    }

    std::vector<std::vector<std::string>> cells;
    if (cfg.format == OutputFormat::csv) cells.push_back({"key", "value"});
    cells.push_back({"alpha", format_double(coeff.alpha_c)});
    cells.push_back({"beta", format_double(coeff.beta_c)});
    cells.push_back({"gamma", format_double(coeff.gamma_c)});
    cells.push_back({"delta", format_double(coeff.delta_u)});
    cells.push_back({"income_dispersion", format_double(terms.income_dispersion)});
    cells.push_back({"adoption_level", format_double(terms.adoption_level)});
    cells.push_back({"gini_level", format_double(terms.gini_level)});
    cells.push_back({"ricci_integral", format_double(terms.ricci_integral)});
    cells.push_back({"unemployment_level", format_double(terms.unemployment_level)});
    cells.push_back({"dispersion_term", format_double(b.dispersion_term)});
    cells.push_back({"technology_term", format_double(b.technology_term)});
    cells.push_back({"ricci_term", format_double(b.ricci_term)});
    cells.push_back({"unemployment_term", format_double(b.unemployment_term)});
    cells.push_back({"gini_rate", format_double(b.total)});

    std::string body;
    if (cfg.format == OutputFormat::csv) {
        for (const auto& row : cells) body += csv_line(row);
    } else {
        body = "gini-rate report\n" + align_table(cells);
    }
    return body + note_block(notes);
}

// ------------------------------------------------------------- sensitivity

std::string cmd_sensitivity(const CommandConfig& cfg) {
    const auto& preset = georgia_2023();
    const std::vector<double> increases =
        parse_steps_spec(cfg.steps ? *cfg.steps : std::string("5:35:5"));

    std::vector<SensitivityRow> rows;
    std::vector<std::string> notes;
    if (cfg.from_model) {
        GiniModelCoefficients coeff;
        DynamicsTerms terms;
        if (cfg.mode == RunMode::reproduce) {
            const auto& gp = preset.gini_params;
            coeff = {gp.alpha_c, gp.beta_c, gp.gamma_c, gp.delta_u};
            terms = {gp.income_dispersion, preset.adoption_binding, preset.gini_level,
                     preset.ricci_integral_binding, gp.unemployment};
            notes.push_back("mode: reproduce; model-consistent sweep from the published binding "
                            "(beta " +
                            format_double(coeff.beta_c) + ", G " + format_double(terms.gini_level) +
                            ", A " + format_double(terms.adoption_level) +
                            "); the published per-percent slope " +
                            format_double(preset.sensitivity_slope) +
                            " is not reproduced by the model coefficients");
        } else {
            const Scenario scenario = scenario_for(cfg);
            const double t = cfg.eval_t ? *cfg.eval_t : scenario.eval_t.value_or(scenario.t_start);
            const TermProviders providers = scenario_terms(scenario);
            coeff = scenario.coefficients;
            terms = {providers.income_dispersion(t), providers.adoption_level(t), scenario.g0,
                     providers.ricci_integral(t), providers.unemployment_level(t)};
            notes.push_back("mode: faithful; model-consistent sweep (change = beta * G * A * p/100) "
                            "from scenario '" +
                            scenario.label + "' at t = " + format_double(t));
        }
        rows = sensitivity_from_model(coeff, terms, increases);
    } else {
        const double slope = cfg.slope.value_or(preset.sensitivity_slope);
        rows = sensitivity_sweep(slope, increases);
        if (!cfg.slope) {
            notes.push_back("slope " + format_double(slope) +
                            " per percent originates from the published sensitivity table (" +
                            format_fixed(slope * 5.0, 2) +
                            " at +5%); it is not derivable from the model coefficients");
        }
        if (cfg.mode == RunMode::reproduce) {
            notes.insert(notes.begin(), "mode: reproduce (published sensitivity table)");
        }
    }

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "sensitivity";
        doc["mode"] = cfg.mode == RunMode::reproduce ? "reproduce" : "faithful";
        doc["variant"] = cfg.from_model ? "from-model" : "sweep";
        ordered_json out_rows = ordered_json::array();
        for (const auto& row : rows) {
            out_rows.push_back(
                {{"increase_pct", row.increase_pct}, {"gini_rate_change", row.gini_rate_change}});
        }
        doc["rows"] = std::move(out_rows);
        doc["provenance"] = provenance_json(notes);
        return doc.dump(2) + "\n";
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"increase_pct", "gini_rate_change"});
    for (const auto& row : rows) {
        cells.push_back({format_double(row.increase_pct), format_fixed(row.gini_rate_change, 2)});
    }
    std::string body;
    if (cfg.format == OutputFormat::csv) {
        for (const auto& row : cells) body += csv_line(row);
    } else {
        body = align_table(cells);
    }
    return body + note_block(notes);
}

// --------------------------------------------------------------- simulate

std::string cmd_simulate(const CommandConfig& cfg) {
    const Scenario scenario = scenario_for(cfg);
    const double step = cfg.step.value_or(scenario.step);
    std::pair<double, double> span{scenario.t_start, scenario.t_end};
    if (cfg.span) span = parse_span_spec(*cfg.span);

    const GiniTrajectory traj =
        integrate_gini(scenario.g0, scenario.coefficients, scenario_terms(scenario), span, step);

    if (cfg.format == OutputFormat::json) return trajectory_json(traj);
    if (cfg.format == OutputFormat::csv) return trajectory_csv(traj);
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"t", "G", "clamped"});
    for (const auto& s : traj.samples) {
        cells.push_back({format_double(s.t), format_double(s.gini), s.clamped ? "1" : "0"});
    }
    return align_table(cells);
}

// --------------------------------------------------------------- calibrate

struct Panel {
    std::vector<double> gdp;
    std::vector<IndicatorSeries> series;
};

Panel load_panel(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw SchemaError("empty panel: no header row");
    ++line_no;

    std::vector<std::string> header;
    {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                std::string cell = line.substr(start, i - start);
                while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
                while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
                header.push_back(cell);
                start = i + 1;
            }
        }
    }
    if (header.size() < 3 || header[0] != "year" || header[1] != "gdp") {
        throw SchemaError("panel header must be year,gdp,<indicator columns>");
    }
    Panel panel;
    panel.series.resize(header.size() - 2);
    for (std::size_t i = 2; i < header.size(); ++i) {
        auto id = indicator_from_name(header[i]);
        if (!id) throw SchemaError("panel column '" + header[i] + "' is not a canonical indicator");
        for (std::size_t j = 2; j < i; ++j) {
            if (header[j] == header[i]) throw SchemaError("duplicate panel column '" + header[i] + "'");
        }
        panel.series[i - 2].id = *id;
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                std::string cell = line.substr(start, i - start);
                while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
                while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
                cells.push_back(cell);
                start = i + 1;
            }
        }
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()), line_no);
        }
        double value = 0.0;
        auto parse = [&](const std::string& cell, const std::string& column) {
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw ParseError("cannot parse " + column + " value '" + cell + "'", line_no);
            }
            return value;
        };
        parse(cells[0], "year");
        panel.gdp.push_back(parse(cells[1], "gdp"));
        for (std::size_t i = 2; i < cells.size(); ++i) {
            panel.series[i - 2].values.push_back(parse(cells[i], header[i]));
        }
    }
    if (panel.gdp.empty()) throw SchemaError("panel has no data rows");
    return panel;
}

std::string calibration_flags(const CalibrationEntry& entry) {
    if (!entry.ok) {
        std::string msg = entry.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        return "error: " + msg;
    }
    std::string flags = entry.band == R2Band::below    ? "below-band"
                        : entry.band == R2Band::in_band ? "in-band"
                                                         : "above-band";
    flags += entry.significant ? ";significant" : ";not-significant";
    return flags;
}

std::string cmd_calibrate(const CommandConfig& cfg) {
    if (cfg.input_path.empty()) {
        throw SchemaError("calibrate requires --input <panel.csv>");
    }
    std::ifstream in(cfg.input_path);
    if (!in) throw ParseError("cannot open '" + cfg.input_path + "'");
    const Panel panel = load_panel(in);
    const auto entries = calibrate_indicators(panel.series, panel.gdp);

    std::vector<std::string> notes;
    notes.push_back("z_stat uses the two-tailed normal tail (not Student-t; n is small); flags: "
                    "in-band marks r2 in [0.80, 0.90], significance threshold p < 0.05");

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "calibrate";
        ordered_json out_rows = ordered_json::array();
        for (const auto& entry : entries) {
            ordered_json row;
            row["indicator"] = std::string(indicator_name(entry.id));
            if (entry.ok) {
                row["slope"] = entry.fit.slope;
                row["intercept"] = entry.fit.intercept;
                row["r2"] = entry.fit.r_squared;
                row["z"] = entry.fit.z_stat;
                row["p"] = entry.fit.p_value;
            } else {
                row["error"] = entry.error;
            }
            row["flags"] = calibration_flags(entry);
            out_rows.push_back(std::move(row));
        }
        doc["entries"] = std::move(out_rows);
        doc["provenance"] = provenance_json(notes);
        return doc.dump(2) + "\n";
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"indicator", "slope", "intercept", "r2", "z", "p", "flags"});
    for (const auto& entry : entries) {
        if (entry.ok) {
            cells.push_back({std::string(indicator_name(entry.id)), format_double(entry.fit.slope),
                             format_double(entry.fit.intercept), format_double(entry.fit.r_squared),
                             format_double(entry.fit.z_stat), format_double(entry.fit.p_value),
                             calibration_flags(entry)});
        } else {
            cells.push_back({std::string(indicator_name(entry.id)), "", "", "", "", "",
                             calibration_flags(entry)});
        }
    }
    std::string body;
    if (cfg.format == OutputFormat::csv) {
        for (const auto& row : cells) body += csv_line(row);
    } else {
        body = align_table(cells);
    }
    return body + note_block(notes);
}

// ------------------------------------------------------------ preset-export

std::string cmd_preset_export(const CommandConfig& cfg) {
    const auto& preset = georgia_2023();
    if (cfg.format == OutputFormat::json) return dataset_json(preset.dataset);
    return dataset_csv(preset.dataset);  // text defaults to the canonical CSV form
}

// ---------------------------------------------------------------- validate

struct ValidateOutcome {
    std::string body;
    bool ok = false;
};

ValidateOutcome cmd_validate(const CommandConfig& cfg) {
    const Dataset dataset = dataset_for(cfg);
    const ValidationReport report = validate_dataset(dataset);

    std::vector<std::string> notes;
    if (cfg.mode == RunMode::reproduce) {
        notes.push_back("mode: reproduce (georgia-2023 preset; ln and alpha columns stored as published)");
    }

    ValidateOutcome outcome;
    outcome.ok = report.ok;
    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["command"] = "validate";
        doc["label"] = dataset.label();
        doc["ok"] = report.ok;
        ordered_json entries = ordered_json::array();
        for (const auto& e : report.entries) {
            entries.push_back({{"indicator", std::string(indicator_name(e.id))},
                               {"check", e.check},
                               {"passed", e.passed},
                               {"detail", e.detail}});
        }
        doc["entries"] = std::move(entries);
        doc["provenance"] = provenance_json(notes);
        outcome.body = doc.dump(2) + "\n";
        return outcome;
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"indicator", "check", "status", "detail"});
    for (const auto& e : report.entries) {
        cells.push_back({std::string(indicator_name(e.id)), e.check, e.passed ? "pass" : "FAIL",
                         e.detail});
    }
    if (cfg.format == OutputFormat::csv) {
        std::string body;
        body += csv_line({"indicator", "check", "passed", "detail"});
        for (const auto& e : report.entries) {
            body += csv_line({std::string(indicator_name(e.id)), e.check, e.passed ? "true" : "false",
                              e.detail});
        }
        outcome.body = body + note_block(notes);
    } else {
        outcome.body =
            align_table(cells) + "ok: " + (report.ok ? "true" : "false") + "\n" + note_block(notes);
    }
    return outcome;
}

void check_config(const CommandConfig& cfg) {
    if (cfg.mode == RunMode::reproduce) {
        if (!cfg.input_path.empty()) {
            throw SchemaError("reproduce mode is preset-backed and takes no --input");
        }
        if (cfg.tau || cfg.slope || cfg.steps || cfg.span || cfg.step || cfg.eval_t) {
            throw SchemaError("value-overriding flags require --mode faithful; reproduce mode pins "
                              "the published constants");
        }
        if (cfg.command == "simulate") {
            throw SchemaError("simulate has no published trajectory to reproduce; use --mode faithful "
                              "with a scenario file");
        }
        if (cfg.command == "calibrate") {
            throw SchemaError("calibrate has no published panel to reproduce; use --mode faithful "
                              "with a panel file");
        }
    }
}

}  // namespace

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check_config(cfg);

        std::string body;
        int code = 0;
        if (cfg.command == "table1") {
            body = cmd_table1(cfg);
        } else if (cfg.command == "wfunc") {
            body = cmd_wfunc(cfg);
        } else if (cfg.command == "gini-rate") {
            body = cmd_gini_rate(cfg);
        } else if (cfg.command == "sensitivity") {
            body = cmd_sensitivity(cfg);
        } else if (cfg.command == "simulate") {
            body = cmd_simulate(cfg);
        } else if (cfg.command == "calibrate") {
            body = cmd_calibrate(cfg);
        } else if (cfg.command == "preset-export") {
            body = cmd_preset_export(cfg);
        } else if (cfg.command == "validate") {
            auto outcome = cmd_validate(cfg);
            body = std::move(outcome.body);
            if (!outcome.ok) {
                code = 2;
                err << "error: dataset validation failed\n";
            }
        } else {
            throw SchemaError("unknown command '" + cfg.command + "'");
        }

        if (!cfg.out_path.empty()) {
            std::ofstream file(cfg.out_path);
            if (!file) throw ParseError("cannot open output file '" + cfg.out_path + "'");
            file << body;
        } else {
            out << body;
        }
        return code;
    } catch (const DegenerateDataError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace giniflow
