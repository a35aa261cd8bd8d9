#include "giniflow/indicators.hpp"

#include "giniflow/errors.hpp"
#include "giniflow/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace giniflow {

namespace {

constexpr std::array<std::string_view, kIndicatorCount> kIndicatorNames = {
    "income_distribution", "productivity",    "unemployment",       "investment",
    "inflation",           "migration",       "education",          "social_mobility",
    "trade_infrastructure", "capital_flows",  "innovation",         "healthcare_access",
    "fiscal_policy",       "international_trade", "social_protection", "technological_access",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

double parse_double(std::string_view cell, std::size_t line_no, std::string_view column) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("cannot parse " + std::string(column) + " value '" + std::string(cell) + "'",
                         line_no);
    }
    return value;
}

int parse_int(std::string_view cell, std::size_t line_no, std::string_view column) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("cannot parse " + std::string(column) + " value '" + std::string(cell) + "'",
                         line_no);
    }
    return value;
}

struct RawRow {
    IndicatorId id;
    int year;
    double raw_value;
    std::optional<double> ln_value;
    std::optional<double> alpha_weight;
};

IndicatorRecord make_record(const RawRow& row, std::size_t line_no) {
    IndicatorRecord rec;
    rec.id = row.id;
    rec.raw_value = row.raw_value;
    rec.alpha_weight = row.alpha_weight.value_or(0.0);
    if (row.ln_value) {
        rec.ln_value = *row.ln_value;
    } else {
        if (!(row.raw_value > 0.0)) {
            throw DomainError("line " + std::to_string(line_no) + ": non-positive raw_value for " +
                              std::string(indicator_name(row.id)) + " requires an explicit ln_value");
        }
        rec.ln_value = std::log(row.raw_value);
    }
    return rec;
}

Dataset build_dataset(const std::vector<RawRow>& rows, const std::vector<std::size_t>& line_nos,
                      std::string label) {
    if (rows.empty()) {
        throw SchemaError("no data rows: 0 of 16 indicators present");
    }
    int year = rows.front().year;
    std::vector<IndicatorRecord> records;
    records.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].year != year) {
            throw SchemaError("mixed years in one dataset (" + std::to_string(year) + " vs " +
                              std::to_string(rows[i].year) + ")");
        }
        records.push_back(make_record(rows[i], line_nos[i]));
    }
    return Dataset(std::move(records), std::move(label), year);
}

Dataset load_csv(std::istream& in, std::string label) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw SchemaError("empty input: 0 of 16 indicators present");
    }
    ++line_no;
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "indicator_id" || header[1] != "year" ||
        header[2] != "raw_value") {
        throw SchemaError("CSV header must start with indicator_id,year,raw_value");
    }
    int ln_col = -1;
    int alpha_col = -1;
    for (std::size_t i = 3; i < header.size(); ++i) {
        if (header[i] == "ln_value" && ln_col < 0) {
            ln_col = static_cast<int>(i);
        } else if (header[i] == "alpha_weight" && alpha_col < 0) {
            alpha_col = static_cast<int>(i);
        } else {
            throw SchemaError("unknown or repeated CSV column '" + header[i] + "'");
        }
    }

    std::vector<RawRow> rows;
    std::vector<std::size_t> line_nos;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()), line_no);
        }
        auto id = indicator_from_name(cells[0]);
        if (!id) {
            throw SchemaError("line " + std::to_string(line_no) + ": unknown indicator_id '" +
                              cells[0] + "'");
        }
        RawRow row{};
        row.id = *id;
        row.year = parse_int(cells[1], line_no, "year");
        row.raw_value = parse_double(cells[2], line_no, "raw_value");
        if (ln_col >= 0 && !cells[static_cast<std::size_t>(ln_col)].empty()) {
            row.ln_value = parse_double(cells[static_cast<std::size_t>(ln_col)], line_no, "ln_value");
        }
        if (alpha_col >= 0 && !cells[static_cast<std::size_t>(alpha_col)].empty()) {
            row.alpha_weight =
                parse_double(cells[static_cast<std::size_t>(alpha_col)], line_no, "alpha_weight");
        }
        rows.push_back(row);
        line_nos.push_back(line_no);
    }
    return build_dataset(rows, line_nos, std::move(label));
}

Dataset load_json(std::istream& in, std::string label) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw SchemaError("JSON dataset must be an array of record objects");
    }
    std::vector<RawRow> rows;
    std::vector<std::size_t> line_nos;
    std::size_t index = 0;
    for (const auto& item : doc) {
        ++index;
        if (!item.is_object()) {
            throw SchemaError("JSON record " + std::to_string(index) + " is not an object");
        }
        for (const auto& [key, value] : item.items()) {
            (void)value;
            if (key != "indicator_id" && key != "year" && key != "raw_value" && key != "ln_value" &&
                key != "alpha_weight") {
                throw SchemaError("JSON record " + std::to_string(index) + ": unknown key '" + key + "'");
            }
        }
        if (!item.contains("indicator_id") || !item["indicator_id"].is_string()) {
            throw SchemaError("JSON record " + std::to_string(index) + ": missing indicator_id");
        }
        auto id = indicator_from_name(item["indicator_id"].get<std::string>());
        if (!id) {
            throw SchemaError("JSON record " + std::to_string(index) + ": unknown indicator_id '" +
                              item["indicator_id"].get<std::string>() + "'");
        }
        if (!item.contains("year") || !item["year"].is_number_integer()) {
            throw ParseError("JSON record " + std::to_string(index) + ": missing integer year");
        }
        if (!item.contains("raw_value") || !item["raw_value"].is_number()) {
            throw ParseError("JSON record " + std::to_string(index) + ": missing numeric raw_value");
        }
        RawRow row{};
        row.id = *id;
        row.year = item["year"].get<int>();
        row.raw_value = item["raw_value"].get<double>();
        if (item.contains("ln_value")) {
            if (!item["ln_value"].is_number()) {
                throw ParseError("JSON record " + std::to_string(index) + ": ln_value must be numeric");
            }
            row.ln_value = item["ln_value"].get<double>();
        }
        if (item.contains("alpha_weight")) {
            if (!item["alpha_weight"].is_number()) {
                throw ParseError("JSON record " + std::to_string(index) +
                                 ": alpha_weight must be numeric");
            }
            row.alpha_weight = item["alpha_weight"].get<double>();
        }
        rows.push_back(row);
        line_nos.push_back(index);
    }
    return build_dataset(rows, line_nos, std::move(label));
}

}  // namespace

const std::array<IndicatorId, kIndicatorCount>& canonical_indicators() {
    static const std::array<IndicatorId, kIndicatorCount> order = [] {
        std::array<IndicatorId, kIndicatorCount> a{};
        for (std::size_t i = 0; i < kIndicatorCount; ++i) a[i] = static_cast<IndicatorId>(i);
        return a;
    }();
    return order;
}

std::string_view indicator_name(IndicatorId id) {
    return kIndicatorNames[static_cast<std::size_t>(id)];
}

std::optional<IndicatorId> indicator_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        if (kIndicatorNames[i] == name) return static_cast<IndicatorId>(i);
    }
    return std::nullopt;
}

double log_transform(double raw) {
    if (!std::isfinite(raw) || raw <= 0.0) {
        throw DomainError("log_transform requires a positive finite value");
    }
    return std::log(raw);
}

IndicatorRecord IndicatorRecord::from_raw(IndicatorId id, double raw, double alpha_weight,
                                          std::string unit_label) {
    IndicatorRecord rec;
    rec.id = id;
    rec.raw_value = raw;
    rec.ln_value = log_transform(raw);
    rec.alpha_weight = alpha_weight;
    rec.unit_label = std::move(unit_label);
    return rec;
}

Dataset::Dataset(std::vector<IndicatorRecord> records, std::string label, int year)
    : label_(std::move(label)), year_(year) {
    std::array<int, kIndicatorCount> seen{};
    for (const auto& rec : records) {
        ++seen[static_cast<std::size_t>(rec.id)];
    }
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        if (seen[i] > 1) {
            throw SchemaError("duplicate indicator: " + std::string(kIndicatorNames[i]));
        }
        if (seen[i] == 0) {
            throw SchemaError("missing indicator: " + std::string(kIndicatorNames[i]));
        }
    }
    records_.resize(kIndicatorCount);
    for (auto& rec : records) {
        records_[static_cast<std::size_t>(rec.id)] = std::move(rec);
    }
}

const IndicatorRecord& Dataset::record(IndicatorId id) const {
    return records_[static_cast<std::size_t>(id)];
}

Dataset load_dataset(std::istream& source, DataFormat format, std::string label) {
    return format == DataFormat::csv ? load_csv(source, std::move(label))
                                     : load_json(source, std::move(label));
}

Dataset load_dataset_file(const std::string& path, std::string label) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    DataFormat format = DataFormat::csv;
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        format = DataFormat::json;
    }
    if (label.empty()) label = path;
    return load_dataset(in, format, std::move(label));
}

std::string dataset_csv(const Dataset& d) {
    std::string out = "indicator_id,year,raw_value,ln_value,alpha_weight\n";
    for (const auto& rec : d.records()) {
        out += std::string(indicator_name(rec.id));
        out += ',';
        out += std::to_string(d.year());
        out += ',';
        out += format_double(rec.raw_value);
        out += ',';
        out += format_double(rec.ln_value);
        out += ',';
        out += format_double(rec.alpha_weight);
        out += '\n';
    }
    return out;
}

std::string dataset_json(const Dataset& d) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& rec : d.records()) {
        nlohmann::ordered_json obj;
        obj["indicator_id"] = std::string(indicator_name(rec.id));
        obj["year"] = d.year();
        obj["raw_value"] = rec.raw_value;
        obj["ln_value"] = rec.ln_value;
        obj["alpha_weight"] = rec.alpha_weight;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

ValidationReport validate_dataset(const Dataset& d) {
    ValidationReport report;
    char buf[96];
    for (const auto& rec : d.records()) {
        ValidationEntry finite{rec.id, "finite", true, ""};
        if (!std::isfinite(rec.ln_value) || !std::isfinite(rec.raw_value) ||
            !std::isfinite(rec.alpha_weight)) {
            finite.passed = false;
            finite.detail = "non-finite field";
        }
        report.entries.push_back(finite);

        ValidationEntry round_trip{rec.id, "ln-round-trip", true, ""};
        if (rec.raw_rounded) {
            round_trip.detail = "skipped: raw value rounded for display";
        } else if (!(rec.raw_value > 0.0)) {
            round_trip.detail = "skipped: non-positive raw value";
        } else if (!std::isfinite(rec.ln_value)) {
            round_trip.passed = false;
            round_trip.detail = "ln_value not finite";
        } else {
            const double diff = std::abs(std::log(rec.raw_value) - rec.ln_value);
            std::snprintf(buf, sizeof(buf), "|ln(raw) - ln_value| = %.3g", diff);
            round_trip.detail = buf;
            round_trip.passed = diff <= 1e-3;
        }
        report.entries.push_back(round_trip);

        ValidationEntry alpha{rec.id, "alpha-range", true, ""};
        if (!(rec.alpha_weight >= -1.0 && rec.alpha_weight <= 1.0)) {
            alpha.passed = false;
            std::snprintf(buf, sizeof(buf), "alpha_weight %g outside [-1, 1]", rec.alpha_weight);
            alpha.detail = buf;
        }
        report.entries.push_back(alpha);
    }
    report.ok = std::all_of(report.entries.begin(), report.entries.end(),
                            [](const ValidationEntry& e) { return e.passed; });
    return report;
}

}  // namespace giniflow
