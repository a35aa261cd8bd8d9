#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace giniflow {

// The closed set of modeled indicators. Enumerator order is the canonical
// row order used everywhere (reports, sums, exports).
enum class IndicatorId : std::uint8_t {
    income_distribution,
    productivity,
    unemployment,
    investment,
    inflation,
    migration,
    education,
    social_mobility,
    trade_infrastructure,
    capital_flows,
    innovation,
    healthcare_access,
    fiscal_policy,
    international_trade,
    social_protection,
    technological_access,
};

inline constexpr std::size_t kIndicatorCount = 16;

const std::array<IndicatorId, kIndicatorCount>& canonical_indicators();
std::string_view indicator_name(IndicatorId id);
std::optional<IndicatorId> indicator_from_name(std::string_view name);

/// Natural log of a positive raw indicator value. Throws DomainError for raw <= 0.
double log_transform(double raw);

struct IndicatorRecord {
    IndicatorId id{};
    double raw_value = 0.0;     // as supplied, units per unit_label
    double ln_value = 0.0;      // authoritative, dimensionless
    double alpha_weight = 0.0;  // fraction, e.g. -0.208 for -20.8%
    std::string unit_label;
    std::string raw_display;    // verbatim table rendering; empty -> formatted from raw_value
    bool raw_rounded = false;   // raw display too coarse for the ln round-trip check

    /// Build a record from a raw value alone; ln_value := ln(raw), raw must be > 0.
    static IndicatorRecord from_raw(IndicatorId id, double raw, double alpha_weight = 0.0,
                                    std::string unit_label = {});
};

// Exactly one record per IndicatorId; construction rejects anything else.
// Immutable after construction; records are kept in canonical order.
class Dataset {
public:
    Dataset(std::vector<IndicatorRecord> records, std::string label, int year);

    const std::vector<IndicatorRecord>& records() const noexcept { return records_; }
    const IndicatorRecord& record(IndicatorId id) const;
    const std::string& label() const noexcept { return label_; }
    int year() const noexcept { return year_; }

private:
    std::vector<IndicatorRecord> records_;
    std::string label_;
    int year_ = 0;
};

enum class DataFormat { csv, json };

// CSV schema (header required): indicator_id,year,raw_value[,ln_value][,alpha_weight]
// JSON mirror: array of objects with the same keys. An explicit ln_value
// overrides the computed one; without it raw_value must be positive.
Dataset load_dataset(std::istream& source, DataFormat format, std::string label = "dataset");
Dataset load_dataset_file(const std::string& path, std::string label = {});

std::string dataset_csv(const Dataset& d);
std::string dataset_json(const Dataset& d);

struct ValidationEntry {
    IndicatorId id{};
    std::string check;  // "finite" | "ln-round-trip" | "alpha-range"
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    bool ok = true;
};

// Per-record checks: finiteness, ln round-trip within 1e-3 (skipped for
// records flagged raw_rounded or with non-positive raw), alpha in [-1, 1].
// Failures are report entries, never exceptions.
ValidationReport validate_dataset(const Dataset& d);

}  // namespace giniflow
