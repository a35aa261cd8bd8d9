#include "giniflow/ricci.hpp"

#include "giniflow/errors.hpp"
#include "giniflow/preset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

using namespace giniflow;

namespace {

// Published per-row contributions, two decimals as printed.
constexpr std::array<double, 16> kPublishedRicci = {
    0.21, 0.58, 0.35, -0.65, 0.54, -0.59, 0.93, 0.25,
    0.18, -0.92, 0.74, 0.15, 0.55, -0.15, 2.17, -0.05,
};

Dataset with_alphas(const Dataset& base, const std::array<double, 16>& alphas) {
    auto records = base.records();
    for (std::size_t i = 0; i < records.size(); ++i) records[i].alpha_weight = alphas[i];
    return Dataset(std::move(records), base.label(), base.year());
}

}  // namespace

TEST_CASE("ricci_term values") {
    CHECK(std::abs(ricci_term(0.253, 8.583037) - 2.1715) < 5e-4);
    CHECK(ricci_term(0.0, 123.456) == 0.0);
    CHECK(std::abs(ricci_term(-0.056, 10.57661) - (-0.59229016)) < 1e-8);
    CHECK_THROWS_AS(ricci_term(std::nan(""), 1.0), DomainError);
    CHECK_THROWS_AS(ricci_term(0.1, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("aggregate reproduces the published sums") {
    const auto agg = ricci_aggregate(georgia_2023().dataset);
    CHECK(std::abs(agg.sum_ricci - 4.284) < 0.01);
    CHECK(std::abs(agg.sum_ln - 32.3957) < 1e-3);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(agg.terms[i].id == canonical_indicators()[i]);
        CHECK(agg.terms[i].contribution == agg.terms[i].alpha_weight * agg.terms[i].ln_value);
    }
}

TEST_CASE("every published contribution is the rounded alpha x ln product") {
    const auto agg = ricci_aggregate(georgia_2023().dataset);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(agg.terms[i].contribution - kPublishedRicci[i]) <= 0.005);
    }
}

TEST_CASE("zero weights zero the aggregate but not the ln sum") {
    const auto& preset = georgia_2023();
    std::array<double, 16> zeros{};
    const auto agg = ricci_aggregate(with_alphas(preset.dataset, zeros));
    CHECK(agg.sum_ricci == 0.0);
    CHECK(agg.sum_ln == ricci_aggregate(preset.dataset).sum_ln);
}

TEST_CASE("single nonzero weight isolates one contribution") {
    std::array<double, 16> alphas{};
    alphas[14] = 0.253;  // social protection row
    const auto agg = ricci_aggregate(with_alphas(georgia_2023().dataset, alphas));
    CHECK(std::abs(agg.sum_ricci - 2.1715) < 5e-4);
}

TEST_CASE("aggregate is linear in the weights") {
    const auto& base = georgia_2023().dataset;
    const auto agg = ricci_aggregate(base);

    std::array<double, 16> doubled{};
    std::array<double, 16> scaled{};
    for (std::size_t i = 0; i < 16; ++i) {
        doubled[i] = base.records()[i].alpha_weight * 2.0;
        scaled[i] = base.records()[i].alpha_weight * 1.7;
    }
    CHECK(ricci_aggregate(with_alphas(base, doubled)).sum_ricci == 2.0 * agg.sum_ricci);
    const double got = ricci_aggregate(with_alphas(base, scaled)).sum_ricci;
    CHECK(std::abs(got - 1.7 * agg.sum_ricci) <= 1e-12 * std::abs(got));
}

TEST_CASE("contribution sign follows the factor signs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double a = dist(rng);
        const double l = dist(rng);
        if (a == 0.0 || l == 0.0) continue;
        const double sign = (a > 0 ? 1.0 : -1.0) * (l > 0 ? 1.0 : -1.0);
        CHECK(ricci_term(a, l) * sign > 0.0);
    }
}

TEST_CASE("summation order changes the sum by less than 1e-9") {
    const auto agg = ricci_aggregate(georgia_2023().dataset);
    std::array<double, 16> contributions{};
    for (std::size_t i = 0; i < 16; ++i) contributions[i] = agg.terms[i].contribution;
    std::mt19937 rng(11);
    for (int round = 0; round < 50; ++round) {
        std::shuffle(contributions.begin(), contributions.end(), rng);
        double sum = 0.0;
        for (double c : contributions) sum += c;
        CHECK(std::abs(sum - agg.sum_ricci) < 1e-9);
    }
}

TEST_CASE("raw-linear variant weights the untransformed values") {
    const auto& d = georgia_2023().dataset;
    const auto agg = ricci_aggregate(d, RicciForm::raw_linear);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(agg.terms[i].contribution ==
              d.records()[i].alpha_weight * d.records()[i].raw_value);
    }
    // The raw-linear form reproduces none of the published contributions.
    int matches = 0;
    for (std::size_t i = 0; i < 16; ++i) {
        if (std::abs(agg.terms[i].contribution - kPublishedRicci[i]) <= 0.005) ++matches;
    }
    CHECK(matches == 0);
}

TEST_CASE("table rows render at the published precision") {
    const auto& d = georgia_2023().dataset;
    const auto rows = table1_rows(ricci_aggregate(d), d);
    REQUIRE(rows.size() == 17);

    const auto& productivity = rows[1];
    CHECK(productivity.raw == "11.0007463");
    CHECK(productivity.ln == "2.397963");
    CHECK(productivity.alpha_pct == "24.3");
    CHECK(productivity.ricci == "0.58");

    const auto& sum = rows.back();
    CHECK(sum.indicator == "sum");
    // The published sum 32.39573 came from unrounded spreadsheet values; the
    // stored columns sum to 32.395711, which must still sit within 1e-3.
    CHECK(std::abs(std::stod(sum.ln) - 32.39573) < 1e-3);
    CHECK(sum.ln == "32.395711");
}

TEST_CASE("all-zero weights render as 0.00") {
    std::array<double, 16> zeros{};
    const Dataset d = with_alphas(georgia_2023().dataset, zeros);
    const auto rows = table1_rows(ricci_aggregate(d), d);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(rows[i].ricci == "0.00");
    }
}
