#include "fixtures.hpp"
#include "published_counts.hpp"

#include <warntrack/evaluation.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>

using namespace warntrack;

namespace {

std::string fake_id(int n)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016x", n);
    return buf;
}

/// A report with `resolved` resolved decisions of which `fp` are labeled
/// persistent (the rest labeled resolved).
std::pair<TrackingReport, std::vector<GroundTruthLabel>> resolved_fixture(int resolved, int fp)
{
    TrackingReport r;
    std::vector<GroundTruthLabel> labels;
    for (int i = 0; i < resolved; ++i) {
        r.resolved.push_back(fake_id(i));
        labels.push_back({fake_id(i), i < fp ? EvolutionStatus::Persistent : EvolutionStatus::Resolved});
    }
    return {r, labels};
}

}  // namespace

TEST(ComputeMetrics, PublishedSoaResolvedTotal)
{
    auto [r, labels] = resolved_fixture(2007, 727);
    auto m = compute_metrics(r, labels);
    EXPECT_EQ(m.resolved, (CategoryMetrics{727, 2007}));
    EXPECT_EQ(format_rate(m.resolved), "36.2% (727/2007)");
}

TEST(ComputeMetrics, PublishedImprovedResolvedTotal)
{
    auto [r, labels] = resolved_fixture(1437, 159);
    EXPECT_EQ(format_rate(compute_metrics(r, labels).resolved), "11.1% (159/1437)");
}

TEST(ComputeMetrics, UnlabeledWarningsCountAsPersistent)
{
    TrackingReport r;
    r.resolved = {fake_id(1)};
    r.newly_introduced = {fake_id(2), fake_id(3)};
    std::vector<GroundTruthLabel> labels{{fake_id(3), EvolutionStatus::NewlyIntroduced}};
    auto m = compute_metrics(r, labels);
    EXPECT_EQ(m.resolved, (CategoryMetrics{1, 1}));
    EXPECT_EQ(m.newly_introduced, (CategoryMetrics{1, 2}));
}

TEST(ComputeMetrics, PerfectReportAndEmptyDenominators)
{
    TrackingReport r;
    r.matches.push_back({fake_id(1), fake_id(2), Strategy::Exact, 1.0});
    r.resolved = {fake_id(3)};
    std::vector<GroundTruthLabel> labels{{fake_id(3), EvolutionStatus::Resolved},
                                         {fake_id(1), EvolutionStatus::Persistent}};
    auto m = compute_metrics(r, labels);
    EXPECT_EQ(m.fp_total(), 0);
    EXPECT_DOUBLE_EQ(m.resolved.fp_rate(), 0.0);
    EXPECT_DOUBLE_EQ(m.newly_introduced.fp_rate(), 0.0);
    EXPECT_DOUBLE_EQ(m.precision(), 1.0);
    EXPECT_DOUBLE_EQ(MetricsReport{}.precision(), 1.0);
}

TEST(ComputeMetrics, Errors)
{
    TrackingReport r;
    r.resolved = {fake_id(1)};
    std::vector<GroundTruthLabel> unknown{{fake_id(9), EvolutionStatus::Resolved}};
    try {
        compute_metrics(r, unknown);
        FAIL() << "expected UnknownWarningId";
    } catch (const UnknownWarningId& e) {
        EXPECT_EQ(std::string(e.what()), fake_id(9));
    }
    std::vector<GroundTruthLabel> dup{{fake_id(1), EvolutionStatus::Resolved}, {fake_id(1), EvolutionStatus::Resolved}};
    EXPECT_THROW(compute_metrics(r, dup), SchemaViolation);
}

TEST(PublishedCounts, TotalRowRates)
{
    EXPECT_EQ(format_rate(published::soa_total().resolved), "36.2% (727/2007)");
    EXPECT_EQ(format_rate(published::improved_total().resolved), "11.1% (159/1437)");
    EXPECT_EQ(format_rate(published::soa_total().newly_introduced), "31.2% (451/1445)");
    EXPECT_EQ(format_rate(published::improved_total().newly_introduced), "8.6% (94/1087)");
}

TEST(PublishedCounts, SoaRowsSumToTotalRow)
{
    std::vector<MetricsReport> soa;
    for (const auto& r : published::rows()) soa.push_back(r.soa);
    EXPECT_EQ(aggregate(soa), published::soa_total());
}

TEST(PublishedCounts, ImprovedRowsDifferFromPrintedTotalByThreeWarnings)
{
    // The printed improved total (1437 / 1087 decisions) is not the sum of its
    // rows (1439 / 1088); the FP counts agree.
    std::vector<MetricsReport> improved;
    for (const auto& r : published::rows()) improved.push_back(r.improved);
    auto sum = aggregate(improved);
    EXPECT_EQ(sum.resolved, (CategoryMetrics{159, 1439}));
    EXPECT_EQ(sum.newly_introduced, (CategoryMetrics{94, 1088}));
    EXPECT_EQ(format_percent(sum.combined_fp_rate()), "10.0%");
}

TEST(PublishedCounts, PerProjectRatesRoundFromCounts)
{
    const std::vector<std::array<const char*, 4>> printed{
        {"63.6%", "36.8%", "3.8%", "8.4%"},  {"45.4%", "8.6%", "27.0%", "4.1%"},
        {"36.7%", "42.3%", "13.8%", "16.8%"}, {"41.9%", "66.0%", "8.0%", "19.0%"},
        {"17.3%", "17.9%", "1.1%", "3.0%"},  {"37.9%", "43.5%", "15.8%", "17.0%"},
        {"3.6%", "4.4%", "0.5%", "0.6%"},    {"20.1%", "26.0%", "6.1%", "6.2%"}};
    // Row six prints 37.8% for 114/301 = 37.87%; rounding gives 37.9%.
    auto rows = published::rows();
    ASSERT_EQ(rows.size(), printed.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(format_percent(rows[i].soa.resolved.fp_rate()), printed[i][0]) << rows[i].name;
        EXPECT_EQ(format_percent(rows[i].soa.newly_introduced.fp_rate()), printed[i][1]) << rows[i].name;
        EXPECT_EQ(format_percent(rows[i].improved.resolved.fp_rate()), printed[i][2]) << rows[i].name;
        EXPECT_EQ(format_percent(rows[i].improved.newly_introduced.fp_rate()), printed[i][3]) << rows[i].name;
    }
}

TEST(CompareApproaches, PublishedTotals)
{
    auto c = compare_approaches(published::soa_total(), published::improved_total());
    EXPECT_EQ(c.soa.fp_total(), 1178);
    EXPECT_EQ(c.soa.decisions_total(), 3452);
    EXPECT_EQ(c.improved.fp_total(), 253);
    EXPECT_EQ(c.improved.decisions_total(), 2524);
    EXPECT_EQ(format_percent(c.soa.combined_fp_rate()), "34.1%");
    EXPECT_EQ(format_percent(c.improved.combined_fp_rate()), "10.0%");
    EXPECT_EQ(format_percent(c.soa.precision()), "65.9%");
    EXPECT_EQ(format_percent(c.improved.precision()), "90.0%");
    EXPECT_EQ(c.fp_delta(), 253 - 1178);
    EXPECT_LT(c.combined_rate_delta(), 0.0);
}

TEST(CompareApproaches, IdenticalReportsHaveZeroDeltas)
{
    auto c = compare_approaches(published::soa_total(), published::soa_total());
    EXPECT_EQ(c.fp_delta(), 0);
    EXPECT_DOUBLE_EQ(c.resolved_rate_delta(), 0.0);
    EXPECT_DOUBLE_EQ(c.new_rate_delta(), 0.0);
    EXPECT_DOUBLE_EQ(c.precision_delta(), 0.0);
}

TEST(Labels, RoundTripAndErrors)
{
    std::vector<GroundTruthLabel> labels{{fake_id(1), EvolutionStatus::Resolved},
                                         {fake_id(2), EvolutionStatus::NewlyIntroduced},
                                         {fake_id(3), EvolutionStatus::Persistent}};
    auto text = serialize_labels(labels);
    EXPECT_EQ(parse_labels(text), labels);
    EXPECT_EQ(parse_labels("warning_id,true_status\r\n" + fake_id(1) + " , resolved\r\n\r\n").size(), 1u);
    EXPECT_THROW(parse_labels(""), MalformedReport);
    EXPECT_THROW(parse_labels("id,status\n"), MalformedReport);
    EXPECT_THROW(parse_labels("warning_id,true_status\nabc\n"), MalformedReport);
    EXPECT_THROW(parse_labels("warning_id,true_status\nabc,gone\n"), MalformedReport);
}
