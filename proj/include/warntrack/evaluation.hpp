// evaluation.hpp - false-positive rates and precision against ground truth.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/tracker.hpp>

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace warntrack {

struct GroundTruthLabel {
    std::string warning_id;
    EvolutionStatus true_status = EvolutionStatus::Persistent;

    friend bool operator==(const GroundTruthLabel&, const GroundTruthLabel&) = default;
};

struct CategoryMetrics {
    long fp_count = 0;
    long total_count = 0;

    double fp_rate() const
    {
        return total_count == 0 ? 0.0 : static_cast<double>(fp_count) / static_cast<double>(total_count);
    }

    friend bool operator==(const CategoryMetrics&, const CategoryMetrics&) = default;
};

struct MetricsReport {
    CategoryMetrics resolved;
    CategoryMetrics newly_introduced;

    long fp_total() const { return resolved.fp_count + newly_introduced.fp_count; }
    long decisions_total() const { return resolved.total_count + newly_introduced.total_count; }

    /// FP rate over all resolved + newly-introduced decisions.
    double combined_fp_rate() const
    {
        return decisions_total() == 0 ? 0.0
                                      : static_cast<double>(fp_total()) / static_cast<double>(decisions_total());
    }

    double precision() const { return 1.0 - combined_fp_rate(); }

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Sums per-row counts (e.g. one row per project/detector).
inline MetricsReport aggregate(std::span<const MetricsReport> rows)
{
    MetricsReport total;
    for (const auto& r : rows) {
        total.resolved.fp_count += r.resolved.fp_count;
        total.resolved.total_count += r.resolved.total_count;
        total.newly_introduced.fp_count += r.newly_introduced.fp_count;
        total.newly_introduced.total_count += r.newly_introduced.total_count;
    }
    return total;
}

/// A RESOLVED (NEWLY_INTRODUCED) decision is a false positive when the true
/// status of the warning is anything else. Unlabeled warnings are assumed
/// persistent.
inline MetricsReport compute_metrics(const TrackingReport& report,
                                     std::span<const GroundTruthLabel> labels)
{
    auto known = statuses(report);
    std::map<std::string, EvolutionStatus> truth;
    for (const auto& l : labels) {
        if (!known.count(l.warning_id)) throw UnknownWarningId(l.warning_id);
        if (!truth.emplace(l.warning_id, l.true_status).second)
            throw SchemaViolation("duplicate label for " + l.warning_id);
    }
    auto true_status = [&](const std::string& id) {
        auto it = truth.find(id);
        return it == truth.end() ? EvolutionStatus::Persistent : it->second;
    };

    MetricsReport m;
    for (const auto& id : report.resolved) {
        ++m.resolved.total_count;
        if (true_status(id) != EvolutionStatus::Resolved) ++m.resolved.fp_count;
    }
    for (const auto& id : report.newly_introduced) {
        ++m.newly_introduced.total_count;
        if (true_status(id) != EvolutionStatus::NewlyIntroduced) ++m.newly_introduced.fp_count;
    }
    return m;
}

struct ApproachComparison {
    MetricsReport soa;
    MetricsReport improved;

    double resolved_rate_delta() const { return improved.resolved.fp_rate() - soa.resolved.fp_rate(); }
    double new_rate_delta() const
    {
        return improved.newly_introduced.fp_rate() - soa.newly_introduced.fp_rate();
    }
    long fp_delta() const { return improved.fp_total() - soa.fp_total(); }
    double combined_rate_delta() const { return improved.combined_fp_rate() - soa.combined_fp_rate(); }
    double precision_delta() const { return improved.precision() - soa.precision(); }
};

inline ApproachComparison compare_approaches(const MetricsReport& soa, const MetricsReport& improved)
{
    return {soa, improved};
}

// ---------------------------------------------------------------------------
// Labels file: "warning_id,true_status" header, one row per label.

inline std::vector<GroundTruthLabel> parse_labels(std::string_view text)
{
    std::vector<GroundTruthLabel> out;
    auto lines = split_lines(text);
    bool header = true;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        auto line = detail::trim(lines[n]);
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedReport("labels line " + std::to_string(n + 1) + ": expected two columns");
        auto id = detail::trim(std::string_view(line).substr(0, comma));
        auto status = detail::trim(std::string_view(line).substr(comma + 1));
        if (header) {
            header = false;
            if (id != "warning_id" || status != "true_status")
                throw MalformedReport("labels: header must be 'warning_id,true_status'");
            continue;
        }
        try {
            out.push_back({id, parse_status(status)});
        } catch (const SchemaViolation& e) {
            throw MalformedReport("labels line " + std::to_string(n + 1) + ": " + e.what());
        }
    }
    if (header) throw MalformedReport("labels: missing header");
    return out;
}

inline std::string serialize_labels(std::span<const GroundTruthLabel> labels)
{
    std::string out = "warning_id,true_status\n";
    for (const auto& l : labels) {
        out += l.warning_id;
        out += ',';
        out += to_string(l.true_status);
        out += '\n';
    }
    return out;
}

inline std::string format_rate(const CategoryMetrics& c)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << c.fp_rate() * 100.0 << "% (" << c.fp_count << "/" << c.total_count << ")";
    return os.str();
}

inline std::string format_percent(double v)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << v * 100.0 << "%";
    return os.str();
}

}  // namespace warntrack
