// report_io.hpp - JSON serialization of tracking reports and strategy config.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/ingest.hpp>
#include <warntrack/strategies.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace warntrack {

namespace detail {

inline nlohmann::json warning_json(const WarningInstance& w)
{
    return {{"id", warning_id(w)},       {"warning_type", w.warning_type},
            {"project", w.project},      {"class", w.class_name},
            {"method", w.method_name},   {"field", w.field_name},
            {"file_path", w.file_path},  {"start_line", w.start_line},
            {"end_line", w.end_line},    {"ordinal", w.ordinal}};
}

}  // namespace detail

/// Canonical report document: sorted keys, two-space indent, trailing
/// newline. When the warning sets are supplied their metadata is embedded
/// under "warnings" for readers; parse_report ignores it.
inline std::string serialize_report(const TrackingReport& r, const WarningSet* pre = nullptr,
                                    const WarningSet* post = nullptr)
{
    nlohmann::json doc;
    doc["approach"] = std::string(to_string(r.approach));
    doc["pre_commit"] = r.pre_commit_id;
    doc["post_commit"] = r.post_commit_id;
    auto matches = nlohmann::json::array();
    for (const auto& m : r.matches)
        matches.push_back({{"pre_id", m.pre_id},
                           {"post_id", m.post_id},
                           {"strategy", std::string(to_string(m.strategy))},
                           {"score", m.score}});
    doc["matches"] = std::move(matches);
    doc["resolved"] = r.resolved;
    doc["newly_introduced"] = r.newly_introduced;
    auto log = nlohmann::json::array();
    for (const auto& e : r.rewrite_log)
        log.push_back({{"original_id", e.original_id}, {"changed_fields", e.changed_fields}});
    doc["rewrite_log"] = std::move(log);
    doc["notes"] = r.notes;
    if (pre && post) {
        auto side = [](const WarningSet& s) {
            auto a = nlohmann::json::array();
            for (const auto& w : s) a.push_back(detail::warning_json(w));
            return a;
        };
        doc["warnings"] = {{"pre", side(*pre)}, {"post", side(*post)}};
    }
    return doc.dump(2) + "\n";
}

inline TrackingReport parse_report(std::string_view text)
{
    auto doc = detail::parse_json(text, "report");
    try {
        TrackingReport r;
        auto approach = doc.at("approach").get<std::string>();
        if (approach == "SOA") r.approach = Approach::Soa;
        else if (approach == "IMPROVED") r.approach = Approach::Improved;
        else throw SchemaViolation("report: unknown approach '" + approach + "'");
        r.pre_commit_id = doc.value("pre_commit", "");
        r.post_commit_id = doc.value("post_commit", "");
        for (const auto& m : doc.at("matches"))
            r.matches.push_back({m.at("pre_id").get<std::string>(), m.at("post_id").get<std::string>(),
                                 parse_strategy(m.at("strategy").get<std::string>()),
                                 m.at("score").get<double>()});
        r.resolved = doc.at("resolved").get<std::vector<std::string>>();
        r.newly_introduced = doc.at("newly_introduced").get<std::vector<std::string>>();
        for (const auto& e : doc.value("rewrite_log", nlohmann::json::array()))
            r.rewrite_log.push_back({e.at("original_id").get<std::string>(),
                                     e.at("changed_fields").get<std::vector<std::string>>()});
        r.notes = doc.value("notes", std::vector<std::string>{});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(std::string("report: ") + e.what());
    }
}

/// Optional config file: {"context_window", "shingle_size", "hash_threshold",
/// "min_score"}; absent keys keep their defaults.
inline StrategyConfig parse_config(std::string_view text)
{
    auto doc = detail::parse_json(text, "config");
    if (!doc.is_object()) throw SchemaViolation("config: top level must be an object");
    StrategyConfig cfg;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "context_window") cfg.context_window = value.get<int>();
            else if (key == "shingle_size") cfg.shingle_size = value.get<int>();
            else if (key == "hash_threshold") cfg.hash_threshold = value.get<double>();
            else if (key == "min_score") cfg.min_score = value.get<double>();
            else throw SchemaViolation("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(std::string("config: ") + e.what());
    }
    if (cfg.context_window < 0 || cfg.shingle_size < 1)
        throw SchemaViolation("config: context_window must be >= 0 and shingle_size >= 1");
    if (cfg.hash_threshold < 0.0 || cfg.hash_threshold > 1.0 || cfg.min_score < 0.0 || cfg.min_score > 1.0)
        throw SchemaViolation("config: thresholds must lie in [0,1]");
    return cfg;
}

}  // namespace warntrack
