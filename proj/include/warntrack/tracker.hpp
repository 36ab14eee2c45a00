// tracker.hpp - SOA cascade and improved (refactoring-aware + global assignment) pipelines.
#pragma once

#include <warntrack/assignment.hpp>
#include <warntrack/core_model.hpp>
#include <warntrack/diff_engine.hpp>
#include <warntrack/ingest.hpp>
#include <warntrack/refactor_adapter.hpp>
#include <warntrack/strategies.hpp>

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace warntrack {

struct TrackOptions {
    StrategyConfig config;
    std::string pre_commit_id;
    std::string post_commit_id;
};

/// Partitions both sets around `matches`. Output order is canonical: matches
/// by pre warning, resolved by pre warning, newly_introduced by post warning.
inline TrackingReport classify(std::span<const Match> matches, const WarningSet& pre,
                               const WarningSet& post)
{
    std::map<std::string, std::size_t> pre_pos, post_pos;
    for (std::size_t i = 0; i < pre.size(); ++i) pre_pos.emplace(warning_id(pre[i]), i);
    for (std::size_t j = 0; j < post.size(); ++j) post_pos.emplace(warning_id(post[j]), j);

    std::vector<const Match*> by_pre(pre.size(), nullptr);
    std::vector<char> post_taken(post.size(), 0);
    for (const auto& m : matches) {
        auto i = pre_pos.find(m.pre_id);
        if (i == pre_pos.end()) throw UnknownId("match references unknown pre id " + m.pre_id);
        auto j = post_pos.find(m.post_id);
        if (j == post_pos.end()) throw UnknownId("match references unknown post id " + m.post_id);
        if (by_pre[i->second]) throw DuplicateMatch("pre warning " + m.pre_id + " matched twice");
        if (post_taken[j->second]) throw DuplicateMatch("post warning " + m.post_id + " matched twice");
        by_pre[i->second] = &m;
        post_taken[j->second] = 1;
    }

    TrackingReport r;
    for (std::size_t i = 0; i < pre.size(); ++i) {
        if (by_pre[i])
            r.matches.push_back(*by_pre[i]);
        else
            r.resolved.push_back(warning_id(pre[i]));
    }
    for (std::size_t j = 0; j < post.size(); ++j)
        if (!post_taken[j]) r.newly_introduced.push_back(warning_id(post[j]));
    return r;
}

/// Status of every warning id in a report.
inline std::map<std::string, EvolutionStatus> statuses(const TrackingReport& r)
{
    std::map<std::string, EvolutionStatus> out;
    for (const auto& m : r.matches) {
        out[m.pre_id] = EvolutionStatus::Persistent;
        out[m.post_id] = EvolutionStatus::Persistent;
    }
    for (const auto& id : r.resolved) out[id] = EvolutionStatus::Resolved;
    for (const auto& id : r.newly_introduced) out[id] = EvolutionStatus::NewlyIntroduced;
    return out;
}

namespace detail {

inline void check_id_collisions(const WarningSet& pre, const WarningSet& post)
{
    std::map<std::string, std::string> seen;
    for (const auto* set : {&pre, &post})
        for (const auto& w : *set) {
            auto [it, fresh] = seen.emplace(warning_id(w), canonical_string(w));
            if (!fresh && it->second != canonical_string(w))
                throw IdCollision("warning id " + it->first + " collides: '" + it->second +
                                  "' vs '" + canonical_string(w) + "'");
        }
}

/// Lazily computed line mappings keyed by (pre path, post path).
class MappingCache {
public:
    MappingCache(const SourceTree& pre, const SourceTree& post) : pre_(pre), post_(post) {}

    const LineMapping* get(const std::string& pre_path, const std::string& post_path)
    {
        auto key = std::make_pair(pre_path, post_path);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            std::unique_ptr<LineMapping> m;
            const auto* a = pre_.find(pre_path);
            const auto* b = post_.find(post_path);
            if (a && b) m = std::make_unique<LineMapping>(build_line_mapping(compute_diff(*a, *b)));
            it = cache_.emplace(std::move(key), std::move(m)).first;
        }
        return it->second.get();
    }

private:
    const SourceTree& pre_;
    const SourceTree& post_;
    std::map<std::pair<std::string, std::string>, std::unique_ptr<LineMapping>> cache_;
};

}  // namespace detail

/// Greedy cascade: exact matching, then per remaining pre warning (canonical
/// order) the best location candidate, else snippet, else hash. A claimed
/// post warning leaves the pool immediately.
inline TrackingReport track_soa(const WarningSet& pre, const WarningSet& post,
                                const SourceTree& pre_src, const SourceTree& post_src,
                                const TrackOptions& opts = {})
{
    detail::check_id_collisions(pre, post);
    const auto& cfg = opts.config;
    std::vector<Match> matches;

    auto exact = exact_match(pre.warnings(), post.warnings());
    for (const auto& [a, b] : exact.pairs) matches.push_back({warning_id(a), warning_id(b), Strategy::Exact, 1.0});

    detail::MappingCache mappings(pre_src, post_src);
    std::vector<char> claimed(exact.post_rest.size(), 0);
    std::map<std::string, std::size_t> post_index;
    for (std::size_t j = 0; j < exact.post_rest.size(); ++j)
        post_index.emplace(warning_id(exact.post_rest[j]), j);

    for (const auto& w : exact.pre_rest) {
        std::vector<WarningInstance> pool;
        for (std::size_t j = 0; j < exact.post_rest.size(); ++j)
            if (!claimed[j]) pool.push_back(exact.post_rest[j]);
        if (pool.empty()) break;

        std::vector<CandidatePair> cands;
        if (const auto* m = mappings.get(w.file_path, w.file_path))
            cands = location_candidates(w, pool, *m, cfg);
        if (cands.empty()) cands = snippet_candidates(w, pool, pre_src, post_src, cfg);
        if (cands.empty()) cands = hash_candidates(w, pool, pre_src, post_src, cfg);
        if (cands.empty()) continue;

        const auto& best = cands.front();
        claimed[post_index.at(best.post_id)] = 1;
        matches.push_back({best.pre_id, best.post_id, best.strategy, best.score});
    }

    auto report = classify(matches, pre, post);
    report.approach = Approach::Soa;
    report.pre_commit_id = opts.pre_commit_id;
    report.post_commit_id = opts.post_commit_id;
    return report;
}

/// Improved pipeline: exact matching, refactoring rewrite of the remainder,
/// a second exact pass on rewritten metadata, then location + snippet
/// candidates resolved by a global maximum-weight assignment. No hash step.
inline TrackingReport track_improved(const WarningSet& pre, const WarningSet& post,
                                     const SourceTree& pre_src, const SourceTree& post_src,
                                     std::span<const RefactoringRecord> records,
                                     const TrackOptions& opts = {})
{
    detail::check_id_collisions(pre, post);
    const auto& cfg = opts.config;
    std::vector<Match> matches;
    std::vector<std::string> notes;

    // (1) exact matching on raw metadata.
    auto exact = exact_match(pre.warnings(), post.warnings());
    for (const auto& [a, b] : exact.pairs) matches.push_back({warning_id(a), warning_id(b), Strategy::Exact, 1.0});

    // (2) rewrite the pre remainder into post coordinates.
    auto rewritten = rewrite_set(exact.pre_rest, records);
    for (const auto& c : rewritten.conflicts)
        notes.push_back("conflicting refactoring records for " + c.original_id + ": " + c.field +
                        " kept '" + c.kept_value + "' from record #" + std::to_string(c.kept_record) +
                        ", ignored '" + c.dropped_value + "' from record #" +
                        std::to_string(c.dropped_record));

    // (3) exact matching again on rewritten metadata.
    auto second = exact_match(rewritten.warnings, exact.post_rest);
    std::vector<char> pre_done(exact.pre_rest.size(), 0), post_done(exact.post_rest.size(), 0);
    for (auto [i, j] : second.index_pairs) {
        pre_done[i] = post_done[j] = 1;
        matches.push_back({warning_id(exact.pre_rest[i]), warning_id(exact.post_rest[j]),
                           Strategy::RefactorExact, 1.0});
    }

    std::vector<WarningInstance> post_rest;
    std::vector<std::string> post_ids;
    for (std::size_t j = 0; j < exact.post_rest.size(); ++j)
        if (!post_done[j]) {
            post_rest.push_back(exact.post_rest[j]);
            post_ids.push_back(warning_id(exact.post_rest[j]));
        }

    // (4) location + snippet candidates. The view carries rewritten names and
    // path but the original line range, which indexes the pre source file.
    detail::MappingCache mappings(pre_src, post_src);
    std::vector<CandidatePair> cands;
    std::vector<std::string> pre_ids;
    for (std::size_t i = 0; i < exact.pre_rest.size(); ++i) {
        if (pre_done[i]) continue;
        const auto& original = exact.pre_rest[i];
        auto view = rewritten.warnings[i];
        view.start_line = original.start_line;
        view.end_line = original.end_line;
        auto id = warning_id(original);
        pre_ids.push_back(id);

        std::vector<CandidatePair> found;
        if (const auto* m = mappings.get(original.file_path, view.file_path))
            found = location_candidates(view, post_rest, *m, cfg);
        auto snip = snippet_candidates(view, post_rest, pre_src, post_src, cfg, original.file_path);
        found.insert(found.end(), snip.begin(), snip.end());
        for (auto& c : found) {
            c.pre_id = id;
            cands.push_back(std::move(c));
        }
    }

    // (5) global assignment.
    auto matrix = build_matrix(cands, std::move(pre_ids), std::move(post_ids));
    for (const auto& a : solve_assignment(matrix, cfg.min_score))
        matches.push_back({a.pre_id, a.post_id, Strategy::Hungarian, a.score});

    // (6) classification against the original sets.
    auto report = classify(matches, pre, post);
    report.approach = Approach::Improved;
    report.pre_commit_id = opts.pre_commit_id;
    report.post_commit_id = opts.post_commit_id;
    report.rewrite_log = std::move(rewritten.log);
    report.notes = std::move(notes);
    return report;
}

/// Checks the partition invariants; returns an empty string when they hold.
inline std::string check_conservation(const TrackingReport& r, const WarningSet& pre,
                                      const WarningSet& post)
{
    if (pre.size() != r.matches.size() + r.resolved.size())
        return "|pre| " + std::to_string(pre.size()) + " != matches " +
               std::to_string(r.matches.size()) + " + resolved " + std::to_string(r.resolved.size());
    if (post.size() != r.matches.size() + r.newly_introduced.size())
        return "|post| " + std::to_string(post.size()) + " != matches " +
               std::to_string(r.matches.size()) + " + newly_introduced " +
               std::to_string(r.newly_introduced.size());
    std::set<std::string> pre_ids, post_ids;
    for (const auto& m : r.matches)
        if (!pre_ids.insert(m.pre_id).second || !post_ids.insert(m.post_id).second)
            return "match ids repeat";
    for (const auto& id : r.resolved)
        if (!pre_ids.insert(id).second) return "resolved id also matched: " + id;
    for (const auto& id : r.newly_introduced)
        if (!post_ids.insert(id).second) return "newly_introduced id also matched: " + id;
    return {};
}

}  // namespace warntrack
